import pytest

from dot_grammar import DotSyntaxError, check


@pytest.mark.parametrize(
    "text",
    [
        "graph {}",
        'strict digraph "x y" { a -> b -> c [color=red]; }',
        "graph G { node [shape=box]; a; b; a -- b; subgraph s { c -- d } }",
        "graph { rankdir = LR // comment\n a:n -- b:s:e; /* block */ }",
        "graph { a [label=<<b>bold</b>>] ; -1.5 -- .5 }",
        'graph { "a\\"q" -- { b c } }',
    ],
)
def test_accepts_valid(text):
    check(text)


@pytest.mark.parametrize(
    "text",
    [
        "graph { a -> b }",
        "digraph { a -- b }",
        "graph { a -- }",
        "graph { [x=1] }",
        "graph { a [x] }",
        "graph { a",
        "graph { a } extra",
        'graph { "open }',
        "node { }",
    ],
)
def test_rejects_invalid(text):
    with pytest.raises(DotSyntaxError):
        check(text)
