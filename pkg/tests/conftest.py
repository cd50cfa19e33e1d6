from __future__ import annotations

import random
from pathlib import Path

import pytest

from mextree import build_tree, extract_parallel, parse_document

FIXTURES = Path(__file__).parent / "fixtures"

# Operator pool for generated pragmatic documents; all names are covered by
# the shipped content-dictionary mapping.
GENERATOR_OPS = (
    "plus", "minus", "times", "divide", "power", "root", "sum",
    "sin", "cos", "tan", "log", "ln", "exp",
    "eq", "neq", "lt", "gt", "leq", "geq", "int", "diff",
)

LEAF_NAMES = "abcdefgxyz"


def fixture_bytes(name: str) -> bytes:
    return (FIXTURES / name).read_bytes()


def tree_from_fixture(name: str):
    return build_tree(extract_parallel(parse_document(fixture_bytes(name))))


def random_cmml_document(
    rng: random.Random, max_depth: int = 5, max_arity: int = 4
) -> str:
    """One pragmatic qualifier-free content document, as XML text."""

    def leaf() -> str:
        if rng.random() < 0.4:
            return f"<cn>{rng.randint(0, 99)}</cn>"
        return f"<ci>{rng.choice(LEAF_NAMES)}</ci>"

    def node(depth: int) -> str:
        if depth >= max_depth or rng.random() < 0.35:
            return leaf()
        head = rng.choice(GENERATOR_OPS)
        arity = rng.randint(1, max_arity)
        args = "".join(node(depth + 1) for _ in range(arity))
        return f"<apply><{head}/>{args}</apply>"

    return f"<math>{node(0)}</math>"


def random_tree(rng: random.Random, max_depth: int = 3, max_arity: int = 3):
    """A built expression tree from a random content document."""
    document = random_cmml_document(rng, max_depth=max_depth, max_arity=max_arity)
    return build_tree(extract_parallel(parse_document(document)))


def random_tree_pair(rng: random.Random, max_nodes: int = 15):
    """Two trees that share subexpressions drawn from a common pool.

    Shared snippets make identical-subtree matches likely; sizes are kept
    at or below ``max_nodes`` by regenerating oversized trees.
    """
    pool = [
        f"<ci>{rng.choice(LEAF_NAMES)}</ci>",
        f"<cn>{rng.randint(0, 9)}</cn>",
        f"<apply><{rng.choice(GENERATOR_OPS)}/><ci>{rng.choice(LEAF_NAMES)}</ci>"
        f"<cn>{rng.randint(0, 9)}</cn></apply>",
        f"<apply><{rng.choice(GENERATOR_OPS)}/><ci>{rng.choice(LEAF_NAMES)}</ci></apply>",
    ]

    def node(depth: int) -> str:
        if depth >= 3 or rng.random() < 0.45:
            return rng.choice(pool)
        head = rng.choice(GENERATOR_OPS)
        arity = rng.randint(1, 3)
        args = "".join(node(depth + 1) for _ in range(arity))
        return f"<apply><{head}/>{args}</apply>"

    def build_one():
        while True:
            tree = build_tree(
                extract_parallel(parse_document(f"<math>{node(0)}</math>"))
            )
            if len(tree.nodes()) <= max_nodes:
                return tree

    return build_one(), build_one()


@pytest.fixture
def listing_tree():
    return tree_from_fixture("f_of_a_plus_b.mml")


@pytest.fixture
def rng():
    return random.Random(20240817)
