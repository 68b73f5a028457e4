"""Symbol tables, trees with Gorn addressing, and sorted regular tree grammars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterator, Mapping, Sequence

#: Characters excluded from symbol names because the text formats use them.
RESERVED_CHARS = frozenset("#,[]|.<>")


class SymbolError(ValueError):
    """A symbol table or symbol name violates its constraints."""


class InvalidRtg(ValueError):
    """A regular tree grammar is not well formed."""


def check_symbol_name(name: str) -> None:
    if not name:
        raise SymbolError("symbol names must be non-empty")
    if any(ch.isspace() or ch in RESERVED_CHARS for ch in name):
        raise SymbolError(
            f"symbol name {name!r} contains whitespace or a reserved character"
        )


class _SymbolTable:
    """Finite non-empty map from symbol names to integer degrees."""

    _MIN_DEGREE = 0
    _DEGREE_WORD = "degree"

    def __init__(self, degrees: Mapping[str, int]):
        if not degrees:
            raise SymbolError("alphabets must contain at least one symbol")
        for name, deg in degrees.items():
            check_symbol_name(name)
            if not isinstance(deg, int) or deg < self._MIN_DEGREE:
                raise SymbolError(
                    f"{self._DEGREE_WORD} of {name!r} must be an integer"
                    f" >= {self._MIN_DEGREE}, got {deg!r}"
                )
        self._degrees = dict(degrees)

    def degree(self, name: str) -> int:
        try:
            return self._degrees[name]
        except KeyError:
            raise SymbolError(f"unknown symbol {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._degrees

    def __iter__(self) -> Iterator[str]:
        return iter(self._degrees)

    def __len__(self) -> int:
        return len(self._degrees)

    def items(self):
        return self._degrees.items()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _SymbolTable):
            return NotImplemented
        return type(self) is type(other) and self._degrees == other._degrees

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{d}" for n, d in self._degrees.items())
        return f"{type(self).__name__}({{{inner}}})"


class RankedAlphabet(_SymbolTable):
    """Terminal alphabet: each symbol carries a rank (number of children)."""

    _MIN_DEGREE = 0
    _DEGREE_WORD = "rank"

    def rank(self, name: str) -> int:
        return self.degree(name)

    def of_rank(self, k: int) -> tuple[str, ...]:
        return tuple(n for n, d in self._degrees.items() if d == k)


class SortedAlphabet(_SymbolTable):
    """State or nonterminal alphabet: each symbol carries a positive sort."""

    _MIN_DEGREE = 1
    _DEGREE_WORD = "sort"

    def sort(self, name: str) -> int:
        return self.degree(name)


@dataclass(frozen=True, order=True)
class Position:
    """Gorn address: a sequence of 1-based child indices, () for the root."""

    path: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(not isinstance(i, int) or i < 1 for i in self.path):
            raise ValueError(f"position components must be >= 1: {self.path!r}")

    def child(self, i: int) -> Position:
        return Position(self.path + (i,))

    def __str__(self) -> str:
        # "e" stands for the root in external output.
        return ".".join(str(i) for i in self.path) if self.path else "e"

    @staticmethod
    def parse(text: str) -> Position:
        if text == "e" or text == "":
            return Position()
        try:
            return Position(tuple(int(part) for part in text.split(".")))
        except ValueError:
            raise ValueError(f"malformed position {text!r}") from None


ROOT = Position()


@dataclass(frozen=True)
class Tree:
    """Immutable ordered tree with arbitrary hashable labels."""

    label: Any
    children: tuple[Tree, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)


def tree(label: Any, *children: Tree) -> Tree:
    """Terse tree constructor used throughout tests and fixtures."""
    return Tree(label, children)


def positions(t: Tree) -> set[Position]:
    """All Gorn addresses of t; the root address is always included."""
    out: set[Position] = set()
    stack = [(t, ROOT)]
    while stack:
        node, pos = stack.pop()
        out.add(pos)
        for i, child in enumerate(node.children, start=1):
            stack.append((child, pos.child(i)))
    return out


def leaves(t: Tree) -> set[Position]:
    """Addresses of the nodes with no children."""
    return {w for w in positions(t) if not subtree(t, w).children}


def subtree(t: Tree, w: Position) -> Tree:
    node = t
    for i in w.path:
        if i > len(node.children):
            raise ValueError(f"position {w} not in tree")
        node = node.children[i - 1]
    return node


def label_at(t: Tree, w: Position) -> Any:
    return subtree(t, w).label


Signature = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Rule:
    """Normal-form grammar rule lhs -> gamma(rhs...)."""

    lhs: str
    gamma: Hashable
    rhs: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.rhs:
            return f"{self.lhs} -> {self.gamma}"
        return f"{self.lhs} -> {self.gamma}({', '.join(self.rhs)})"


class Rtg:
    """Sorted regular tree grammar in normal form.

    Terminals are arbitrary hashable signature symbols mapped to their
    signature sort ((s1..sk), s).  Every rule must match its gamma's
    signature componentwise.
    """

    def __init__(
        self,
        nonterminals: SortedAlphabet,
        terminals: Mapping[Hashable, Signature],
        initial: str,
        rules: Sequence[Rule],
    ):
        if initial not in nonterminals:
            raise InvalidRtg(f"initial nonterminal {initial!r} is not declared")
        for gamma in terminals:
            if gamma in nonterminals:
                raise InvalidRtg(f"{gamma!r} is both a nonterminal and a terminal")
        for r in rules:
            if r.lhs not in nonterminals:
                raise InvalidRtg(f"rule {r} has undeclared lhs")
            if r.gamma not in terminals:
                raise InvalidRtg(f"rule {r} uses undeclared terminal {r.gamma!r}")
            in_sorts, out_sort = terminals[r.gamma]
            if nonterminals.sort(r.lhs) != out_sort:
                raise InvalidRtg(f"rule {r}: lhs sort != output sort {out_sort}")
            if len(r.rhs) != len(in_sorts):
                raise InvalidRtg(f"rule {r}: arity mismatch with {in_sorts}")
            for nt, s in zip(r.rhs, in_sorts):
                if nt not in nonterminals:
                    raise InvalidRtg(f"rule {r} has undeclared rhs nonterminal {nt!r}")
                if nonterminals.sort(nt) != s:
                    raise InvalidRtg(f"rule {r}: sort of {nt!r} is not {s}")
        self.nonterminals = nonterminals
        self.terminals = dict(terminals)
        self.initial = initial
        self.rules = tuple(rules)
        self._by_lhs: dict[str, list[Rule]] = {}
        for r in self.rules:
            self._by_lhs.setdefault(r.lhs, []).append(r)

    def rules_for(self, lhs: str) -> tuple[Rule, ...]:
        return tuple(self._by_lhs.get(lhs, ()))


# An abstract syntax tree is a Tree whose labels are Rule values.
Ast = Tree


def project_to_gamma(d: Ast) -> Tree:
    """Replace each rule label by its signature symbol, keeping the shape."""
    return Tree(d.label.gamma, tuple(project_to_gamma(c) for c in d.children))


def validate_ast(g: Rtg, d: Ast) -> str | None:
    """Return None if d is a well-formed AST of g, else the first violation.

    Positions are visited in preorder so the reported violation is the
    lexicographically first one.
    """
    rule_set = set(g.rules)

    def visit(node: Tree, pos: Position) -> str | None:
        r = node.label
        if not isinstance(r, Rule) or r not in rule_set:
            return f"at {pos}: label {r!r} is not a rule of the grammar"
        if len(node.children) != len(r.rhs):
            return f"at {pos}: rule {r} expects {len(r.rhs)} children"
        for i, (child, nt) in enumerate(zip(node.children, r.rhs), start=1):
            cr = child.label
            if not isinstance(cr, Rule) or cr.lhs != nt:
                return f"at {pos.child(i)}: expected a rule with lhs {nt!r}"
            problem = visit(child, pos.child(i))
            if problem is not None:
                return problem
        return None

    return visit(d, ROOT)
