"""Symbolic Boolean expressions over nets.

Expressions are immutable trees built from variables, constants, NOT and the
binary connectives AND/OR/XOR. They carry the per-gate function in the
text-attributed graph and back the truth-table oracles used in tests and in
the feature extractor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from netreason.errors import SupportTooLarge

MAX_TT_SUPPORT = 16


class BoolExpr:
    """Base class; use the Const/Var/Not/And/Or/Xor constructors."""

    def eval(self, env: dict[str, int]) -> int:
        raise NotImplementedError

    def support(self) -> tuple[str, ...]:
        """Variable names in sorted order."""
        acc: set[str] = set()
        self._collect(acc)
        return tuple(sorted(acc))

    def support_in_order(self) -> tuple[str, ...]:
        """Variable names in first-occurrence (DFS) order.

        Used for renaming-invariant signatures: a bijective renaming of the
        inputs leaves the positional truth table unchanged.
        """
        seen: list[str] = []
        self._collect_ordered(seen)
        return tuple(seen)

    def _collect(self, acc: set[str]) -> None:
        raise NotImplementedError

    def _collect_ordered(self, seen: list[str]) -> None:
        raise NotImplementedError

    def depth(self) -> int:
        raise NotImplementedError

    def op_counts(self) -> dict[str, int]:
        """Counts of NOT/AND/OR/XOR operators in the tree."""
        counts = {"NOT": 0, "AND": 0, "OR": 0, "XOR": 0}
        self._count_ops(counts)
        return counts

    def _count_ops(self, counts: dict[str, int]) -> None:
        raise NotImplementedError

    def substitute(self, mapping: dict[str, "BoolExpr"]) -> "BoolExpr":
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True, repr=False)
class Const(BoolExpr):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {self.value}")

    def eval(self, env):
        return self.value

    def _collect(self, acc):
        pass

    def _collect_ordered(self, seen):
        pass

    def depth(self):
        return 0

    def _count_ops(self, counts):
        pass

    def substitute(self, mapping):
        return self

    def to_text(self):
        return str(self.value)


@dataclass(frozen=True, repr=False)
class Var(BoolExpr):
    name: str

    def eval(self, env):
        return env[self.name] & 1

    def _collect(self, acc):
        acc.add(self.name)

    def _collect_ordered(self, seen):
        if self.name not in seen:
            seen.append(self.name)

    def depth(self):
        return 0

    def _count_ops(self, counts):
        pass

    def substitute(self, mapping):
        return mapping.get(self.name, self)

    def to_text(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Not(BoolExpr):
    arg: BoolExpr

    def eval(self, env):
        return 1 - self.arg.eval(env)

    def _collect(self, acc):
        self.arg._collect(acc)

    def _collect_ordered(self, seen):
        self.arg._collect_ordered(seen)

    def depth(self):
        return 1 + self.arg.depth()

    def _count_ops(self, counts):
        counts["NOT"] += 1
        self.arg._count_ops(counts)

    def substitute(self, mapping):
        return Not(self.arg.substitute(mapping))

    def to_text(self):
        return f"NOT({self.arg.to_text()})"


class _BinOp(BoolExpr):
    op = ""

    def __init__(self, left: BoolExpr, right: BoolExpr):
        self.left = left
        self.right = right

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((type(self).__name__, self.left, self.right))

    def _collect(self, acc):
        self.left._collect(acc)
        self.right._collect(acc)

    def _collect_ordered(self, seen):
        self.left._collect_ordered(seen)
        self.right._collect_ordered(seen)

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def _count_ops(self, counts):
        counts[self.op] += 1
        self.left._count_ops(counts)
        self.right._count_ops(counts)

    def substitute(self, mapping):
        return type(self)(self.left.substitute(mapping), self.right.substitute(mapping))

    def to_text(self):
        return f"{self.op}({self.left.to_text()},{self.right.to_text()})"


class And(_BinOp):
    op = "AND"

    def eval(self, env):
        return self.left.eval(env) & self.right.eval(env)


class Or(_BinOp):
    op = "OR"

    def eval(self, env):
        return self.left.eval(env) | self.right.eval(env)


class Xor(_BinOp):
    op = "XOR"

    def eval(self, env):
        return self.left.eval(env) ^ self.right.eval(env)


def truth_table(expr: BoolExpr, order: tuple[str, ...] | None = None) -> str:
    """Bit string of length 2^|support|.

    Bit i is the expression value on the i-th input assignment, enumerating
    inputs in sorted order with the first input as the most significant index
    bit. `order` overrides the input ordering (it must cover the support).
    """
    names = order if order is not None else expr.support()
    k = len(names)
    if k > MAX_TT_SUPPORT:
        raise SupportTooLarge(f"support size {k} exceeds {MAX_TT_SUPPORT}")
    bits = []
    for i in range(1 << k):
        env = {name: (i >> (k - 1 - pos)) & 1 for pos, name in enumerate(names)}
        bits.append(str(expr.eval(env)))
    return "".join(bits)


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_\[\]\.\$]*|[01]|[(),])")


def parse_expr(text: str) -> BoolExpr:
    """Parse `NOT(...)/AND(a,b,...)/OR(...)/XOR(...)` templates.

    Multi-argument AND/OR/XOR fold left into binary nodes. Bare identifiers
    are variables, bare 0/1 are constants.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad expression near {text[pos:pos + 12]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    def parse(idx: int) -> tuple[BoolExpr, int]:
        if idx >= len(tokens):
            raise ValueError("unexpected end of expression")
        tok = tokens[idx]
        if tok in ("0", "1"):
            return Const(int(tok)), idx + 1
        if tok in ("NOT", "AND", "OR", "XOR") and idx + 1 < len(tokens) and tokens[idx + 1] == "(":
            args = []
            j = idx + 2
            while True:
                arg, j = parse(j)
                args.append(arg)
                if j >= len(tokens):
                    raise ValueError("unbalanced parentheses")
                if tokens[j] == ",":
                    j += 1
                    continue
                if tokens[j] == ")":
                    j += 1
                    break
                raise ValueError(f"expected ',' or ')' at token {tokens[j]!r}")
            if tok == "NOT":
                if len(args) != 1:
                    raise ValueError("NOT takes exactly one argument")
                return Not(args[0]), j
            if len(args) < 2:
                raise ValueError(f"{tok} needs at least two arguments")
            cls = {"AND": And, "OR": Or, "XOR": Xor}[tok]
            node = cls(args[0], args[1])
            for extra in args[2:]:
                node = cls(node, extra)
            return node, j
        if tok in ("(", ")", ","):
            raise ValueError(f"unexpected token {tok!r}")
        return Var(tok), idx + 1

    expr, end = parse(0)
    if end != len(tokens):
        raise ValueError(f"trailing tokens after expression: {tokens[end:]}")
    return expr
