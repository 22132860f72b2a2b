"""Multiplicative linear logic formulas over classical names and q-names.

Concrete ASCII syntax::

    var X          (header line: X is a classical name)
    qubit q1       (header line: q1 is a q-name)
    X+  X-         atoms
    (F * G)        tensor
    (F | G)        par
    (F -o G)       linear implication, sugar for (~F | G)
    ~F   F⊥        dual, pushed to the atoms immediately

Binary connectives must be parenthesized; undeclared names are classical.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

KINDS = ("var", "qubit")


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NameKindError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str
    kind: str = "var"
    positive: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"atom kind must be one of {KINDS}, got {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.name}{'+' if self.positive else '-'}"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


Formula = Union[Atom, Tensor, Par]


def pos(name: str, kind: str = "var") -> Atom:
    return Atom(name, kind, True)


def neg(name: str, kind: str = "var") -> Atom:
    return Atom(name, kind, False)


def dual(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.name, f.kind, not f.positive)
    if isinstance(f, Tensor):
        return Par(dual(f.left), dual(f.right))
    return Tensor(dual(f.left), dual(f.right))


def lolli(f: Formula, g: Formula) -> Formula:
    return Par(dual(f), g)


def tensor_all(fs: Iterable[Formula]) -> Formula:
    """Left-combed tensor ``((f1 * f2) * f3) ...``; a single formula is returned as is."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty tensor")
    out = fs[0]
    for f in fs[1:]:
        out = Tensor(out, f)
    return out


def par_all(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    if not fs:
        raise ValueError("empty par")
    out = fs[0]
    for f in fs[1:]:
        out = Par(out, f)
    return out


def atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    else:
        yield from atoms(f.left)
        yield from atoms(f.right)


def names(f: Formula) -> frozenset[str]:
    return frozenset(a.name for a in atoms(f))


def connectives(f: Formula) -> int:
    return 0 if isinstance(f, Atom) else 1 + connectives(f.left) + connectives(f.right)


def polarity(f: Formula) -> str | None:
    """``"positive"`` for atoms+tensors only, ``"negative"`` for atoms-pars only, else ``None``."""
    if isinstance(f, Atom):
        return "positive" if f.positive else "negative"
    left, right = polarity(f.left), polarity(f.right)
    want = "positive" if isinstance(f, Tensor) else "negative"
    return want if left == right == want else None


def is_register_output(f: Formula) -> bool:
    """Whether ``f`` is a tensor of positive q-atoms."""
    return polarity(f) == "positive" and all(a.kind == "qubit" for a in atoms(f))


def pretty(f: Formula) -> str:
    """Unicode rendering, e.g. ``(A⁻ ⅋ C⁺)``."""
    if isinstance(f, Atom):
        return f"{f.name}{'⁺' if f.positive else '⁻'}"
    op = "⊗" if isinstance(f, Tensor) else "⅋"
    return f"({pretty(f.left)} {op} {pretty(f.right)})"


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<atom>[A-Za-z_][A-Za-z0-9_]*[+-])|(?P<lolli>-o)|(?P<sym>[()*|~⊥]))")


def parse_declarations(lines: Iterable[str], kinds: dict[str, str] | None = None) -> dict[str, str]:
    """Read ``var X`` / ``qubit q`` lines into a name-to-kind map."""
    kinds = dict(kinds or {})
    for line in lines:
        parts = line.split()
        if len(parts) < 2 or parts[0] not in KINDS:
            raise ValueError(f"not a declaration: {line!r}")
        for name in parts[1:]:
            if kinds.get(name, parts[0]) != parts[0]:
                raise NameKindError(f"name {name!r} declared both as {kinds[name]} and {parts[0]}")
            kinds[name] = parts[0]
    return kinds


def _tokenize(text: str, start: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = start
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, start: int, kinds: Mapping[str, str]):
        self.tokens = _tokenize(text, start)
        self.i = 0
        self.end = len(text)
        self.kinds = kinds

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        return tok[2] if tok else self.end

    def take(self):
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.prefix()
        while self.peek() and self.peek()[1] == "⊥":
            self.take()
            f = dual(f)
        return f

    def prefix(self) -> Formula:
        tok = self.take()
        kind, value, off = tok
        if value == "~":
            return dual(self.formula())
        if kind == "atom":
            name = value[:-1]
            return Atom(name, self.kinds.get(name, "var"), value[-1] == "+")
        if value == "(":
            left = self.formula()
            tok = self.take()
            if tok[1] == ")":
                return left
            if tok[1] not in ("*", "|", "-o"):
                raise FormulaSyntaxError(f"expected a connective or ')', got {tok[1]!r}", tok[2])
            right = self.formula()
            close = self.take()
            if close[1] != ")":
                raise FormulaSyntaxError(f"expected ')', got {close[1]!r}", close[2])
            if tok[1] == "*":
                return Tensor(left, right)
            if tok[1] == "|":
                return Par(left, right)
            return lolli(left, right)
        raise FormulaSyntaxError(f"unexpected token {value!r}", off)


def parse_formula(text: str, kinds: Mapping[str, str] | None = None) -> Formula:
    """Parse ``text``, which may start with ``var``/``qubit`` declaration lines.

    >>> str(parse_formula("(A+ -o C+)"))
    '(A- | C+)'
    """
    lines = text.split("\n")
    decl, consumed = [], 0
    for line in lines:
        if line.split()[:1] and line.split()[0] in KINDS:
            decl.append(line)
            consumed += len(line) + 1
        elif not line.strip():
            consumed += len(line) + 1
        else:
            break
    table = parse_declarations(decl, dict(kinds or {}))
    p = _Parser(text, min(consumed, len(text)), table)
    f = p.formula()
    if p.peek() is not None:
        raise FormulaSyntaxError(f"unexpected token {p.peek()[1]!r} after formula", p.offset())
    return f
