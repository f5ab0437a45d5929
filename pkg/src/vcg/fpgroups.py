"""Words, finite presentations, the standard (Cayley) presentation, free
products of finite groups and word evaluation.

Presentation grammar::

    presentation := generators "|" relators
    generators   := ident ("," ident)*
    relators     := word ("," word)*          (may be empty)
    word         := factor (["*"] factor)*
    factor       := atom ["^" int]
    atom         := ident | "(" word ")" | "[" word ("," word)+ "]" | "1"

``[x, y]`` is ``x^-1 y^-1 x y`` and ``[x, y, z]`` is ``[[x, y], z]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .groups import FiniteGroup, GroupError


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def gen(cls, symbol: str, exp: int = 1) -> "Word":
        return cls(((symbol, exp),))

    @classmethod
    def of(cls, *parts: str | tuple[str, int]) -> "Word":
        return cls(tuple((p, 1) if isinstance(p, str) else p for p in parts))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        out: tuple = ()
        for _ in range(k):
            out += self.letters
        return Word(out)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def expanded(self) -> list[tuple[str, int]]:
        """Letter-by-letter form: ``(symbol, +1 | -1)`` pairs."""
        out = []
        for s, e in self.letters:
            out.extend([(s, 1 if e > 0 else -1)] * abs(e))
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Word":
        return Word(tuple((mapping.get(s, s), e) for s, e in self.letters))

    def substitute(self, mapping: Mapping[str, "Word"]) -> "Word":
        out: tuple = ()
        for s, e in self.letters:
            w = mapping[s] if s in mapping else Word.gen(s)
            out += (w**e).letters
        return Word(out)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)


def _free_reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    stack: list[list] = []
    for s, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == s:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([s, e])
    return tuple((s, e) for s, e in stack)


def commutator(*words: Word) -> Word:
    """Left-normed commutator ``[w1, ..., wk]``."""
    if len(words) < 2:
        raise PresentationError("a commutator needs at least two entries")
    acc = words[0]
    for w in words[1:]:
        acc = acc.inverse() * w.inverse() * acc * w
    return acc


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator symbol")
        known = set(self.generators)
        for r in self.relators:
            extra = r.symbols() - known
            if extra:
                raise PresentationError(f"unknown generator(s) {sorted(extra)} in relator {r}")

    def __str__(self) -> str:
        return ", ".join(self.generators) + " | " + ", ".join(str(r) for r in self.relators)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))


# -- parser -------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<op>[\^()\[\],|*]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, generators: set[str] | None):
        self.toks = tokens
        self.i = 0
        self.generators = generators

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise PresentationError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def word(self) -> Word:
        parts = [self.factor()]
        while True:
            kind, val = self.peek()
            if val == "*":
                self.take("*")
                parts.append(self.factor())
            elif kind == "ident" or val in ("(", "[") or (kind == "int" and val == "1"):
                parts.append(self.factor())
            else:
                break
        out = Word()
        for p in parts:
            out = out * p
        return out

    def factor(self) -> Word:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            kind, val = self.take()
            if kind != "int":
                raise PresentationError(f"malformed power: exponent {val!r}")
            base = base ** int(val)
        return base

    def atom(self) -> Word:
        kind, val = self.peek()
        if kind == "ident":
            self.take()
            if self.generators is not None and val not in self.generators:
                raise PresentationError(f"unknown generator {val!r}")
            return Word.gen(val)
        if kind == "int" and val == "1":
            self.take()
            return Word()
        if val == "(":
            self.take("(")
            w = self.word()
            self.take(")")
            return w
        if val == "[":
            self.take("[")
            items = [self.word()]
            while self.peek()[1] == ",":
                self.take(",")
                items.append(self.word())
            self.take("]")
            if len(items) < 2:
                raise PresentationError("malformed commutator: needs at least two entries")
            return commutator(*items)
        raise PresentationError(f"unexpected token {val!r}")


def parse_word(text: str, generators: Iterable[str] | None = None) -> Word:
    p = _Parser(_tokenize(text), set(generators) if generators is not None else None)
    w = p.word()
    if p.i != len(p.toks):
        raise PresentationError(f"trailing input after word: {p.peek()[1]!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    if "|" not in text:
        raise PresentationError("presentation needs a '|' separator")
    head, _, tail = text.partition("|")
    gens = [g.strip() for g in head.split(",") if g.strip()]
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", g):
            raise PresentationError(f"bad generator name {g!r}")
    toks = _tokenize(tail)
    p = _Parser(toks, set(gens))
    rels = []
    if toks:
        rels.append(p.word())
        while p.i < len(toks):
            p.take(",")
            rels.append(p.word())
    return Presentation(tuple(gens), tuple(rels))


# -- standard presentation ----------------------------------------------------------


@dataclass(frozen=True)
class StandardPresentation:
    """Free group on the elements of ``G`` modulo ``x̄ ȳ (xy)‾^-1``."""

    group: FiniteGroup
    presentation: Presentation
    symbol_of: tuple[str, ...]  # element index -> generator symbol

    def relator(self, x: int, y: int) -> Word:
        s = self.symbol_of
        return Word(((s[x], 1), (s[y], 1), (s[self.group.mul(x, y)], -1)))

    def relator_index(self) -> dict[tuple[int, int], Word]:
        n = self.group.order
        return {(x, y): self.relator(x, y) for x in range(n) for y in range(n)}

    def element_of(self, symbol: str) -> int:
        return self.symbol_of.index(symbol)

    def assignment(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbol_of)}


def standard_presentation(g: FiniteGroup) -> StandardPresentation:
    symbols = tuple(f"g{i}" for i in range(g.order))
    sp = StandardPresentation(g, Presentation(symbols, ()), symbols)
    rels = tuple(sp.relator(x, y) for x in range(g.order) for y in range(g.order))
    return StandardPresentation(g, Presentation(symbols, rels), symbols)


# -- free products ---------------------------------------------------------------------


@dataclass(frozen=True)
class FreeProductPresentation:
    presentation: Presentation
    embeddings: tuple[dict[str, str], ...]  # per factor: old symbol -> new symbol


def free_product_presentation(factors: Sequence[Presentation]) -> FreeProductPresentation:
    used: set[str] = set()
    gens: list[str] = []
    rels: list[Word] = []
    embeddings = []
    for k, pres in enumerate(factors):
        mapping = {}
        for s in pres.generators:
            new = s
            if new in used:
                new = f"{s}_{k}"
                while new in used:
                    new += "_"
            used.add(new)
            mapping[s] = new
            gens.append(new)
        rels.extend(r.rename(mapping) for r in pres.relators)
        embeddings.append(mapping)
    return FreeProductPresentation(Presentation(tuple(gens), tuple(rels)), tuple(embeddings))


FreeProductElement = tuple  # tuple[tuple[int, int], ...]: (factor index, element index)


def fp_normalize(factors: Sequence[FiniteGroup], syllables: Iterable[tuple[int, int]]) -> FreeProductElement:
    out: list[tuple[int, int]] = []
    for f, x in syllables:
        if not 0 <= f < len(factors):
            raise GroupError(f"factor index {f} out of range")
        g = factors[f]
        if out and out[-1][0] == f:
            y = g.mul(out[-1][1], x)
            out.pop()
            if y != g.identity:
                out.append((f, y))
        elif x != g.identity:
            out.append((f, x))
    return tuple(out)


def fp_multiply(factors: Sequence[FiniteGroup], u: FreeProductElement, v: FreeProductElement) -> FreeProductElement:
    """Reduced normal form of ``u v`` in the free product of ``factors``."""
    return fp_normalize(factors, list(u) + list(v))


def fp_inverse(factors: Sequence[FiniteGroup], u: FreeProductElement) -> FreeProductElement:
    return tuple((f, factors[f].inv(x)) for f, x in reversed(u))


def evaluate_word(w: Word, assignment: Mapping[str, int], g: FiniteGroup) -> int:
    acc = g.identity
    rows = g.rows
    for s, e in w.letters:
        if s not in assignment:
            raise GroupError(f"symbol {s!r} is not assigned")
        x = assignment[s]
        acc = rows[acc][g.power(x, e)]
    return acc
