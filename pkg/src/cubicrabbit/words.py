"""Reduced words in the rank-2 free group on the Dehn twists x and z.

The pure mapping class group acting on the twisted cubic rabbit is free on
the two twists ``x`` and ``z``.  A group element is stored as a tuple of
*syllables* ``(generator, exponent)`` with nonzero exponents and distinct
generators on adjacent syllables, i.e. in run-length encoded reduced form.
Reduced form is unique, so ``==`` and ``hash`` decide equality in the group,
and a power such as ``x**10**6`` occupies a single syllable.

Composition order runs leftmost-applied-last, matching function composition:
in a product ``g = h * p`` the factor ``p`` sits at the right end of the
written word and acts first.  The lifting rules in :mod:`cubicrabbit.prefix`
and :mod:`cubicrabbit.wreath` consume that right end, which is why the
convention matters; it is pinned by fixture tests.

Text form (see :func:`parse` / :func:`format_word`)::

    word   := ws? (atom ws?)* ;
    atom   := letter power? ;
    letter := "x" | "z" | "X" | "Z" ;   uppercase = inverse
    power  := "^" ["-"] digit+ ;        never 0

Canonical output uses lowercase letters with explicit ``^k`` only for
``|k| >= 2`` or ``k = -1``, e.g. ``x^-1 z^-1 x^-1``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Literal

Generator = Literal["x", "z"]
Syllable = tuple[str, int]
Letter = tuple[str, int]  # exponent restricted to +1/-1

GENERATORS: tuple[str, str] = ("x", "z")

# Child order of the reduced-word tree; fixes the deterministic ball order.
LETTER_ORDER: tuple[Letter, ...] = (("x", 1), ("x", -1), ("z", 1), ("z", -1))


class WordSyntaxError(ValueError):
    """Malformed word text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (gen, merged)
        else:
            out.append((gen, exp))
    return tuple(out)


class Word:
    """A freely reduced word; immutable, hashable, safe to share."""

    __slots__ = ("_syls", "_nletters")

    def __init__(self, syllables: Iterable[Syllable] = ()):
        syls = _reduce(syllables)
        for gen, _ in syls:
            if gen not in GENERATORS:
                raise ValueError(f"unknown generator {gen!r}")
        self._syls = syls
        self._nletters = sum(abs(e) for _, e in syls)

    @classmethod
    def _from_reduced(cls, syls: tuple[Syllable, ...], nletters: int | None = None) -> "Word":
        # internal fast path: caller guarantees syls is already reduced
        w = object.__new__(cls)
        w._syls = syls
        w._nletters = sum(abs(e) for _, e in syls) if nletters is None else nletters
        return w

    @property
    def syllables(self) -> tuple[Syllable, ...]:
        return self._syls

    def __len__(self) -> int:
        """Reduced word length (number of letters)."""
        return self._nletters

    def is_identity(self) -> bool:
        return not self._syls

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self._syls == other._syls

    def __hash__(self) -> int:
        return hash(self._syls)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if not self._syls:
            return other
        if not other._syls:
            return self
        left = list(self._syls)
        rs = other._syls
        i = 0
        # cancellation happens only at the seam; both sides are reduced
        while left and i < len(rs) and left[-1][0] == rs[i][0]:
            gen, e = left[-1]
            merged = e + rs[i][1]
            if merged == 0:
                left.pop()
                i += 1
            else:
                left[-1] = (gen, merged)
                break
        return Word._from_reduced(tuple(left) + rs[i:])

    def inverse(self) -> "Word":
        syls = tuple((g, -e) for g, e in reversed(self._syls))
        return Word._from_reduced(syls, self._nletters)

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return IDENTITY
        if n < 0:
            return self.inverse() ** (-n)
        if len(self._syls) == 1:
            gen, e = self._syls[0]
            return Word._from_reduced(((gen, e * n),), self._nletters * n)
        half = self ** (n // 2)
        sq = half * half
        return sq * self if n % 2 else sq

    def exponent_sum(self, gen: str) -> int:
        if gen not in GENERATORS:
            raise ValueError(f"unknown generator {gen!r}")
        return sum(e for g, e in self._syls if g == gen)

    def letters(self) -> Iterator[Letter]:
        for gen, e in self._syls:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (gen, step)

    def append_letter(self, letter: Letter) -> "Word":
        gen, sign = letter
        if self._syls and self._syls[-1][0] == gen:
            g, e = self._syls[-1]
            merged = e + sign
            if merged == 0:
                return Word._from_reduced(self._syls[:-1], self._nletters - 1)
            return Word._from_reduced(self._syls[:-1] + ((g, merged),), self._nletters + (1 if abs(merged) > abs(e) else -1))
        return Word._from_reduced(self._syls + ((gen, sign),), self._nletters + 1)

    def last_letters(self, k: int) -> tuple[Letter, ...]:
        """The rightmost ``min(k, len)`` letters, left to right."""
        out: list[Letter] = []
        for gen, e in reversed(self._syls):
            if len(out) >= k:
                break
            step = 1 if e > 0 else -1
            take = min(abs(e), k - len(out))
            out.extend([(gen, step)] * take)
        out.reverse()
        return tuple(out)

    def drop_last(self, k: int) -> "Word":
        """Remove the rightmost ``k`` letters."""
        if k == 0:
            return self
        if k > self._nletters:
            raise ValueError(f"cannot drop {k} letters from a word of length {self._nletters}")
        syls = list(self._syls)
        left = k
        while left > 0:
            gen, e = syls[-1]
            run = abs(e)
            if run <= left:
                syls.pop()
                left -= run
            else:
                syls[-1] = (gen, e - left * (1 if e > 0 else -1))
                left = 0
        return Word._from_reduced(tuple(syls), self._nletters - k)

    def ends_with(self, pattern: tuple[Letter, ...]) -> bool:
        if len(pattern) > self._nletters:
            return False
        return self.last_letters(len(pattern)) == pattern

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse(text)


IDENTITY = Word()


def identity() -> Word:
    """The empty word."""
    return IDENTITY


def concat(a: Word, b: Word) -> Word:
    """The reduced product ``a * b``."""
    return a * b


def invert(w: Word) -> Word:
    return w.inverse()


def exponent_sum(w: Word, gen: str) -> int:
    return w.exponent_sum(gen)


def generator_power(gen: str, k: int) -> Word:
    """The word ``gen**k``; one syllable, O(1) for any ``k``."""
    if gen not in GENERATORS:
        raise ValueError(f"unknown generator {gen!r}")
    return Word(((gen, k),)) if k else IDENTITY


def format_word(w: Word) -> str:
    parts = []
    for gen, e in w.syllables:
        parts.append(gen if e == 1 else f"{gen}^{e}")
    return " ".join(parts)


def parse(text: str) -> Word:
    """Parse word text; inverse of :func:`format_word` on reduced words."""
    syls: list[Syllable] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        low = ch.lower()
        if low not in GENERATORS:
            raise WordSyntaxError(f"unexpected character {ch!r}", i)
        sign = 1 if ch.islower() else -1
        i += 1
        exp = 1
        if i < n and text[i] == "^":
            start = i
            i += 1
            neg = False
            if i < n and text[i] == "-":
                neg = True
                i += 1
            digits = ""
            while i < n and text[i].isdigit():
                digits += text[i]
                i += 1
            if not digits:
                raise WordSyntaxError("exponent expected after '^'", start)
            exp = int(digits)
            if exp == 0:
                raise WordSyntaxError("zero exponent not allowed", start)
            if neg:
                exp = -exp
        syls.append((low, sign * exp))
    return Word(syls)


def ball_from(prefix: Word, max_len: int) -> Iterator[Word]:
    """Depth-first walk of the reduced-word subtree rooted at ``prefix``.

    Yields every reduced word that extends ``prefix`` on the right and has
    length at most ``max_len``, in preorder with child order x, x^-1, z,
    z^-1.  Subtrees for distinct prefixes are disjoint, so enumeration
    parallelizes by partitioning prefixes.
    """
    if max_len < len(prefix):
        return
    stack = [prefix]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < max_len:
            last = w.last_letters(1)
            forbidden = (last[0][0], -last[0][1]) if last else None
            for letter in reversed(LETTER_ORDER):
                if letter != forbidden:
                    stack.append(w.append_letter(letter))


def ball(max_len: int) -> Iterator[Word]:
    """Every reduced word of length <= ``max_len``, each exactly once.

    Deterministic depth-first order; the count is ``2 * 3**max_len - 1``
    for ``max_len >= 1`` and 1 for ``max_len = 0``.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    return ball_from(IDENTITY, max_len)


def ball_size(max_len: int) -> int:
    return 1 if max_len == 0 else 2 * 3**max_len - 1
