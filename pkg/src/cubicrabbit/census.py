"""Census of twisted-rabbit classes over balls in the free group.

Classifies every reduced word of length at most some radius and tallies the
four classes cumulatively per radius; running with ``algorithm="both"``
cross-validates the wreath and prefix classifiers word by word and treats
any disagreement as an internal error.

The enumeration walks the reduced-word tree depth first, carrying the
wreath image of the current word so that the first lifting step of each
classification is a coordinate lookup rather than a fresh pass.  Workers
split the sixteen-odd depth-2 subtrees (there are twelve reduced two-letter
prefixes) and the merge is a plain sum, so the report is identical for any
worker count.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistencyError
from .nineadic import PolyClass3
from .prefix import classify_prefix
from .words import IDENTITY, LETTER_ORDER, Letter, Word, ball_size
from .wreath import (
    TERMINAL_CLASS_3,
    WreathElement,
    classify_whole_word,
    phi,
    psi_bar_from_wreath,
    wreath_mul,
)

ALGORITHMS = ("whole-word", "prefix", "both")

_CLASS_INDEX = {
    PolyClass3.R3: 0,
    PolyClass3.CoR3: 1,
    PolyClass3.A3: 2,
    PolyClass3.CoA3: 3,
}
_CLASS_ORDER = (PolyClass3.R3, PolyClass3.CoR3, PolyClass3.A3, PolyClass3.CoA3)


@dataclass
class CensusReport:
    """Cumulative class counts per radius, ``rows[r] = (R3, coR3, A3, coA3)``
    over all words of length <= r."""

    max_len: int
    algorithm: str
    rows: list[tuple[int, int, int, int]]
    elapsed: float = 0.0

    def total(self, radius: int) -> int:
        return sum(self.rows[radius])


_PHI_LETTER: dict[Letter, WreathElement] = {
    letter: phi(Word((letter,))) for letter in LETTER_ORDER
}


def _classify_whole_from(word: Word, elem: WreathElement) -> PolyClass3:
    cls = TERMINAL_CLASS_3.get(word)
    if cls is not None:
        return cls
    return classify_whole_word(psi_bar_from_wreath(elem))


def _classify(word: Word, elem: WreathElement | None, algorithm: str,
              cache: dict | None) -> PolyClass3:
    if cache is not None:
        hit = cache.get(word)
        if hit is not None:
            return hit
    if algorithm == "prefix":
        cls = classify_prefix(word)
    else:
        cls = (
            _classify_whole_from(word, elem)
            if elem is not None
            else classify_whole_word(word)
        )
        if algorithm == "both":
            other = classify_prefix(word)
            if other is not cls:
                raise InternalInconsistencyError(
                    f"algorithms disagree on {word!r}: whole-word says {cls}, "
                    f"prefix says {other}"
                )
    if cache is not None:
        cache[word] = cls
    return cls


def _count_subtree(root: Word, max_len: int, algorithm: str,
                   cache: dict | None = None) -> list[list[int]]:
    """Counts by exact length for the subtree of reduced words extending
    ``root``; DFS carries phi incrementally when the wreath route is on."""
    counts = [[0, 0, 0, 0] for _ in range(max_len + 1)]
    carry_phi = algorithm != "prefix"
    stack: list[tuple[Word, WreathElement | None]] = [
        (root, phi(root) if carry_phi else None)
    ]
    while stack:
        w, elem = stack.pop()
        cls = _classify(w, elem, algorithm, cache)
        counts[len(w)][_CLASS_INDEX[cls]] += 1
        if len(w) < max_len:
            last = w.last_letters(1)
            forbidden = (last[0][0], -last[0][1]) if last else None
            for letter in reversed(LETTER_ORDER):
                if letter != forbidden:
                    child_elem = (
                        wreath_mul(elem, _PHI_LETTER[letter]) if carry_phi else None
                    )
                    stack.append((w.append_letter(letter), child_elem))
    return counts


def _subtree_task(args: tuple) -> list[list[int]]:
    root_syllables, max_len, algorithm = args
    return _count_subtree(Word(root_syllables), max_len, algorithm)


def _partition_roots(max_len: int) -> list[Word]:
    """The twelve reduced two-letter prefixes, the roots of the independent
    subtrees a worker pool splits."""
    roots = []
    for first in LETTER_ORDER:
        w1 = Word((first,))
        for second in LETTER_ORDER:
            if second != (first[0], -first[1]):
                roots.append(w1.append_letter(second))
    return roots


def run_census(max_len: int, algorithm: str = "both", workers: int = 1,
               cache: bool = False) -> CensusReport:
    """Classify the whole ball of radius ``max_len`` and tally per radius.

    Deterministic for any ``workers``; with ``algorithm="both"`` every word
    is classified twice and the tallies are identical by construction (a
    mismatch raises instead of producing a report).  ``cache`` memoizes
    classes by word within this run; off by default.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick from {ALGORITHMS}")
    if workers < 1:
        raise ValueError("workers must be positive")
    start = time.perf_counter()
    per_len = [[0, 0, 0, 0] for _ in range(max_len + 1)]
    word_cache: dict | None = {} if cache else None

    # words of length <= 1 stay in-process
    shorts = [IDENTITY] if max_len == 0 else [IDENTITY] + [
        Word((letter,)) for letter in LETTER_ORDER
    ]
    for w in shorts:
        cls = _classify(w, phi(w), algorithm, word_cache)
        per_len[len(w)][_CLASS_INDEX[cls]] += 1

    if max_len >= 2:
        roots = _partition_roots(max_len)
        if workers == 1:
            parts = [
                _count_subtree(root, max_len, algorithm, word_cache)
                for root in roots
            ]
        else:
            args = [(root.syllables, max_len, algorithm) for root in roots]
            ctx = multiprocessing.get_context()
            with ctx.Pool(processes=workers) as pool:
                parts = pool.map(_subtree_task, args)
        for part in parts:
            for r in range(max_len + 1):
                for c in range(4):
                    per_len[r][c] += part[r][c]

    rows: list[tuple[int, int, int, int]] = []
    running = [0, 0, 0, 0]
    for r in range(max_len + 1):
        for c in range(4):
            running[c] += per_len[r][c]
        rows.append(tuple(running))
        expected = ball_size(r)
        if sum(rows[-1]) != expected:
            raise InternalInconsistencyError(
                f"radius {r} classified {sum(rows[-1])} words, expected {expected}"
            )
    elapsed = time.perf_counter() - start
    return CensusReport(max_len=max_len, algorithm=algorithm, rows=rows,
                        elapsed=elapsed)


def export_csv(report: CensusReport) -> str:
    """Machine-readable table: fixed header, one row per radius, LF endings."""
    lines = ["ell,R3,coR3,A3,coA3,total"]
    for r, row in enumerate(report.rows):
        lines.append(f"{r},{row[0]},{row[1]},{row[2]},{row[3]},{sum(row)}")
    return "\n".join(lines) + "\n"


def format_table(report: CensusReport) -> str:
    """Human-readable aligned table of the cumulative counts."""
    headers = ["ell", "R3", "coR3", "A3", "coA3", "total"]
    body = [
        [str(r), *(str(v) for v in row), str(sum(row))]
        for r, row in enumerate(report.rows)
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(headers)]
    def fmt(cells):
        return "  ".join(c.rjust(w) for c, w in zip(cells, widths))
    return "\n".join([fmt(headers)] + [fmt(b) for b in body]) + "\n"


def ratio_trend(report: CensusReport) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Per-radius class frequencies as exact fractions of the ball size.

    Exploratory output: whether the frequencies converge as the radius
    grows is an open question, and nothing here claims they do.
    """
    if not report.rows:
        raise ValueError("empty report")
    out = []
    for row in report.rows:
        total = sum(row)
        out.append(tuple(Fraction(v, total) for v in row))
    return out
