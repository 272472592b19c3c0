"""Prefix rewriting: classify a twisted rabbit by chewing the word's right end.

Every reduced word of length at least 4 ends in a liftable piece, possibly
after borrowing a letter.  Lifting that piece through the rabbit moves its
lift to the *left* end of the word and never increases reduced length, so
iterating the step terminates.  The fixed points are exactly nine short
words, each with a known class:

    id -> R3      x -> A3        x^-1 -> coR3
    x^2, x^-2, z x^2, z x^-2, z^-1 x^2, z^-1 x^-2 -> coA3

The rule table (suffixes are written left to right; ``h`` is the untouched
remainder, eps and d range over +1/-1, y = x^-1 z^-1):

    name        suffix of g              result
    ----        -----------              ------
    conj        x^-eps z^d x^eps         h                      (len -3)
    four-x      x^eps  z^d x^eps x^eps   y^eps h                (len <= -2)
    four-mixed  x^-eps z^d x^eps x^eps   h x^eps                (len <= -3)
    four-z      z^d    z^d x^eps x^eps   y^eps h x^-eps         (len <= -1)
    cube        x^eps  x^eps x^eps       y^eps h                (len <= -1)
    borrow      z^d    x^eps             h x^eps                (len -1)
    lift-z      z^d                      x^d h                  (len <= 0)

Sign variants beyond the plus-sign rows are forced by the liftable factors
z^d -> x^d, x^3eps -> y^eps and x^k z^d x^-k -> id for k not divisible by 3;
each rule is validated wholesale against the wreath classifier by
:func:`rule_audit` and by full-ball agreement sweeps in the tests.

Rule priority (first match wins) runs longest-first: conj, then the
four-letter family, cube, borrow, lift-z.  The patterns are mutually
exclusive except that conj shadows borrow, so priority only pins
reproducibility; class preservation of every rule is what the audit checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import InternalInconsistencyError
from .nineadic import PolyClass3
from .words import IDENTITY, Letter, Word, ball, generator_power
from .wreath import classify_whole_word, y_power

_X = generator_power("x", 1)


@dataclass(frozen=True)
class RewriteRule:
    """One table row: replace a matched suffix, prepend/append the rest.

    Applying to ``h . pattern`` yields ``left_prepend * h * right_append``
    reduced.  ``delta_max`` bounds the reduced-length change; with
    ``delta_exact`` the bound is attained on every match.
    """

    name: str
    pattern: tuple[Letter, ...]
    left_prepend: Word
    right_append: Word
    delta_max: int
    delta_exact: bool = False

    @property
    def consumes(self) -> int:
        return len(self.pattern)

    def matches(self, w: Word) -> bool:
        return w.ends_with(self.pattern)

    def apply(self, w: Word) -> Word:
        h = w.drop_last(self.consumes)
        return self.left_prepend * h * self.right_append


def _letter(gen: str, sign: int) -> Letter:
    return (gen, sign)


def _build_rules() -> tuple[RewriteRule, ...]:
    rules: list[RewriteRule] = []
    signs = (1, -1)
    for eps in signs:
        for d in signs:
            rules.append(
                RewriteRule(
                    name=f"conj(eps={eps},d={d})",
                    pattern=(_letter("x", -eps), _letter("z", d), _letter("x", eps)),
                    left_prepend=IDENTITY,
                    right_append=IDENTITY,
                    delta_max=-3,
                    delta_exact=True,
                )
            )
    for eps in signs:
        for d in signs:
            rules.append(
                RewriteRule(
                    name=f"four-x(eps={eps},d={d})",
                    pattern=(
                        _letter("x", eps),
                        _letter("z", d),
                        _letter("x", eps),
                        _letter("x", eps),
                    ),
                    left_prepend=y_power(eps),
                    right_append=IDENTITY,
                    delta_max=-2,
                )
            )
            rules.append(
                RewriteRule(
                    name=f"four-mixed(eps={eps},d={d})",
                    pattern=(
                        _letter("x", -eps),
                        _letter("z", d),
                        _letter("x", eps),
                        _letter("x", eps),
                    ),
                    left_prepend=IDENTITY,
                    right_append=generator_power("x", eps),
                    delta_max=-3,
                )
            )
            rules.append(
                RewriteRule(
                    name=f"four-z(eps={eps},d={d})",
                    pattern=(
                        _letter("z", d),
                        _letter("z", d),
                        _letter("x", eps),
                        _letter("x", eps),
                    ),
                    left_prepend=y_power(eps),
                    right_append=generator_power("x", -eps),
                    delta_max=-1,
                )
            )
    for eps in signs:
        rules.append(
            RewriteRule(
                name=f"cube(eps={eps})",
                pattern=(_letter("x", eps),) * 3,
                left_prepend=y_power(eps),
                right_append=IDENTITY,
                delta_max=-1,
            )
        )
    for eps in signs:
        for d in signs:
            rules.append(
                RewriteRule(
                    name=f"borrow(eps={eps},d={d})",
                    pattern=(_letter("z", d), _letter("x", eps)),
                    left_prepend=IDENTITY,
                    right_append=generator_power("x", eps),
                    delta_max=-1,
                    delta_exact=True,
                )
            )
    for d in signs:
        rules.append(
            RewriteRule(
                name=f"lift-z(d={d})",
                pattern=(_letter("z", d),),
                left_prepend=generator_power("x", d),
                right_append=IDENTITY,
                delta_max=0,
            )
        )
    return tuple(rules)


#: The full rule table in priority order (first match wins).
RULES: tuple[RewriteRule, ...] = _build_rules()

#: The nine terminal words and their classes.
TERMINAL_CLASS: dict[Word, PolyClass3] = {
    IDENTITY: PolyClass3.R3,
    Word((("x", 1),)): PolyClass3.A3,
    Word((("x", -1),)): PolyClass3.CoR3,
    Word((("x", 2),)): PolyClass3.CoA3,
    Word((("x", -2),)): PolyClass3.CoA3,
    Word((("z", 1), ("x", 2))): PolyClass3.CoA3,
    Word((("z", 1), ("x", -2))): PolyClass3.CoA3,
    Word((("z", -1), ("x", 2))): PolyClass3.CoA3,
    Word((("z", -1), ("x", -2))): PolyClass3.CoA3,
}


def matching_rule(w: Word) -> RewriteRule | None:
    for rule in RULES:
        if rule.matches(w):
            return rule
    return None


def prefix_step(w: Word) -> Word:
    """Apply the first matching rule to the right end of ``w``; words that
    match nothing (the nine terminals) are returned unchanged."""
    rule = matching_rule(w)
    return w if rule is None else rule.apply(w)


def iter_prefix_orbit(w: Word) -> Iterator[Word]:
    """Yield ``w`` and its rewrites up to and including the fixed point."""
    limit = 10 * len(w) + 100
    cur = w
    for _ in range(limit):
        yield cur
        nxt = prefix_step(cur)
        if nxt == cur:
            return
        cur = nxt
    raise InternalInconsistencyError(
        f"prefix rewriting of {w!r} exceeded {limit} steps"
    )


_KERNEL_MIN_LETTERS = 64


def classify_prefix(w: Word) -> PolyClass3:
    """Class of the twisted polynomial of ``w`` by prefix rewriting.

    A fixed point outside the terminal table or a step overrun raises
    :class:`InternalInconsistencyError`; neither is a valid answer.  Long
    words run on a compiled kernel with identical rules.
    """
    if len(w) >= _KERNEL_MIN_LETTERS:
        from . import _fastpath

        if _fastpath.NUMBA_AVAILABLE:
            return PolyClass3[_fastpath.prefix_classify(w)]
    last = w
    for cur in iter_prefix_orbit(w):
        last = cur
    cls = TERMINAL_CLASS.get(last)
    if cls is None:
        raise InternalInconsistencyError(
            f"prefix rewriting fixed {last!r}, which is outside the terminal table"
        )
    return cls


@dataclass
class AuditViolation:
    rule: str
    word: Word
    expected: PolyClass3
    got: PolyClass3


@dataclass
class AuditReport:
    """Outcome of :func:`rule_audit`; ``ok`` when no rule changed a class."""

    samples_per_rule: int
    checked: int = 0
    violations: list[AuditViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def rule_audit(
    rules: Sequence[RewriteRule] = RULES,
    samples_per_rule: int = 1000,
    seed: int = 0,
    pool_radius: int = 6,
) -> AuditReport:
    """Check every rule against the wreath classifier on random contexts.

    For each rule, random words ``h`` are drawn from a ball and the class of
    ``h . pattern`` is compared with the class of the rewritten word.  Any
    mismatch lands in the report; a healthy table reports none, and a
    deliberately corrupted rule is caught immediately.
    """
    rng = random.Random(seed)
    pool = list(ball(pool_radius))
    report = AuditReport(samples_per_rule=samples_per_rule)
    for rule in rules:
        pattern_word = Word(rule.pattern)
        done = 0
        attempts = 0
        while done < samples_per_rule and attempts < 50 * samples_per_rule:
            attempts += 1
            h = pool[rng.randrange(len(pool))]
            w = h * pattern_word
            if len(w) != len(h) + rule.consumes:
                continue  # the context ate into the pattern; resample
            expected = classify_whole_word(w)
            got = classify_whole_word(rule.apply(w))
            report.checked += 1
            if expected is not got:
                report.violations.append(AuditViolation(rule.name, w, expected, got))
            done += 1
    return report
