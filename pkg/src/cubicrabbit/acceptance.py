"""Self-test criteria: the checks that gate a release of this package.

Each criterion is a function returning a :class:`CriterionResult`; the CLI
``selftest`` command and ``tests/test_acceptance.py`` both run them.  All
value comparisons are exact (tolerance zero).  ``scope="quick"`` shrinks the
big sweeps for interactive runs and is *not* the release gate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import census as census_mod
from . import nineadic, prefix, words, wreath
from .errors import InternalInconsistencyError
from .nineadic import PolyClass3, PolyClassN
from .words import Word, ball, ball_size, generator_power, parse

#: Cumulative class counts over balls of radius 0..9, columns R3, coR3, A3,
#: coA3 (frozen reference data for the census).
CENSUS_TABLE = {
    "R3": (1, 1, 3, 11, 27, 94, 287, 857, 2527, 7341),
    "coR3": (0, 2, 4, 8, 29, 82, 258, 785, 2294, 6802),
    "A3": (0, 2, 4, 12, 48, 139, 445, 1367, 4078, 12495),
    "coA3": (0, 0, 6, 22, 57, 170, 467, 1364, 4222, 12727),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _xp(m: int) -> Word:
    return generator_power("x", m)


def criterion_1_census(scope: str = "full") -> CriterionResult:
    """Census reproduces the reference table exactly for every radius."""
    max_len = 9 if scope == "full" else 6
    report = census_mod.run_census(max_len, algorithm="both", workers=1)
    for r in range(max_len + 1):
        expected = (
            CENSUS_TABLE["R3"][r],
            CENSUS_TABLE["coR3"][r],
            CENSUS_TABLE["A3"][r],
            CENSUS_TABLE["coA3"][r],
        )
        if report.rows[r] != expected:
            return CriterionResult(
                1, "census-table", False,
                f"radius {r}: got {report.rows[r]}, expected {expected}",
            )
    return CriterionResult(
        1, "census-table", True,
        f"radii 0..{max_len} exact, both algorithms, {report.elapsed:.1f}s",
    )


def criterion_2_worked_examples(scope: str = "full") -> CriterionResult:
    """The two flagship twists come out right on all three routes."""
    checks = []
    for m, expected in ((89, PolyClass3.A3), (-77, PolyClass3.CoR3)):
        checks.append(nineadic.classify_power_3(m) is expected)
        checks.append(wreath.classify_whole_word(_xp(m)) is expected)
        checks.append(prefix.classify_prefix(_xp(m)) is expected)
    ok = all(checks)
    return CriterionResult(
        2, "worked-examples", ok,
        "x^89 -> A3 and x^-77 -> coR3 on digit scan, whole-word, prefix"
        if ok else f"failed flags: {checks}",
    )


def criterion_3_three_way_agreement(scope: str = "full") -> CriterionResult:
    """Digit scan, recursion oracle, whole-word and prefix all agree on
    every power in the sweep range."""
    bound = 100_000 if scope == "full" else 2_000
    start = time.perf_counter()
    for m in range(-bound, bound + 1):
        a = nineadic.classify_power_3(m)
        b = nineadic.oracle_classify_3(m)
        if a is not b:
            return CriterionResult(
                3, "three-way-power-agreement", False,
                f"digit scan vs oracle disagree at m={m}: {a} vs {b}",
            )
        w = _xp(m)
        c = wreath.classify_whole_word(w)
        if a is not c:
            return CriterionResult(
                3, "three-way-power-agreement", False,
                f"digit scan vs whole-word disagree at m={m}: {a} vs {c}",
            )
        d = prefix.classify_prefix(w)
        if a is not d:
            return CriterionResult(
                3, "three-way-power-agreement", False,
                f"digit scan vs prefix disagree at m={m}: {a} vs {d}",
            )
    elapsed = time.perf_counter() - start
    return CriterionResult(
        3, "three-way-power-agreement", True,
        f"all m in [-{bound}, {bound}] agree on four routes, {elapsed:.0f}s",
    )


_THEOREM_TABLE_N = {
    0: PolyClassN.Rn,
    1: PolyClassN.An,
    2: PolyClassN.CoAn,
    3: PolyClassN.Kn1,
    4: PolyClassN.Bn,
    5: PolyClassN.CoYn,
    6: PolyClassN.Kn2,
    7: PolyClassN.Yn,
    8: PolyClassN.CoBn,
}


def criterion_4_many_eared(scope: str = "full") -> CriterionResult:
    """Digit scan and recursion oracle agree for the many-eared families,
    and the nine table entries are verbatim."""
    for m, expected in _THEOREM_TABLE_N.items():
        if nineadic.classify_power_n(m) is not expected:
            return CriterionResult(
                4, "many-eared-table", False,
                f"table entry m={m}: got {nineadic.classify_power_n(m)}, expected {expected}",
            )
    bound = 100_000 if scope == "full" else 10_000
    for m in range(-bound, bound + 1):
        a = nineadic.classify_power_n(m)
        b = nineadic.oracle_classify_n(m)
        if a is not b:
            return CriterionResult(
                4, "many-eared-table", False,
                f"digit scan vs oracle disagree at m={m}: {a} vs {b}",
            )
    return CriterionResult(
        4, "many-eared-table", True,
        f"nine table entries verbatim; scan == oracle on [-{bound}, {bound}]",
    )


def criterion_5_nucleus(scope: str = "full") -> CriterionResult:
    """Nucleus computation lands on the known five-element set and the
    containment criterion verifies at some depth k <= 8."""
    expected = {
        words.IDENTITY,
        parse("x"),
        parse("x^-1"),
        parse("z x"),
        parse("x^-1 z^-1"),
    }
    got = wreath.nucleus()
    if got != expected:
        return CriterionResult(
            5, "nucleus", False,
            f"nucleus mismatch: got {sorted(map(str, got))}",
        )
    k = wreath.contraction_depth(got, max_k=8)
    if k is None:
        return CriterionResult(5, "nucleus", False, "no contraction depth k <= 8")
    return CriterionResult(
        5, "nucleus", True,
        f"{{id, x, x^-1, z x, x^-1 z^-1}} verified at depth k = {k}",
    )


def criterion_6_lift_fixtures(scope: str = "full") -> CriterionResult:
    """The lifting set map matches the four generator lifts and the 2-cycle."""
    psi = wreath.psi_bar
    fixtures = [
        (parse("x^3"), parse("x^-1 z^-1")),
        (parse("z"), parse("x")),
        (parse("x^-1 z x"), words.IDENTITY),
        (parse("x z x^-1"), words.IDENTITY),
        (parse("z x^2"), parse("x^-1 z^-1 x^-1")),
        (parse("x^-1 z^-1 x^-1"), parse("z x^2")),
    ]
    for src, expect in fixtures:
        got = psi(src)
        if got != expect:
            return CriterionResult(
                6, "lift-fixtures", False,
                f"psi_bar({src}) = {got}, expected {expect}",
            )
    return CriterionResult(
        6, "lift-fixtures", True,
        "four generator lifts and the 2-cycle reproduce exactly",
    )


def criterion_7_property_suite(scope: str = "full") -> CriterionResult:
    """Randomized and exhaustive structural properties, zero violations."""
    full = scope == "full"
    rng = random.Random(20240917)

    pool = list(ball(8 if full else 6))
    n_pairs = 10_000 if full else 1_000
    for _ in range(n_pairs):
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        if wreath.phi(a * b) != wreath.wreath_mul(wreath.phi(a), wreath.phi(b)):
            return CriterionResult(
                7, "property-suite", False,
                f"wreath recursion not homomorphic on {a!r}, {b!r}",
            )

    for w in ball(7 if full else 5):
        if wreath.phi(w).perm != wreath.RHO_POWERS[w.exponent_sum("x") % 3]:
            return CriterionResult(
                7, "property-suite", False, f"coset law fails on {w!r}"
            )

    for w in ball(8 if full else 6):
        stepped = prefix.prefix_step(w)
        if len(stepped) > len(w):
            return CriterionResult(
                7, "property-suite", False, f"prefix step grew {w!r}"
            )
        rule = prefix.matching_rule(w)
        if rule is not None:
            delta = len(stepped) - len(w)
            if delta > rule.delta_max or (rule.delta_exact and delta != rule.delta_max):
                return CriterionResult(
                    7, "property-suite", False,
                    f"rule {rule.name} length bound violated on {w!r} (delta {delta})",
                )
        if wreath.classify_whole_word(stepped) is not wreath.classify_whole_word(w):
            return CriterionResult(
                7, "property-suite", False, f"prefix step changed the class of {w!r}"
            )

    for radius in range(0, (9 if full else 6) + 1):
        count = sum(1 for _ in ball(radius))
        if count != ball_size(radius):
            return CriterionResult(
                7, "property-suite", False,
                f"ball({radius}) yielded {count} words, expected {ball_size(radius)}",
            )

    for w in ball(6 if full else 4):
        if parse(words.format_word(w)) != w:
            return CriterionResult(
                7, "property-suite", False, f"parse/format round-trip fails on {w!r}"
            )

    return CriterionResult(
        7, "property-suite", True,
        "homomorphism, coset law, prefix bounds, ball counts, round-trip all clean",
    )


def criterion_8_negative_control(scope: str = "full") -> CriterionResult:
    """A deliberately corrupted borrow rule must be caught by the audit."""
    bad = prefix.RewriteRule(
        name="borrow-corrupted",
        pattern=(("z", 1), ("x", 1)),
        left_prepend=words.IDENTITY,
        right_append=generator_power("x", -1),  # wrong sign on purpose
        delta_max=-1,
    )
    report = prefix.rule_audit(rules=[bad], samples_per_rule=200, seed=7)
    if report.ok:
        return CriterionResult(
            8, "negative-control", False,
            "audit failed to flag a corrupted rule; the audit is vacuous",
        )
    return CriterionResult(
        8, "negative-control", True,
        f"corrupted rule flagged with {len(report.violations)} violations",
    )


CRITERIA: tuple[tuple[int, str, Callable[[str], CriterionResult]], ...] = (
    (1, "census-table", criterion_1_census),
    (2, "worked-examples", criterion_2_worked_examples),
    (3, "three-way-power-agreement", criterion_3_three_way_agreement),
    (4, "many-eared-table", criterion_4_many_eared),
    (5, "nucleus", criterion_5_nucleus),
    (6, "lift-fixtures", criterion_6_lift_fixtures),
    (7, "property-suite", criterion_7_property_suite),
    (8, "negative-control", criterion_8_negative_control),
)


def run_all(scope: str = "full") -> list[CriterionResult]:
    if scope not in ("full", "quick"):
        raise ValueError("scope must be 'full' or 'quick'")
    results = []
    for _, _, fn in CRITERIA:
        try:
            results.append(fn(scope))
        except InternalInconsistencyError as exc:  # a criterion blew up: still report
            num = len(results) + 1
            results.append(CriterionResult(num, "internal-error", False, str(exc)))
    return results
