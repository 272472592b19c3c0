"""Base-9 digit expansions and the closed-form twist classifiers.

Twisting the cubic rabbit by a power ``D_x^m`` lands in one of four
polynomials when the rabbit has three marked points, and in one of nine
families for longer critical cycles.  Which one depends only on the 9-adic
expansion of ``m``:

* three marked points: the right-most digit that is not 0, 4 or 8 decides
  (no such digit: the sign of ``m`` decides);
* longer cycles: the right-most nonzero digit decides.

Negative integers carry an infinite tail of 8s (``...888 = -1``), recorded
here as a flag on a finite digit list.

Both digit scans are backed by an independent oracle: the one-step reduction
recursion on ``m`` (:func:`reduce_once_3`, :func:`reduce_once_n`), iterated
to a terminal twist and mapped through the base-case classes.  The scan and
the recursion must agree everywhere; the test suite sweeps them against each
other, and cross-checking callers treat any disagreement as an internal
error rather than picking a winner.

Everything here is a pure function of ``m``; ``n`` never enters the
computation for the many-eared families, only the label set.  The same
answers apply to twisting about any of the other ear curves: for the n-eared
rabbit every curve except the one through the critical value has the same
twist dynamics as x, so ``D_c^m`` classifies exactly like ``D_x^m`` for all
those curves ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class PolyClass3(Enum):
    """The four unicritical cubics with three marked points: rabbit,
    corabbit, airplane, coairplane."""

    R3 = "R3"
    CoR3 = "coR3"
    A3 = "A3"
    CoA3 = "coA3"

    def __str__(self) -> str:
        return self.value


class PolyClassN(Enum):
    """The nine families reachable by twisting a many-eared cubic rabbit.

    Family descriptions (kneading sequence over {0,1,2,*}, repeated):

    ======  =======================  ====================================
    label   kneading sequence        notes
    ======  =======================  ====================================
    Rn      1 1 ... 1 *              n-pod tree, edges rotate ccw
    An      1 2 2 ... 2 *            path tree, angle 2pi/3 at the fold
    coAn    1 0 ... 0 *              conjugate of An (angle 4pi/3)
    Kn1     1 ... 1 0 *              kokopelli-like, angle 2pi/3
    Kn2     1 ... 1 2 *              same tree as Kn1, angle 4pi/3
    Bn      1 2 ... 2 1 *            path tree, angle 2pi/3
    coBn    1 0 ... 0 1 *            conjugate of Bn
    Yn      1 2 0 ... 0 *            trivalent critical point
    coYn    1 0 ... 0 2 *            conjugate of Yn
    ======  =======================  ====================================
    """

    Rn = "Rn"
    An = "An"
    CoAn = "coAn"
    Kn1 = "Kn1"
    Bn = "Bn"
    CoYn = "coYn"
    Kn2 = "Kn2"
    Yn = "Yn"
    CoBn = "coBn"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DigitExpansion:
    """9-adic digits of an integer, least significant first.

    ``negative_tail`` marks that the listed digits continue with infinitely
    many 8s; the integer is negative exactly when the flag is set.  The
    representation is canonical: no trailing 0 without the tail, no trailing
    8 with it.
    """

    digits: tuple[int, ...]
    negative_tail: bool = False

    def __post_init__(self):
        for d in self.digits:
            if not 0 <= d <= 8:
                raise ValueError(f"digit {d} out of range 0..8")
        if self.digits:
            last = self.digits[-1]
            if self.negative_tail and last == 8:
                raise ValueError("tail not maximally absorbed (trailing 8)")
            if not self.negative_tail and last == 0:
                raise ValueError("redundant leading zero digit")

    def value(self) -> int:
        return reconstruct(self)

    def __str__(self) -> str:
        body = "".join(str(d) for d in reversed(self.digits))
        if self.negative_tail:
            return f"…888{body}_9"
        return f"{body or '0'}_9"


def expand(m: int) -> DigitExpansion:
    """The canonical 9-adic expansion of ``m``.

    Digits are extracted by ``d = m mod 9``, ``m <- (m - d) / 9``; the loop
    stops at the fixed points 0 (nonnegative input, no tail) and -1
    (negative input, tail of 8s).
    """
    digits: list[int] = []
    while m != 0 and m != -1:
        d = m % 9
        digits.append(d)
        m = (m - d) // 9
    return DigitExpansion(tuple(digits), negative_tail=(m == -1))


def reconstruct(expansion: DigitExpansion) -> int:
    """Inverse of :func:`expand`: finite digits plus the closed form of the
    8s tail, ``-(9 ** len(digits))``."""
    total = 0
    power = 1
    for d in expansion.digits:
        total += d * power
        power *= 9
    if expansion.negative_tail:
        total -= power
    return total


def classify_power_3(m: int) -> PolyClass3:
    """Class of the twisted rabbit ``D_x^m R3`` from the digit scan.

    Scan least-significant-first for the first digit outside {0, 4, 8}; a
    tail of 8s contributes nothing, so the scan stops with the listed
    digits.
    """
    e = expand(m)
    for d in e.digits:
        if d not in (0, 4, 8):
            return PolyClass3.A3 if d in (1, 5, 6) else PolyClass3.CoA3
    return PolyClass3.CoR3 if e.negative_tail else PolyClass3.R3


#: Class of ``D_x^m R_n`` (n >= 4) by the right-most nonzero digit of m.
DIGIT_CLASS_N: dict[int, PolyClassN] = {
    1: PolyClassN.An,
    2: PolyClassN.CoAn,
    3: PolyClassN.Kn1,
    4: PolyClassN.Bn,
    5: PolyClassN.CoYn,
    6: PolyClassN.Kn2,
    7: PolyClassN.Yn,
    8: PolyClassN.CoBn,
}


def classify_power_n(m: int) -> PolyClassN:
    """Class of ``D_x^m R_n`` for any cycle length n >= 4.

    The answer is the same for every such n, so n is not a parameter.  Not
    valid for n = 3, where digits 4 and 8 additionally collapse.
    """
    if m == 0:
        return PolyClassN.Rn
    e = expand(m)
    for d in e.digits:
        if d != 0:
            return DIGIT_CLASS_N[d]
    # all listed digits are 0; m != 0 forces the 8s tail
    return DIGIT_CLASS_N[8]


@dataclass(frozen=True)
class Power:
    """Recursion step: the class equals that of ``D_x^k``."""

    k: int


@dataclass(frozen=True)
class Base:
    """Recursion endpoint: a terminal twist, named by its word in x and y."""

    token: str


ReductionOutcome = Power | Base

_RESIDUE_TOKEN_3 = {1: "x", 2: "x^2", 3: "y", 5: "x", 6: "y^2", 7: "x^-2"}

#: Terminal twist -> class, three marked points.
BASE_CLASS_3: dict[str, PolyClass3] = {
    "id": PolyClass3.R3,
    "x^-1": PolyClass3.CoR3,
    "x": PolyClass3.A3,
    "y^2": PolyClass3.A3,
    "x^2": PolyClass3.CoA3,
    "y": PolyClass3.CoA3,
    "x^-2": PolyClass3.CoA3,
}

_RESIDUE_TOKEN_N = {
    1: "x",
    2: "x^2",
    3: "y",
    4: "y x",
    5: "y^-1 x^-1",
    6: "y^2",
    7: "x^-2",
    8: "x^-1",
}

#: Terminal twist -> class, cycle length >= 4.
BASE_CLASS_N: dict[str, PolyClassN] = {
    "id": PolyClassN.Rn,
    "x": PolyClassN.An,
    "x^2": PolyClassN.CoAn,
    "y": PolyClassN.Kn1,
    "y x": PolyClassN.Bn,
    "y^-1 x^-1": PolyClassN.CoYn,
    "y^2": PolyClassN.Kn2,
    "x^-2": PolyClassN.Yn,
    "x^-1": PolyClassN.CoBn,
}


def reduce_once_3(m: int) -> ReductionOutcome:
    """One step of the reduction recursion for three marked points.

    Residues 0, 4 and 8 drop a digit (``Power(k)``); the other residues
    terminate at a twist word.  The recursion fixed points m = 0 and m = -1
    terminate immediately as the rabbit and corabbit endpoints.
    """
    if m == 0:
        return Base("id")
    if m == -1:
        return Base("x^-1")
    r = m % 9
    if r in (0, 4, 8):
        return Power((m - r) // 9)
    return Base(_RESIDUE_TOKEN_3[r])


def oracle_classify_3(m: int) -> PolyClass3:
    """Iterate :func:`reduce_once_3` to a terminal twist; independent of the
    digit scan in :func:`classify_power_3`."""
    while True:
        step = reduce_once_3(m)
        if isinstance(step, Base):
            return BASE_CLASS_3[step.token]
        m = step.k


def reduce_once_n(m: int) -> ReductionOutcome:
    """One reduction step for cycle length >= 4.

    Only residue 0 recurses; every nonzero residue terminates (m = -1 has
    residue 8, hence is terminal at ``x^-1`` with no special case).
    """
    if m == 0:
        return Base("id")
    r = m % 9
    if r == 0:
        return Power(m // 9)
    return Base(_RESIDUE_TOKEN_N[r])


def oracle_classify_n(m: int) -> PolyClassN:
    """Iterate :func:`reduce_once_n` to a terminal twist."""
    while True:
        step = reduce_once_n(m)
        if isinstance(step, Base):
            return BASE_CLASS_N[step.token]
        m = step.k
