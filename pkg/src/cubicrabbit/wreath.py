"""Wreath recursion, lifting, and the whole-word classifier.

The triple branched cover structure of the cubic rabbit turns lifting of
mapping classes into a self-similar action: a homomorphism from the free
group on x, z into (free group) wr Sym(3), generated by

    Phi(x) = rho << x^-1 z^-1, id, id >>        rho = (132)
    Phi(z) =     << id,       id, x  >>

Conventions, pinned by fixture tests because they are easy to get wrong:

* wreath elements are written ``sigma << g3, g2, g1 >>`` with g1 the
  *rightmost* coordinate, and ``coord(i)`` returns g_i;
* brackets multiply entrywise, and a permutation pushed past a bracket
  permutes indices: ``<<g3,g2,g1>> s = s <<g_{s(3)}, g_{s(2)}, g_{s(1)}>>``;
* words compose leftmost-applied-last, like the rest of the package.

Liftability is detected by the permutation factor: a word lifts through the
rabbit exactly when its x-exponent sum is divisible by 3.  The one-step
simplification map ``psi_bar`` sends g to ``g|_1``, ``g|_1 x`` or
``g|_1 x^-1`` according to that coset; iterating it preserves the class of
the twisted polynomial and always terminates in the five words

    id, x, x^-1, z x^2, x^-1 z^-1 x^-1

(the last two swap under psi_bar, and both mean the coairplane).

The action is contracting: iterated coordinate restrictions of everything
fall into the finite nucleus {id, x, x^-1, z x, x^-1 z^-1}, which
:func:`nucleus` recomputes from scratch and :func:`verify_nucleus` checks
against the containment criterion ((S u N)^2)|_depth-k inside N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ContractionBudgetError, InternalInconsistencyError
from .nineadic import PolyClass3
from .words import IDENTITY, Word, generator_power

_X = generator_power("x", 1)
_X_INV = generator_power("x", -1)
_Z = generator_power("z", 1)
_Z_INV = generator_power("z", -1)

#: Standard symmetric generating set of the acting group.
STANDARD_GENERATORS = (_X, _X_INV, _Z, _Z_INV)


@dataclass(frozen=True)
class Perm3:
    """A permutation of {1, 2, 3}; ``images[i-1]`` is the image of i."""

    images: tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3]:
            raise ValueError(f"not a permutation of 1..3: {self.images}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm3") -> "Perm3":
        # (p * q)(i) = p(q(i)): q acts first
        return Perm3((self(other(1)), self(other(2)), self(other(3))))

    def inverse(self) -> "Perm3":
        inv = [0, 0, 0]
        for i in (1, 2, 3):
            inv[self(i) - 1] = i
        return Perm3(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == (1, 2, 3)

    def __str__(self) -> str:
        return {(1, 2, 3): "e", (3, 1, 2): "rho", (2, 3, 1): "rho^2"}.get(
            self.images, str(self.images)
        )


PERM_ID = Perm3((1, 2, 3))
RHO = Perm3((3, 1, 2))  # rho(1)=3, rho(3)=2, rho(2)=1
RHO2 = RHO * RHO
RHO_POWERS = (PERM_ID, RHO, RHO2)


@dataclass(frozen=True)
class WreathElement:
    """An element ``perm << g3, g2, g1 >>`` of (free group) wr Sym(3).

    ``coords`` is stored in display order (g3, g2, g1); use :meth:`coord`
    for index-based access.
    """

    perm: Perm3
    coords: tuple[Word, Word, Word]

    def coord(self, i: int) -> Word:
        if i not in (1, 2, 3):
            raise IndexError(f"coordinate index {i} out of range 1..3")
        return self.coords[3 - i]

    @staticmethod
    def identity() -> "WreathElement":
        return WreathElement(PERM_ID, (IDENTITY, IDENTITY, IDENTITY))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_mul(self, other)

    def __str__(self) -> str:
        def f(w: Word) -> str:
            return str(w) if len(w) else "id"

        g3, g2, g1 = self.coords
        bracket = f"<<{f(g3)}, {f(g2)}, {f(g1)}>>"
        return bracket if self.perm.is_identity() else f"{self.perm} {bracket}"


def wreath_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    """Product in the wreath product.

    Pushing a's bracket past b's permutation permutes a's indices by
    b.perm, then brackets multiply entrywise:
    ``(a*b).coord(i) = a.coord(b.perm(i)) * b.coord(i)``.
    """
    perm = a.perm * b.perm
    c = tuple(a.coord(b.perm(i)) * b.coord(i) for i in (3, 2, 1))
    return WreathElement(perm, c)


_Y_POS = (("x", -1), ("z", -1))  # y = x^-1 z^-1
_Y_NEG = (("z", 1), ("x", 1))  # y^-1 = z x


def _y_power_syllables(q: int) -> tuple:
    if q > 0:
        return _Y_POS * q
    if q < 0:
        return _Y_NEG * (-q)
    return ()


def y_power(q: int) -> Word:
    """The word ``y**q`` with ``y = x^-1 z^-1``."""
    return Word._from_reduced(_y_power_syllables(q), 2 * abs(q))


def _phi_x_power(e: int) -> WreathElement:
    # Phi(x^e) with e = 3q + r: the cube x^3 lifts diagonally to y, so the
    # coordinates are y^q with one extra y on the coordinates the residue
    # touches.
    q, r = divmod(e, 3)
    yq = y_power(q)
    if r == 0:
        return WreathElement(PERM_ID, (yq, yq, yq))
    yq1 = y_power(q + 1)
    if r == 1:
        return WreathElement(RHO, (yq1, yq, yq))
    return WreathElement(RHO2, (yq1, yq, yq1))


def _phi_z_power(e: int) -> WreathElement:
    return WreathElement(PERM_ID, (IDENTITY, IDENTITY, generator_power("x", e)))


def phi(w: Word) -> WreathElement:
    """The wreath recursion, extended homomorphically syllable by syllable."""
    acc = WreathElement.identity()
    for gen, e in w.syllables:
        acc = wreath_mul(acc, _phi_x_power(e) if gen == "x" else _phi_z_power(e))
    return acc


# image of i under rho^s, indexed [s][i-1]
_RHO_IMAGE = ((1, 2, 3), (3, 1, 2), (2, 3, 1))


def restriction(w: Word, i: int) -> Word:
    """Coordinate i of ``phi(w)``, computed without the other coordinates.

    Walking the word left to right, each syllable contributes its own
    restriction at the index carried to it by the permutation of the suffix
    on its right; the suffix permutation is rho to the suffix x-exponent.
    """
    if i not in (1, 2, 3):
        raise IndexError(f"coordinate index {i} out of range 1..3")
    s = w.exponent_sum("x") % 3
    out: list = []
    for gen, e in w.syllables:
        if gen == "x":
            s = (s - e) % 3
            j = _RHO_IMAGE[s][i - 1]
            q, r = divmod(e, 3)
            if r == 1:
                q_eff = q + 1 if j == 3 else q
            elif r == 2:
                q_eff = q if j == 2 else q + 1
            else:
                q_eff = q
            if q_eff:
                out.extend(_y_power_syllables(q_eff))
        else:
            j = _RHO_IMAGE[s][i - 1]
            if j == 1:
                out.append(("x", e))
    return Word(out)


def restriction_path(w: Word, path: Iterable[int]) -> Word:
    """Iterated restriction along an index word, new index applied last:
    the restriction at ``(i, rest)`` is the restriction at ``rest``, then at
    ``i``."""
    seq = list(path)
    for i in reversed(seq):
        w = restriction(w, i)
    return w


def liftable(w: Word) -> bool:
    """Whether ``w`` lifts through the rabbit to a pure mapping class.

    Equivalent to ``phi(w).perm`` being trivial; only x carries the cyclic
    permutation, so the x-exponent sum mod 3 decides.
    """
    return w.exponent_sum("x") % 3 == 0


def psi_bar(w: Word) -> Word:
    """One lifting step: ``g|_1`` adjusted by the coset of ``g``.

    Trivial permutation factor: ``g|_1``; factor rho: ``g|_1 x``; factor
    rho^2: ``g|_1 x^-1``.  The twisted polynomials of ``w`` and
    ``psi_bar(w)`` are Thurston equivalent.
    """
    r = restriction(w, 1)
    s = w.exponent_sum("x") % 3
    if s == 1:
        return r * _X
    if s == 2:
        return r * _X_INV
    return r


def psi_bar_from_wreath(elem: WreathElement) -> Word:
    """:func:`psi_bar` read off a precomputed ``phi`` image."""
    r = elem.coord(1)
    if elem.perm == RHO:
        return r * _X
    if elem.perm == RHO2:
        return r * _X_INV
    return r


#: Fixed points and 2-cycle of psi_bar, with their classes.
TERMINAL_CLASS_3: dict[Word, PolyClass3] = {
    IDENTITY: PolyClass3.R3,
    _X: PolyClass3.A3,
    _X_INV: PolyClass3.CoR3,
    Word((("z", 1), ("x", 2))): PolyClass3.CoA3,
    Word((("x", -1), ("z", -1), ("x", -1))): PolyClass3.CoA3,
}

# defer to avoid a cycle: _fastpath imports nothing from here
_KERNEL_MIN_LETTERS = 64


def iter_psi_bar_orbit(w: Word) -> Iterator[Word]:
    """Yield ``w, psi_bar(w), ...`` up to and including the first terminal
    word.  Raises if the orbit misbehaves (it cannot, unless the recursion
    data is corrupted)."""
    limit = max(64, 4 * len(w))
    visited: set[Word] = set()
    cur = w
    for _ in range(limit + 1):
        yield cur
        if cur in TERMINAL_CLASS_3:
            return
        if len(cur) < 8:
            if cur in visited:
                raise InternalInconsistencyError(
                    f"psi_bar orbit cycles outside the terminal set at {cur!r}"
                )
            visited.add(cur)
        cur = psi_bar(cur)
    raise InternalInconsistencyError(
        f"psi_bar orbit of {w!r} exceeded {limit} iterations"
    )


def classify_whole_word(w: Word) -> PolyClass3:
    """Class of the twisted polynomial of ``w`` by iterating ``psi_bar``.

    Long words are first contracted by a compiled letter-level pass with
    identical semantics (cross-checked in the test suite).
    """
    if len(w) >= _KERNEL_MIN_LETTERS:
        from . import _fastpath

        if _fastpath.NUMBA_AVAILABLE:
            w = _fastpath.contract_whole_word(w)
    cls = None
    for cur in iter_psi_bar_orbit(w):
        cls = TERMINAL_CLASS_3.get(cur)
    assert cls is not None
    return cls


def _symmetrize(generators: Iterable[Word]) -> set[Word]:
    s = set(generators)
    s |= {g.inverse() for g in s}
    s.add(IDENTITY)
    return s


def _restriction_closure(
    seeds: Iterable[Word], budget: int
) -> dict[Word, tuple[Word, Word, Word]]:
    """All words reachable from ``seeds`` by iterated restriction, with the
    outgoing restriction edges of each."""
    edges: dict[Word, tuple[Word, Word, Word]] = {}
    frontier = list(dict.fromkeys(seeds))
    while frontier:
        nxt: list[Word] = []
        for v in frontier:
            if v in edges:
                continue
            rs = (restriction(v, 1), restriction(v, 2), restriction(v, 3))
            edges[v] = rs
            if len(edges) > budget:
                raise ContractionBudgetError(
                    f"restriction closure exceeded {budget} vertices"
                )
            nxt.extend(r for r in rs if r not in edges)
        frontier = nxt
    return edges


def _recurrent_part(edges: dict[Word, tuple[Word, ...]]) -> set[Word]:
    """Vertices on a restriction cycle, plus everything reachable from one."""
    # Kosaraju: order by DFS finish time, then sweep the transpose.
    order: list[Word] = []
    seen: set[Word] = set()
    for root in edges:
        if root in seen:
            continue
        stack: list[tuple[Word, int]] = [(root, 0)]
        seen.add(root)
        while stack:
            v, idx = stack[-1]
            outs = edges[v]
            if idx < len(outs):
                stack[-1] = (v, idx + 1)
                u = outs[idx]
                if u not in seen:
                    seen.add(u)
                    stack.append((u, 0))
            else:
                order.append(v)
                stack.pop()

    transpose: dict[Word, list[Word]] = {v: [] for v in edges}
    for v, outs in edges.items():
        for u in outs:
            transpose[u].append(v)

    comp: dict[Word, int] = {}
    for root in reversed(order):
        if root in comp:
            continue
        label = len(comp)
        stack2 = [root]
        while stack2:
            v = stack2.pop()
            if v in comp:
                continue
            comp[v] = label
            stack2.extend(u for u in transpose[v] if u not in comp)

    sizes: dict[int, int] = {}
    for v, c in comp.items():
        sizes[c] = sizes.get(c, 0) + 1
    cyclic = {
        v
        for v in edges
        if sizes[comp[v]] > 1 or v in edges[v]  # multi-vertex SCC or self-loop
    }

    out: set[Word] = set()
    frontier = list(cyclic)
    while frontier:
        v = frontier.pop()
        if v in out:
            continue
        out.add(v)
        frontier.extend(edges[v])
    return out


def nucleus(generators: Iterable[Word] = STANDARD_GENERATORS, budget: int = 10_000) -> set[Word]:
    """The nucleus of the self-similar action for the given generating set.

    Iterates to a fixed point: close the pairwise products of the current
    set (plus generators) under restriction, keep the eventually recurrent
    part, repeat.  Fails with :class:`ContractionBudgetError` if the closure
    exceeds ``budget`` vertices, which would mean the action is not
    contracting at that scale.
    """
    s = _symmetrize(generators)
    current: set[Word] = {IDENTITY}
    while True:
        pool = s | current
        seeds = {a * b for a in pool for b in pool}
        edges = _restriction_closure(seeds, budget)
        nxt = _recurrent_part(edges)
        if nxt == current:
            return nxt
        current = nxt


def verify_nucleus(
    candidate: Iterable[Word],
    k: int,
    generators: Iterable[Word] = STANDARD_GENERATORS,
) -> bool:
    """Check the containment criterion at depth exactly ``k``: every
    depth-k iterated restriction of every product of two elements of
    S u candidate lies in the candidate set."""
    if k < 1:
        raise ValueError("k must be positive")
    cand = set(candidate)
    pool = _symmetrize(generators) | cand
    level = {a * b for a in pool for b in pool}
    for _ in range(k):
        level = {restriction(v, i) for v in level for i in (1, 2, 3)}
    return level <= cand


def contraction_depth(
    candidate: Iterable[Word],
    max_k: int = 8,
    generators: Iterable[Word] = STANDARD_GENERATORS,
) -> int | None:
    """Smallest depth ``k <= max_k`` at which :func:`verify_nucleus` holds,
    or None."""
    cand = set(candidate)
    for k in range(1, max_k + 1):
        if verify_nucleus(cand, k, generators):
            return k
    return None
