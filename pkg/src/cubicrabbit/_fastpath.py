"""Compiled letter-level kernels for classifying very long words.

The pure-Python classifiers in :mod:`cubicrabbit.wreath` and
:mod:`cubicrabbit.prefix` are the reference implementations; these kernels
re-express the same passes over flat int8 letter arrays so that sweeps like
"classify x^m for every |m| <= 10^5" finish in seconds instead of hours.
The test suite asserts kernel/reference agreement on full balls, random long
words, and power words.

Letter codes: x = 1, x^-1 = -1, z = 2, z^-1 = -2 (inverse = negation).
"""

from __future__ import annotations

import numpy as np

from .errors import InternalInconsistencyError
from .words import Word

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - environment without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_CODE = {("x", 1): 1, ("x", -1): -1, ("z", 1): 2, ("z", -1): -2}
_GEN_OF = {1: "x", -1: "x", 2: "z", -2: "z"}


def word_to_letters(w: Word) -> np.ndarray:
    parts = [
        np.full(abs(e), (1 if g == "x" else 2) * (1 if e > 0 else -1), dtype=np.int8)
        for g, e in w.syllables
    ]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int8)


def letters_to_word(arr: np.ndarray) -> Word:
    syls: list[tuple[str, int]] = []
    for code in arr:
        c = int(code)
        gen = _GEN_OF[c]
        sign = 1 if c > 0 else -1
        if syls and syls[-1][0] == gen:
            syls[-1] = (gen, syls[-1][1] + sign)
        else:
            syls.append((gen, sign))
    return Word(syls)


@njit(cache=True)
def _psi_bar_letters(w):  # pragma: no cover - exercised via wrappers
    """One psi_bar step on a reduced letter array; output is reduced."""
    n = w.size
    tot = 0
    for t in range(n):
        c = w[t]
        if c == 1:
            tot += 1
        elif c == -1:
            tot -= 1
    tot = tot % 3
    out = np.empty(2 * n + 1, np.int8)
    m = 0
    s = tot  # x-exponent of the suffix starting at the current letter
    for t in range(n):
        c = w[t]
        if c == 1:
            s = (s + 2) % 3
            if s == 1:  # this letter sees index 3 and contributes x^-1 z^-1
                if m > 0 and out[m - 1] == 1:
                    m -= 1
                else:
                    out[m] = -1
                    m += 1
                if m > 0 and out[m - 1] == 2:
                    m -= 1
                else:
                    out[m] = -2
                    m += 1
        elif c == -1:
            s = (s + 1) % 3
            if s == 2:  # index 2: contributes z x
                if m > 0 and out[m - 1] == -2:
                    m -= 1
                else:
                    out[m] = 2
                    m += 1
                if m > 0 and out[m - 1] == -1:
                    m -= 1
                else:
                    out[m] = 1
                    m += 1
        elif c == 2:
            if s == 0:  # index 1: z restricts to x
                if m > 0 and out[m - 1] == -1:
                    m -= 1
                else:
                    out[m] = 1
                    m += 1
        else:
            if s == 0:
                if m > 0 and out[m - 1] == 1:
                    m -= 1
                else:
                    out[m] = -1
                    m += 1
    if tot == 1:
        if m > 0 and out[m - 1] == -1:
            m -= 1
        else:
            out[m] = 1
            m += 1
    elif tot == 2:
        if m > 0 and out[m - 1] == 1:
            m -= 1
        else:
            out[m] = -1
            m += 1
    return out[:m].copy()


@njit(cache=True)
def _contract_letters(w):  # pragma: no cover - exercised via wrappers
    """Iterate psi_bar until fewer than 8 letters remain."""
    limit = 4 * w.size + 64
    steps = 0
    cur = w
    while cur.size >= 8:
        steps += 1
        if steps > limit:
            return np.full(1, 99, np.int8)  # sentinel: bound exceeded
        cur = _psi_bar_letters(cur)
    return cur


@njit(cache=True)
def _prefix_classify_letters(letters):  # pragma: no cover - via wrappers
    """Run the prefix rewriting system to its fixed point.

    Returns 0..3 for R3, coR3, A3, coA3; -1 for a fixed point outside the
    terminal table; -2 for a step overrun.  The word lives in a circular
    buffer since rules only touch its two ends; runs of x^3 are stripped in
    batches, which coincides with repeated single steps.
    """
    n0 = letters.size
    if n0 == 0:
        return 0
    cap = 1
    while cap < n0 + 8:
        cap <<= 1
    mask = cap - 1
    buf = np.empty(cap, np.int8)
    buf[:n0] = letters
    head = 0
    length = n0
    max_steps = 10 * n0 + 100
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            return -2
        if length == 0:
            return 0
        a = buf[(head + length - 1) & mask]
        if a == 2 or a == -2:
            # lift a trailing z^d, prepending x^d
            length -= 1
            d = 1 if a > 0 else -1
            if length > 0 and buf[head & mask] == -d:
                head += 1
                length -= 1
            else:
                head -= 1
                buf[head & mask] = d
                length += 1
            continue
        # trailing letter is x^eps with eps = a
        matched = False
        if length >= 3:
            b = buf[(head + length - 2) & mask]
            c = buf[(head + length - 3) & mask]
            if (b == 2 or b == -2) and c == -a:
                # conjugate x^-eps z^d x^eps lifts trivially
                length -= 3
                matched = True
            elif b == a and (c == 2 or c == -2):
                if length >= 4:
                    d4 = buf[(head + length - 4) & mask]
                    length -= 4
                    if d4 == a:
                        # x^eps z^d x^2eps: prepend y^eps
                        if a > 0:
                            p1, p2 = -2, -1
                        else:
                            p1, p2 = 1, 2
                        if length > 0 and buf[head & mask] == -p1:
                            head += 1
                            length -= 1
                        else:
                            head -= 1
                            buf[head & mask] = p1
                            length += 1
                        if length > 0 and buf[head & mask] == -p2:
                            head += 1
                            length -= 1
                        else:
                            head -= 1
                            buf[head & mask] = p2
                            length += 1
                    elif d4 == -a:
                        # x^-eps z^d x^2eps: append x^eps
                        if length > 0 and buf[(head + length - 1) & mask] == -a:
                            length -= 1
                        else:
                            buf[(head + length) & mask] = a
                            length += 1
                    else:
                        # z^d z^d x^2eps: prepend y^eps, append x^-eps
                        if a > 0:
                            p1, p2 = -2, -1
                        else:
                            p1, p2 = 1, 2
                        if length > 0 and buf[head & mask] == -p1:
                            head += 1
                            length -= 1
                        else:
                            head -= 1
                            buf[head & mask] = p1
                            length += 1
                        if length > 0 and buf[head & mask] == -p2:
                            head += 1
                            length -= 1
                        else:
                            head -= 1
                            buf[head & mask] = p2
                            length += 1
                        if length > 0 and buf[(head + length - 1) & mask] == a:
                            length -= 1
                        else:
                            buf[(head + length) & mask] = -a
                            length += 1
                    matched = True
            elif b == a and c == a:
                # x^3eps at the end; strip whole multiples of three in a batch
                run = 3
                while run < length and buf[(head + length - 1 - run) & mask] == a:
                    run += 1
                reps = run // 3
                length -= 3 * reps
                if a > 0:
                    p1, p2 = -2, -1
                else:
                    p1, p2 = 1, 2
                for _ in range(reps):
                    if length > 0 and buf[head & mask] == -p1:
                        head += 1
                        length -= 1
                    else:
                        head -= 1
                        buf[head & mask] = p1
                        length += 1
                    if length > 0 and buf[head & mask] == -p2:
                        head += 1
                        length -= 1
                    else:
                        head -= 1
                        buf[head & mask] = p2
                        length += 1
                matched = True
        if not matched and length >= 2:
            b = buf[(head + length - 2) & mask]
            if b == 2 or b == -2:
                # z^d x^eps becomes x^eps after borrowing
                length -= 2
                if length > 0 and buf[(head + length - 1) & mask] == -a:
                    length -= 1
                else:
                    buf[(head + length) & mask] = a
                    length += 1
                matched = True
        if matched:
            continue
        # no rule applies: terminal table or error
        if length >= 4:
            return -1
        if length == 1:
            if a == 1:
                return 2
            if a == -1:
                return 1
            return -1
        if length == 2:
            b = buf[(head + length - 2) & mask]
            if b == a and (a == 1 or a == -1):
                return 3
            return -1
        # length == 3
        b = buf[(head + length - 2) & mask]
        c = buf[(head + length - 3) & mask]
        if (c == 2 or c == -2) and b == a and (a == 1 or a == -1):
            return 3
        return -1


def contract_whole_word(w: Word) -> Word:
    """psi_bar-iterate ``w`` down to fewer than 8 letters."""
    out = _contract_letters(word_to_letters(w))
    if out.size == 1 and out[0] == 99:
        raise InternalInconsistencyError(
            f"psi_bar contraction of a length-{len(w)} word exceeded its bound"
        )
    return letters_to_word(out)


def psi_bar_letterwise(w: Word) -> Word:
    """Single psi_bar step via the kernel (reference cross-check hook)."""
    return letters_to_word(_psi_bar_letters(word_to_letters(w)))


_PREFIX_CODES = {0: "R3", 1: "CoR3", 2: "A3", 3: "CoA3"}


def prefix_classify(w: Word) -> str:
    """Terminal class name from the prefix kernel; raises on bad outcomes."""
    code = int(_prefix_classify_letters(word_to_letters(w)))
    if code == -1:
        raise InternalInconsistencyError(
            f"prefix rewriting fixed a word outside the terminal table ({w!r})"
        )
    if code == -2:
        raise InternalInconsistencyError(
            f"prefix rewriting of a length-{len(w)} word exceeded its step bound"
        )
    return _PREFIX_CODES[code]


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (first call is slow)."""
    arr = np.array([1, 1, 1, 1, 2, -1, 1, 1, 1], dtype=np.int8)
    _contract_letters(arr)
    _prefix_classify_letters(arr)
