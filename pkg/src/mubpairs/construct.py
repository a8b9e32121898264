"""Build complementary arrays three ways.

* the closed-form generalized Boolean function of the full parameter set,
* the literal 2x2 matrix recursion it summarizes,
* the generic one-step polynomial composition (see :mod:`mubpairs.polynomial`).

Also derives the structure vectors (p, l, s, q, b, t) of a letter string,
the mod-2 offset vector w derived from r, the deduplicated set of all
constructed arrays for a given dimension, and an exhaustive experiment
searching {0, 1, -1} arrays for complementary partners.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .model import (
    AlphabetSymbol,
    ArrayFunction,
    GaussianInt,
    MubLetter,
    MubString,
    ZERO_CODE,
)

__all__ = [
    "StructureVectors",
    "structure_vectors",
    "offset_vector",
    "closed_form",
    "closed_form_codes",
    "closed_form_codes_all_r",
    "matrix_recursion",
    "build_array_set",
    "brute_force_ceiling",
    "ConjectureReport",
    "conjecture_check",
    "all_mub_strings",
]

DEFAULT_BRUTE_CEILING = 6
CEILING_ENV_VAR = "MUBPAIRS_BRUTE_CEILING"


def brute_force_ceiling() -> int:
    """Exhaustive-enumeration cap; override with MUBPAIRS_BRUTE_CEILING."""
    raw = os.environ.get(CEILING_ENV_VAR)
    return int(raw) if raw else DEFAULT_BRUTE_CEILING


@dataclass(frozen=True)
class StructureVectors:
    """Index vectors describing one letter string u of length n.

    p: positions with a non-I letter (ascending); l: positions with N;
    s: positions with I; q maps each position to the next non-I position
    after it (or n); b marks the t trailing I positions.
    """

    n: int
    p: tuple[int, ...]
    l: tuple[int, ...]
    s: tuple[int, ...]
    q: tuple[int, ...]
    b: tuple[int, ...]
    t: int


def structure_vectors(u: Sequence[MubLetter] | str) -> StructureVectors:
    if isinstance(u, str):
        u = tuple(MubLetter(c) for c in u)
    n = len(u)
    p = tuple(j for j, x in enumerate(u) if x is not MubLetter.I)
    l = tuple(j for j, x in enumerate(u) if x is MubLetter.N)
    s = tuple(j for j, x in enumerate(u) if x is MubLetter.I)
    q = []
    nxt = n
    for j in range(n - 1, -1, -1):
        q.append(nxt)
        if u[j] is not MubLetter.I:
            nxt = j
    q.reverse()
    t = n - 1 - p[-1] if p else n
    b = tuple(1 if j >= n - t else 0 for j in range(n))
    return StructureVectors(n, p, l, s, tuple(q), b, t)


def offset_vector(u: Sequence[MubLetter] | str, r: Sequence[int]) -> tuple[int, ...]:
    """Mod-2 offset vector w with w(i) = sum of r(h) for i <= h < q(i).

    The summation range is inclusive of i itself; this is the reading under
    which the closed form reproduces the matrix recursion exactly, and it
    makes r -> w a bijection for every fixed u.
    """
    sv = structure_vectors(u)
    if len(r) != sv.n:
        raise ValueError("u and r must have equal length")
    w = []
    for i in range(sv.n):
        acc = 0
        for h in range(i, sv.q[i]):
            acc ^= r[h]
        w.append(acc)
    return tuple(w)


def closed_form(params: MubString) -> ArrayFunction:
    """Evaluate the closed-form function of (u, r, k) at every x in F_2^n."""
    return ArrayFunction.from_codes(params.n, closed_form_codes(params))


def closed_form_codes(params: MubString) -> list[int]:
    """Symbol codes of the closed form, index m holding f(x) with x_j = bit j of m."""
    n = params.n
    sv = structure_vectors(params.u)
    w = offset_vector(params.u, params.r)
    k = params.k
    p, l, s, q, b = sv.p, sv.l, sv.s, sv.q, sv.b

    def bit(m: int, j: int) -> int:
        return 0 if j >= n else (m >> j) & 1  # x_n = 0 boundary

    codes = []
    for m in range(1 << n):
        alive = True
        for j in s:
            if (bit(m, j) ^ bit(m, q[j]) ^ (k & b[j]) ^ w[j]) != 0:
                alive = False
                break
        if not alive:
            codes.append(ZERO_CODE)
            continue
        quad = 0
        for a, c in zip(p, p[1:]):
            quad ^= bit(m, a) & bit(m, c)
        lin = sum(w[j] & bit(m, j) for j in p)
        kterm = (k & bit(m, p[-1])) if p else 0  # p(-1) = n, x_n = 0
        t4 = 2 * (kterm ^ quad) + 2 * lin + sum(bit(m, j) for j in l)
        codes.append(t4 % 4)
    return codes


def closed_form_codes_all_r(
    u: Sequence[MubLetter] | str, k: int
) -> np.ndarray:
    """Vectorized closed form over every offset r at once.

    Returns an int8 matrix of symbol codes with shape (2^n, 2^n); row index
    is r read as an integer (bit j = r(j)), column index is the point x.
    """
    if isinstance(u, str):
        u = tuple(MubLetter(c) for c in u)
    n = len(u)
    sv = structure_vectors(u)
    size = 1 << n

    # X[m, j] = bit j of m; one extra all-zero column for the x_n boundary.
    m = np.arange(size, dtype=np.int64)
    X = np.zeros((size, n + 1), dtype=np.int64)
    for j in range(n):
        X[:, j] = (m >> j) & 1

    # W[rv, i] = xor of r bits in [i, q(i)); rows indexed by the integer rv.
    R = X[:, :n]
    W = np.zeros((size, n), dtype=np.int64)
    for i in range(n):
        span = R[:, i : sv.q[i]]
        W[:, i] = np.bitwise_xor.reduce(span, axis=1) if span.shape[1] else 0

    alive = np.ones((size, size), dtype=bool)  # (r, x)
    for j in sv.s:
        parity = (X[:, j] ^ X[:, sv.q[j]])[None, :] ^ (k & sv.b[j]) ^ W[:, j][:, None]
        alive &= parity == 0

    quad = np.zeros(size, dtype=np.int64)
    for a, c in zip(sv.p, sv.p[1:]):
        quad ^= X[:, a] & X[:, c]
    kterm = (k & X[:, sv.p[-1]]) if sv.p else np.zeros(size, dtype=np.int64)
    lin = W[:, sv.p] @ X[:, sv.p].T if sv.p else np.zeros((size, size), dtype=np.int64)
    z4 = X[:, sv.l].sum(axis=1) if sv.l else np.zeros(size, dtype=np.int64)
    t4 = (2 * ((kterm ^ quad)[None, :] + lin) + z4[None, :]) % 4

    codes = np.where(alive, t4, ZERO_CODE).astype(np.int8)
    return codes


# Unnormalized seed matrices with exact Gaussian-integer entries.
_G = GaussianInt
_MATRICES = {
    MubLetter.I: ((_G(1), _G(0)), (_G(0), _G(1))),
    MubLetter.H: ((_G(1), _G(1)), (_G(1), _G(-1))),
    MubLetter.N: ((_G(1), _G(0, 1)), (_G(1), _G(0, -1))),
}


def matrix_recursion(params: MubString) -> tuple[ArrayFunction, ArrayFunction]:
    """Iterate F_j = P_j U_j V_j(z_j) F_{j-1} from F_{-1} = (1, 1)^T.

    Returns the coefficient arrays of both components (k = 0 and k = 1).
    Entries always land back in the alphabet because V_j splits supports
    before U_j mixes them.
    """
    comp0 = [GaussianInt(1)]
    comp1 = [GaussianInt(1)]
    zero = GaussianInt(0)
    for j in range(params.n):
        half = 1 << j
        a = comp0 + [zero] * half          # V_j leaves component 0 alone
        b = [zero] * half + comp1          # and multiplies component 1 by z_j
        mat = _MATRICES[params.u[j]]
        comp0 = [mat[0][0] * x + mat[0][1] * y for x, y in zip(a, b)]
        comp1 = [mat[1][0] * x + mat[1][1] * y for x, y in zip(a, b)]
        if params.r[j]:
            comp0, comp1 = comp1, comp0
    return _coeffs_to_array(params.n, comp0), _coeffs_to_array(params.n, comp1)


_GAUSS_TO_CODE = {
    (1, 0): 0,
    (0, 1): 1,
    (-1, 0): 2,
    (0, -1): 3,
    (0, 0): ZERO_CODE,
}


def _coeffs_to_array(n: int, coeffs: list[GaussianInt]) -> ArrayFunction:
    try:
        codes = [_GAUSS_TO_CODE[(c.re, c.im)] for c in coeffs]
    except KeyError as exc:
        raise ValueError(f"recursion produced a non-alphabet coefficient: {exc}")
    return ArrayFunction.from_codes(n, codes)


def all_mub_strings(n: int, letters: str = "IHN") -> Iterable[tuple[MubLetter, ...]]:
    """Every length-n letter string over the given subset, lexicographically."""
    alphabet = tuple(MubLetter(c) for c in letters)
    return product(alphabet, repeat=n)


def build_array_set(n: int, ceiling: int | None = None) -> set[ArrayFunction]:
    """All distinct k=0 arrays over every (u, r), exact symbol-wise dedup.

    The closed form is already canonical (first nonzero entry has phase 0),
    so plain equality deduplicates correctly.
    """
    if ceiling is None:
        ceiling = brute_force_ceiling()
    if n > ceiling:
        raise ValueError(f"n={n} exceeds brute-force ceiling {ceiling}")
    out: set[ArrayFunction] = set()
    for u in all_mub_strings(n):
        codes = closed_form_codes_all_r(u, k=0)
        for row in codes:
            out.add(ArrayFunction.from_codes(n, row.tolist()))
    return out


@dataclass
class ConjectureReport:
    """Outcome of the exhaustive {0, 1, -1} complementary-partner search."""

    n: int
    arrays_scanned: int
    type_i_count: int
    matched_count: int
    counterexamples: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _ternary_arrays(n: int) -> Iterable[tuple[int, ...]]:
    # symbol codes restricted to {0 -> "1", 2 -> "-1", 4 -> "0"}
    return product((0, 2, ZERO_CODE), repeat=1 << n)


def _autocorr_key(codes: Sequence[int], n: int) -> tuple[tuple[int, int], ...]:
    """Exact array autocorrelation, flattened over base-3 lag codes.

    Only usable for tiny n; the search spaces below are 3^(2^n).
    """
    size = 1 << n
    c3 = [sum(((x >> j) & 1) * 3**j for j in range(n)) for x in range(size)]
    acc_re = [0] * 3**n
    acc_im = [0] * 3**n
    zero_off = (3**n - 1) // 2
    re = [(1, 0, -1, 0, 0)[c] for c in codes]
    im = [(0, 1, 0, -1, 0)[c] for c in codes]
    for x in range(size):
        if re[x] == 0 and im[x] == 0:
            continue
        for y in range(size):
            if re[y] == 0 and im[y] == 0:
                continue
            idx = c3[x] - c3[y] + zero_off
            acc_re[idx] += re[x] * re[y] + im[x] * im[y]
            acc_im[idx] += im[x] * re[y] - re[x] * im[y]
    return tuple(zip(acc_re, acc_im))


def conjecture_check(n: int, ceiling: int = 3) -> ConjectureReport:
    """Search all {0, 1, -1} arrays for complementary partners over the same
    alphabet, and test whether each such array matches the constructed
    closed forms with letters restricted to {I, H}.

    Matching is up to a global sign (first nonzero entry rotated to +1),
    consistent with how arrays are deduplicated everywhere else.  A mismatch
    is reported as a counterexample, never asserted away.
    """
    if n > ceiling:
        raise ValueError(f"n={n} exceeds ceiling {ceiling} (search is 3^(2^n))")

    zero_off = (3**n - 1) // 2
    candidates = []
    # Off-zero lag profiles of every nonzero array; a partner for f exists
    # iff the negation of f's profile appears here (lag 0 carries only norms).
    off_profiles: set[tuple] = set()
    for codes in _ternary_arrays(n):
        if all(c == ZERO_CODE for c in codes):
            continue
        key = _autocorr_key(codes, n)
        candidates.append((codes, key))
        off_profiles.add(
            tuple(v for i, v in enumerate(key) if i != zero_off)
        )

    constructed = set()
    for u in all_mub_strings(n, "IH"):
        codes = closed_form_codes_all_r(u, k=0)
        for row in codes:
            constructed.add(_canonical_sign(tuple(row.tolist())))

    type_i = 0
    matched = 0
    counterexamples = []
    for codes, key in candidates:
        prof = tuple(
            (-re, -im) for i, (re, im) in enumerate(key) if i != zero_off
        )
        if prof not in off_profiles:
            continue
        type_i += 1
        if _canonical_sign(codes) in constructed:
            matched += 1
        else:
            counterexamples.append(codes)

    return ConjectureReport(
        n=n,
        arrays_scanned=len(candidates),
        type_i_count=type_i,
        matched_count=matched,
        counterexamples=counterexamples,
    )


def _canonical_sign(codes: tuple[int, ...]) -> tuple[int, ...]:
    for c in codes:
        if c != ZERO_CODE:
            if c == 0:
                return codes
            # real alphabet: the only other phase is -1; flip every entry
            return tuple(
                ZERO_CODE if v == ZERO_CODE else (v + 2) % 4 for v in codes
            )
    return codes
