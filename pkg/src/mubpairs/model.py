"""Exact-arithmetic domain types shared by every other module.

Everything here is immutable and pure: Gaussian integers, the five-element
alphabet {0, 1, i, -1, -i}, arrays of alphabet symbols indexed by F_2^n,
and the letters/parameters of the {I, H, N} construction.

Index convention: array index bit j equals x_j, with x_0 the least
significant bit, so the identity projection maps array index directly to
sequence index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GaussianInt",
    "AlphabetSymbol",
    "ZERO",
    "ONE",
    "PLUS_I",
    "MINUS_ONE",
    "MINUS_I",
    "ArrayFunction",
    "MubLetter",
    "MubString",
    "symbol_mul",
    "inner_product",
    "delta_squared",
    "canonical_global_phase",
    "identity_projection",
    "validate_projection",
]


@dataclass(frozen=True)
class GaussianInt:
    """Complex number with integer components; all arithmetic exact."""

    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def abs_sq(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"


# Symbol codes: 0..3 are the Z4 phase exponents (value i^t), 4 is zero.
ZERO_CODE = 4

_CODE_RE = (1, 0, -1, 0, 0)
_CODE_IM = (0, 1, 0, -1, 0)
_CODE_STR = ("1", "i", "-1", "-i", "0")

# int64 lookup tables for bulk conversion of code arrays.
CODE_RE_TABLE = np.array(_CODE_RE, dtype=np.int64)
CODE_IM_TABLE = np.array(_CODE_IM, dtype=np.int64)


class AlphabetSymbol:
    """One element of {0, 1, i, -1, -i}: either zero or a Z4 phase i^t.

    The five possible symbols are interned; construct via ``AlphabetSymbol.zero()``,
    ``AlphabetSymbol.phase(t)`` or ``AlphabetSymbol.from_code(c)``.
    """

    __slots__ = ("code",)
    _instances: list["AlphabetSymbol"] = []

    def __new__(cls, code: int) -> "AlphabetSymbol":
        if cls._instances:
            return cls._instances[code]
        obj = super().__new__(cls)
        return obj

    def __init__(self, code: int):
        if not 0 <= code <= 4:
            raise ValueError(f"symbol code out of range: {code}")
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("AlphabetSymbol is immutable")

    @classmethod
    def zero(cls) -> "AlphabetSymbol":
        return cls._instances[ZERO_CODE]

    @classmethod
    def phase(cls, t: int) -> "AlphabetSymbol":
        return cls._instances[t % 4]

    @classmethod
    def from_code(cls, code: int) -> "AlphabetSymbol":
        return cls._instances[code]

    @classmethod
    def parse(cls, text: str) -> "AlphabetSymbol":
        try:
            return cls._instances[_CODE_STR.index(text.strip())]
        except ValueError:
            raise ValueError(f"not an alphabet symbol: {text!r}") from None

    @property
    def is_zero(self) -> bool:
        return self.code == ZERO_CODE

    @property
    def phase_exponent(self) -> int | None:
        """Z4 exponent t with value i^t, or None for the zero symbol."""
        return None if self.code == ZERO_CODE else self.code

    def to_gaussian(self) -> GaussianInt:
        return GaussianInt(_CODE_RE[self.code], _CODE_IM[self.code])

    def conjugate(self) -> "AlphabetSymbol":
        if self.code == ZERO_CODE:
            return self
        return self._instances[(-self.code) % 4]

    def __mul__(self, other: "AlphabetSymbol") -> "AlphabetSymbol":
        if self.code == ZERO_CODE or other.code == ZERO_CODE:
            return self._instances[ZERO_CODE]
        return self._instances[(self.code + other.code) % 4]

    def __eq__(self, other) -> bool:
        return isinstance(other, AlphabetSymbol) and self.code == other.code

    def __hash__(self) -> int:
        return hash(("AlphabetSymbol", self.code))

    def __repr__(self) -> str:
        return f"AlphabetSymbol({_CODE_STR[self.code]!r})"

    def __str__(self) -> str:
        return _CODE_STR[self.code]


AlphabetSymbol._instances = [
    AlphabetSymbol(0),
    AlphabetSymbol(1),
    AlphabetSymbol(2),
    AlphabetSymbol(3),
    AlphabetSymbol(4),
]

ONE = AlphabetSymbol.from_code(0)
PLUS_I = AlphabetSymbol.from_code(1)
MINUS_ONE = AlphabetSymbol.from_code(2)
MINUS_I = AlphabetSymbol.from_code(3)
ZERO = AlphabetSymbol.from_code(4)


def symbol_mul(a: AlphabetSymbol, b: AlphabetSymbol) -> AlphabetSymbol:
    """Product of two symbols; zero absorbs, phases add mod 4."""
    return a * b


class MubLetter(enum.Enum):
    """The three seed matrices of the dimension-2 construction."""

    I = "I"
    H = "H"
    N = "N"

    def __str__(self) -> str:
        return self.value


def _parse_letters(text: str | Iterable[MubLetter]) -> tuple[MubLetter, ...]:
    if isinstance(text, str):
        return tuple(MubLetter(c) for c in text)
    return tuple(MubLetter(x) if not isinstance(x, MubLetter) else x for x in text)


def _parse_bits(bits: str | Iterable[int]) -> tuple[int, ...]:
    if isinstance(bits, str):
        out = tuple(int(c) for c in bits)
    else:
        out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"not a bit vector: {bits!r}")
    return out


@dataclass(frozen=True)
class MubString:
    """Full parameter set of one construction run: letters u, offset r, pair index k.

    Bit j of r selects whether the swap X is applied at step j.  Strings
    parse with position 0 first, e.g. ``MubString.parse("NIH", "010")``.
    """

    u: tuple[MubLetter, ...]
    r: tuple[int, ...]
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "u", _parse_letters(self.u))
        object.__setattr__(self, "r", _parse_bits(self.r))
        if len(self.u) != len(self.r):
            raise ValueError("u and r must have equal length")
        if self.k not in (0, 1):
            raise ValueError("k must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.u)

    @classmethod
    def parse(cls, u: str, r: str, k: int = 0) -> "MubString":
        return cls(_parse_letters(u), _parse_bits(r), k)

    def u_str(self) -> str:
        return "".join(x.value for x in self.u)

    def r_str(self) -> str:
        return "".join(str(b) for b in self.r)


class ArrayFunction:
    """A map f: F_2^n -> {0, 1, i, -1, -i}, stored as 2^n symbols.

    Entry m holds f(x) for the point x with x_j = bit j of m.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Sequence[AlphabetSymbol]):
        values = tuple(values)
        if len(values) != 1 << n:
            raise ValueError(f"expected {1 << n} values, got {len(values)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("ArrayFunction is immutable")

    @classmethod
    def from_codes(cls, n: int, codes: Iterable[int]) -> "ArrayFunction":
        return cls(n, [AlphabetSymbol.from_code(c) for c in codes])

    def codes(self) -> tuple[int, ...]:
        return tuple(s.code for s in self.values)

    def __getitem__(self, x: int) -> AlphabetSymbol:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ArrayFunction)
            and self.n == other.n
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    def __repr__(self) -> str:
        return f"ArrayFunction(n={self.n}, [{', '.join(map(str, self.values))}])"

    def support(self) -> list[int]:
        return [x for x, s in enumerate(self.values) if not s.is_zero]

    def support_size(self) -> int:
        return sum(1 for s in self.values if not s.is_zero)

    def norm_sq(self) -> int:
        # every nonzero symbol is unimodular
        return self.support_size()

    def re_im(self) -> tuple[np.ndarray, np.ndarray]:
        """Exact int64 real/imaginary component vectors."""
        codes = np.fromiter((s.code for s in self.values), dtype=np.int64)
        return CODE_RE_TABLE[codes], CODE_IM_TABLE[codes]


def inner_product(f: ArrayFunction, g: ArrayFunction) -> GaussianInt:
    """Exact sum over x of f(x) * conj(g(x))."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} != {g.n}")
    acc = GaussianInt(0, 0)
    for a, b in zip(f.values, g.values):
        if a.is_zero or b.is_zero:
            continue
        acc = acc + (a * b.conjugate()).to_gaussian()
    return acc


def delta_squared(f: ArrayFunction, g: ArrayFunction) -> Fraction:
    """Normalized squared inner-product magnitude, as an exact rational."""
    nf, ng = f.norm_sq(), g.norm_sq()
    if nf == 0 or ng == 0:
        raise ValueError("delta_squared requires nonzero support")
    return Fraction(inner_product(f, g).abs_sq(), nf * ng)


def canonical_global_phase(f: ArrayFunction) -> ArrayFunction:
    """Rotate the whole array so its first nonzero entry has phase 0."""
    for s in f.values:
        if not s.is_zero:
            t = s.code
            break
    else:
        return f
    if t == 0:
        return f
    rot = AlphabetSymbol.phase(-t)
    return ArrayFunction(f.n, [v * rot for v in f.values])


def identity_projection(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def validate_projection(pi: Sequence[int], n: int) -> tuple[int, ...]:
    pi = tuple(pi)
    if len(pi) != n or sorted(pi) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {pi}")
    return pi
