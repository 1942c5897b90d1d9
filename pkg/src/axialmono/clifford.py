"""Exact and float arithmetic in the real Clifford algebra with e_j^2 = -1.

Blades are m-bit masks; a multivector stores a dense coefficient vector
over all 2**m blades.  Two coefficient modes exist and never mix
silently:

* exact mode - Python rationals (``int`` / ``fractions.Fraction``);
  mandatory wherever the algebra must be exact (polynomial nullspaces,
  series arithmetic);
* float mode - a numpy float64 vector; used for grid evaluation, with
  products dispatched to the compiled kernel when available.

Conversion is explicit via :meth:`Multivector.to_float`, which is the
single precision boundary of the package.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

from .kernels import MAX_DIM, blade_sign, gp_floats, tables

__all__ = [
    "Multivector",
    "blade_product",
    "geometric_product",
    "grade_project",
    "sandwich_sum",
    "grade",
]


def grade(mask: int) -> int:
    """Number of generators in a blade mask."""
    return mask.bit_count()


def blade_product(a: int, b: int, m: int) -> tuple[int, int]:
    """Product of two basis blades: returns ``(sign, result_mask)``.

    ``a`` and ``b`` are bit masks (bit j-1 set iff e_j present); the
    result mask is ``a ^ b`` and the sign counts transpositions plus one
    -1 per repeated generator.
    """
    if not 1 <= m <= MAX_DIM:
        raise ValueError(f"dimension m={m} outside [1, {MAX_DIM}]")
    top = 1 << m
    if not (0 <= a < top and 0 <= b < top):
        raise ValueError(f"blade masks {a}, {b} do not fit in m={m} bits")
    return blade_sign(a, b), a ^ b


def _mask_key(mask: int) -> str:
    """JSON key: comma-joined ascending 1-based generator indices."""
    return ",".join(str(j + 1) for j in range(mask.bit_length()) if mask >> j & 1)


def _key_mask(key: str, m: int) -> int:
    if key == "":
        return 0
    mask = 0
    for part in key.split(","):
        j = int(part)
        if not 1 <= j <= m:
            raise ValueError(f"generator index {j} outside 1..{m}")
        bit = 1 << (j - 1)
        if mask & bit:
            raise ValueError(f"repeated generator index {j} in key {key!r}")
        mask |= bit
    return mask


class Multivector:
    """Dense element of the 2**m-dimensional algebra.

    Treat instances as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("m", "exact", "coeffs")

    def __init__(self, m: int, coeffs, exact: bool = True):
        if not 1 <= m <= MAX_DIM:
            raise ValueError(f"dimension m={m} outside [1, {MAX_DIM}]")
        n = 1 << m
        self.m = m
        self.exact = bool(exact)
        if isinstance(coeffs, dict):
            if self.exact:
                full = [0] * n
                for mask, c in coeffs.items():
                    full[mask] = _check_rational(c)
                self.coeffs = full
            else:
                full = np.zeros(n)
                for mask, c in coeffs.items():
                    full[mask] = float(c)
                self.coeffs = full
        else:
            if len(coeffs) != n:
                raise ValueError(f"need {n} coefficients for m={m}, got {len(coeffs)}")
            if self.exact:
                self.coeffs = [_check_rational(c) for c in coeffs]
            else:
                self.coeffs = np.asarray(coeffs, dtype=np.float64).copy()

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int, exact: bool = True) -> "Multivector":
        return cls(m, {}, exact=exact)

    @classmethod
    def scalar(cls, m: int, value, exact: bool = True) -> "Multivector":
        return cls(m, {0: value}, exact=exact)

    @classmethod
    def blade(cls, m: int, mask: int, coeff=1, exact: bool = True) -> "Multivector":
        if not 0 <= mask < (1 << m):
            raise ValueError(f"blade mask {mask} does not fit in m={m} bits")
        return cls(m, {mask: coeff}, exact=exact)

    @classmethod
    def generator(cls, m: int, j: int, exact: bool = True) -> "Multivector":
        """The basis vector e_j, 1-based."""
        if not 1 <= j <= m:
            raise ValueError(f"generator index {j} outside 1..{m}")
        return cls.blade(m, 1 << (j - 1), exact=exact)

    @classmethod
    def from_vector(cls, m: int, comps, exact: bool = True) -> "Multivector":
        """1-vector with components (c_1, ..., c_m)."""
        if len(comps) != m:
            raise ValueError(f"need {m} vector components, got {len(comps)}")
        return cls(m, {1 << j: c for j, c in enumerate(comps)}, exact=exact)

    @classmethod
    def from_array(cls, m: int, arr: np.ndarray) -> "Multivector":
        return cls(m, arr, exact=False)

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        if self.exact:
            return all(c == 0 for c in self.coeffs)
        return not np.any(self.coeffs)

    def nonzero_items(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def grades(self) -> set[int]:
        return {grade(i) for i, c in enumerate(self.coeffs) if c}

    def grade_project(self, k: int) -> "Multivector":
        if not 0 <= k <= self.m:
            raise ValueError(f"grade {k} outside 0..{self.m}")
        if self.exact:
            out = {i: c for i, c in enumerate(self.coeffs) if c and grade(i) == k}
            return Multivector(self.m, out, exact=True)
        mask = tables(self.m).grades == k
        return Multivector(self.m, np.where(mask, self.coeffs, 0.0), exact=False)

    def scalar_part(self):
        return self.coeffs[0]

    def norm(self) -> float:
        """Euclidean norm over the 2**m blade coefficients."""
        if self.exact:
            return float(np.sqrt(float(sum(Fraction(c) ** 2 for c in self.coeffs))))
        return float(np.linalg.norm(self.coeffs))

    def to_float(self) -> "Multivector":
        if not self.exact:
            return self
        return Multivector(self.m, [float(c) for c in self.coeffs], exact=False)

    # -- arithmetic ---------------------------------------------------

    def _require_compatible(self, other: "Multivector"):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: m={self.m} vs m={other.m}")
        if self.exact != other.exact:
            raise ValueError("cannot mix exact and float multivectors; convert explicitly")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._require_compatible(other)
        if self.exact:
            return Multivector(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        return Multivector(self.m, self.coeffs + other.coeffs, exact=False)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._require_compatible(other)
        if self.exact:
            return Multivector(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])
        return Multivector(self.m, self.coeffs - other.coeffs, exact=False)

    def __neg__(self):
        if self.exact:
            return Multivector(self.m, [-c for c in self.coeffs])
        return Multivector(self.m, -self.coeffs, exact=False)

    def _scale(self, s):
        if self.exact:
            s = _check_rational(s)
            return Multivector(self.m, [s * c for c in self.coeffs])
        return Multivector(self.m, self.coeffs * float(s), exact=False)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (Rational, float, np.floating)):
            return self._scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Rational, float, np.floating)):
            return self._scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.m != other.m or self.exact != other.exact:
            return False
        if self.exact:
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        if not self.exact:
            raise TypeError("float-mode multivectors are not hashable")
        return hash((self.m, tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self):
        items = self.nonzero_items()
        if not items:
            return f"Multivector(m={self.m}, 0)"
        parts = []
        for mask, c in items:
            blade = "e" + _mask_key(mask).replace(",", "") if mask else "1"
            parts.append(f"{c}*{blade}")
        return f"Multivector(m={self.m}, {' + '.join(parts)})"

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        coeffs = {}
        for mask, c in self.nonzero_items():
            if self.exact:
                coeffs[_mask_key(mask)] = str(Fraction(c))
            else:
                coeffs[_mask_key(mask)] = format(float(c), ".17g")
        return {"m": self.m, "coeffs": coeffs}

    @classmethod
    def from_json_dict(cls, d: dict, exact: bool = True) -> "Multivector":
        m = int(d["m"])
        conv = Fraction if exact else float
        coeffs = {_key_mask(k, m): conv(v) for k, v in d["coeffs"].items()}
        return cls(m, coeffs, exact=exact)


def _check_rational(c):
    if isinstance(c, Rational):
        return c
    raise TypeError(
        f"exact-mode coefficient must be a rational number, got {type(c).__name__}"
    )


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    """Bilinear extension of the blade product."""
    x._require_compatible(y)
    tab = tables(x.m)
    if not x.exact:
        return Multivector(x.m, gp_floats(x.coeffs, y.coeffs, tab), exact=False)
    out = [0] * tab.n
    signs = tab.signs
    ynz = y.nonzero_items()
    for i, cx in x.nonzero_items():
        row = signs[i]
        for j, cy in ynz:
            if row[j] > 0:
                out[i ^ j] += cx * cy
            else:
                out[i ^ j] -= cx * cy
    return Multivector(x.m, out)


def grade_project(x: Multivector, k: int) -> Multivector:
    return x.grade_project(k)


def sandwich_sum(p: Multivector) -> Multivector:
    """sum_j e_j p e_j over all generators.

    For a pure l-vector this equals (-1)**l * (2l - m) * p.
    """
    out = Multivector.zero(p.m, exact=p.exact)
    for j in range(1, p.m + 1):
        ej = Multivector.generator(p.m, j, exact=p.exact)
        out = out + ej * p * ej
    return out
