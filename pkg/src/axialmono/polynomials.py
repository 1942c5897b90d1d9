"""Polynomials in (x_1, ..., x_m) with multivector coefficients.

Supplies the exact left/right Dirac operators and brute-force generation
of the homogeneous degree-k, l-vector-valued polynomials annihilated by
the Dirac operator from both sides.  All coefficients are exact
rationals; the only float operation is point evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational

import numpy as np

from .clifford import Multivector, geometric_product
from .kernels import tables

__all__ = [
    "PolyMV",
    "MonogenicBasis",
    "dirac_left",
    "dirac_right",
    "euler_check",
    "generate_pkl",
    "x_vector",
    "nullspace_fraction_free",
]


class PolyMV:
    """Multivariate polynomial with exact multivector coefficients.

    ``terms`` maps exponent tuples (a_1, ..., a_m) to exact-mode
    :class:`Multivector` coefficients; zero coefficients are never
    stored.  Treat instances as immutable.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for m={m}")
            if not isinstance(coeff, Multivector):
                raise TypeError("coefficients must be Multivector instances")
            if coeff.m != m:
                raise ValueError("coefficient dimension mismatch")
            if not coeff.exact:
                raise TypeError("PolyMV requires exact-mode coefficients")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "PolyMV":
        return cls(m, {})

    @classmethod
    def constant(cls, mv: Multivector) -> "PolyMV":
        return cls(mv.m, {(0,) * mv.m: mv})

    @classmethod
    def monomial(cls, m: int, exps, mv: Multivector) -> "PolyMV":
        return cls(m, {tuple(exps): mv})

    @classmethod
    def coordinate(cls, m: int, j: int) -> "PolyMV":
        """The scalar polynomial x_j (1-based)."""
        exps = tuple(1 if i == j - 1 else 0 for i in range(m))
        return cls(m, {exps: Multivector.scalar(m, 1)})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, k: int) -> bool:
        return all(sum(e) == k for e in self.terms)

    def is_grade_pure(self, l: int) -> bool:
        """Every coefficient lies entirely in grade l."""
        return all(c.grades() <= {l} for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, PolyMV):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"PolyMV(m={self.m}, 0)"
        parts = []
        for exps in sorted(self.terms):
            mono = "*".join(f"x{j + 1}^{e}" for j, e in enumerate(exps) if e) or "1"
            parts.append(f"({self.terms[exps]!r})*{mono}")
        return f"PolyMV(m={self.m}, {' + '.join(parts)})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyMV):
            return NotImplemented
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            if exps in out:
                out[exps] = out[exps] + coeff
            else:
                out[exps] = coeff
        return PolyMV(self.m, out)

    def __neg__(self):
        return PolyMV(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PolyMV):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Geometric product; right factor may be PolyMV, Multivector or scalar."""
        if isinstance(other, PolyMV):
            if self.m != other.m:
                raise ValueError("dimension mismatch")
            out: dict[tuple, Multivector] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    prod = geometric_product(c1, c2)
                    if exps in out:
                        out[exps] = out[exps] + prod
                    else:
                        out[exps] = prod
            return PolyMV(self.m, out)
        if isinstance(other, Multivector):
            return PolyMV(self.m, {e: geometric_product(c, other) for e, c in self.terms.items()})
        if isinstance(other, Rational):
            return PolyMV(self.m, {e: c * other for e, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return PolyMV(self.m, {e: geometric_product(other, c) for e, c in self.terms.items()})
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    # -- calculus -----------------------------------------------------

    def partial(self, j: int) -> "PolyMV":
        """Exact partial derivative d/dx_j (1-based)."""
        out = {}
        idx = j - 1
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            newexps = exps[:idx] + (e - 1,) + exps[idx + 1:]
            term = coeff * e
            if newexps in out:
                out[newexps] = out[newexps] + term
            else:
                out[newexps] = term
        return PolyMV(self.m, out)

    # -- evaluation ---------------------------------------------------

    def evaluate(self, point) -> Multivector:
        """Float evaluation at a point in R^m (the precision boundary)."""
        point = np.asarray(point, dtype=np.float64)
        if point.shape != (self.m,):
            raise ValueError(f"need a point of length {self.m}")
        n = 1 << self.m
        acc = np.zeros(n)
        for exps, coeff in self.terms.items():
            mono = 1.0
            for xj, e in zip(point, exps):
                if e:
                    mono *= xj ** e
            acc += mono * np.array([float(c) for c in coeff.coeffs])
        return Multivector.from_array(self.m, acc)

    def evaluate_exact(self, point) -> Multivector:
        """Exact evaluation at a rational point."""
        out = Multivector.zero(self.m)
        for exps, coeff in self.terms.items():
            mono = Fraction(1)
            for xj, e in zip(point, exps):
                if e:
                    mono *= Fraction(xj) ** e
            out = out + coeff * mono
        return out

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at (B, m) points; returns a (B, 2**m) coefficient array."""
        points = np.asarray(points, dtype=np.float64)
        n = 1 << self.m
        out = np.zeros((points.shape[0], n))
        for exps, coeff in self.terms.items():
            mono = np.ones(points.shape[0])
            for j, e in enumerate(exps):
                if e:
                    mono = mono * points[:, j] ** e
            out += mono[:, None] * np.array([float(c) for c in coeff.coeffs])
        return out

    # -- serialization ------------------------------------------------

    def to_json_dict(self, k: int | None = None, l: int | None = None) -> dict:
        d = {"m": self.m}
        if k is not None:
            d["k"] = k
        if l is not None:
            d["l"] = l
        d["terms"] = [
            {"exps": list(exps), "coeff": self.terms[exps].to_json_dict()["coeffs"]}
            for exps in sorted(self.terms)
        ]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "PolyMV":
        m = int(d["m"])
        terms = {}
        for entry in d["terms"]:
            coeff = Multivector.from_json_dict({"m": m, "coeffs": entry["coeff"]})
            terms[tuple(entry["exps"])] = coeff
        return cls(m, terms)


def x_vector(m: int) -> PolyMV:
    """The vector variable as a polynomial: sum_j x_j e_j."""
    terms = {}
    for j in range(m):
        exps = tuple(1 if i == j else 0 for i in range(m))
        terms[exps] = Multivector.generator(m, j + 1)
    return PolyMV(m, terms)


def dirac_left(p: PolyMV) -> PolyMV:
    """sum_j e_j (d p / d x_j), multiplying e_j from the left."""
    out = PolyMV.zero(p.m)
    for j in range(1, p.m + 1):
        ej = Multivector.generator(p.m, j)
        out = out + ej * p.partial(j)
    return out


def dirac_right(p: PolyMV) -> PolyMV:
    """sum_j (d p / d x_j) e_j, multiplying e_j from the right."""
    out = PolyMV.zero(p.m)
    for j in range(1, p.m + 1):
        ej = Multivector.generator(p.m, j)
        out = out + p.partial(j) * ej
    return out


def euler_check(p: PolyMV, k: int) -> bool:
    """Whether sum_j x_j (d p / d x_j) equals k * p exactly."""
    lhs = PolyMV.zero(p.m)
    for j in range(1, p.m + 1):
        lhs = lhs + PolyMV.coordinate(p.m, j) * p.partial(j)
    return lhs == p * k


# ---------------------------------------------------------------------
# nullspace generation of the two-sided monogenic polynomial basis
# ---------------------------------------------------------------------


def nullspace_fraction_free(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Nullspace basis of an integer matrix, fraction-free elimination.

    Bareiss one-step elimination keeps every intermediate entry an exact
    integer; back substitution runs over rationals and each basis vector
    is scaled to coprime integers with positive leading entry.  The
    pivot sweep and the free-column order are canonical, so the result
    is deterministic.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    nrows = len(mat)
    pivots: list[tuple[int, int]] = []  # (row, col)
    prev_pivot = 1
    prow = 0
    for col in range(ncols):
        sel = None
        for r in range(prow, nrows):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != prow:
            mat[prow], mat[sel] = mat[sel], mat[prow]
        piv = mat[prow][col]
        for r in range(prow + 1, nrows):
            if all(v == 0 for v in mat[r][col:]):
                continue
            head = mat[r][col]
            for c in range(col, ncols):
                mat[r][c] = (piv * mat[r][c] - head * mat[prow][c]) // prev_pivot
        pivots.append((prow, col))
        prev_pivot = piv
        prow += 1
        if prow == nrows:
            break
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, col in reversed(pivots):
            s = sum(Fraction(mat[row][c]) * vec[c] for c in range(col + 1, ncols))
            vec[col] = -s / mat[row][col]
        basis.append(_primitive_integer(vec))
    return basis


def _primitive_integer(vec: list[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers, positive leading entry."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return ints


@dataclass(frozen=True)
class MonogenicBasis:
    """Basis of the degree-k, l-vector, two-sided monogenic polynomials."""

    m: int
    k: int
    l: int
    elements: tuple[PolyMV, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "l": self.l,
            "dimension": self.dimension,
            "basis": [p.to_json_dict(k=self.k, l=self.l) for p in self.elements],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MonogenicBasis":
        elements = tuple(PolyMV.from_json_dict(p) for p in d["basis"])
        return cls(m=int(d["m"]), k=int(d["k"]), l=int(d["l"]), elements=elements)


def _monomials(m: int, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples with total degree k, ascending lexicographic."""
    out = []
    for bars in itertools.combinations(range(k + m - 1), m - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(k + m - 1 - 1 - prev)
        out.append(tuple(exps))
    return sorted(out)


def generate_pkl(m: int, k: int, l: int) -> MonogenicBasis:
    """Brute-force basis of homogeneous two-sided monogenic l-vector polynomials.

    Enumerates the monomial space {x^a e_A : |a| = k, |A| = l}, imposes
    both Dirac conditions as one exact integer linear system, and
    returns a fraction-free nullspace basis with content-1 integer
    coefficients.  An empty basis is a valid result (e.g. l > m).
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if k < 0:
        raise ValueError("need k >= 0")
    if l < 0:
        raise ValueError("need l >= 0")
    if l > m:
        return MonogenicBasis(m, k, l, ())
    monos = _monomials(m, k)
    blades = [mask for mask in range(1 << m) if mask.bit_count() == l]
    ncols = len(monos) * len(blades)
    signs = tables(m).signs
    row_index: dict[tuple, int] = {}
    rows: list[list[int]] = []

    def add_entry(key: tuple, col: int, value: int):
        r = row_index.get(key)
        if r is None:
            r = len(rows)
            row_index[key] = r
            rows.append([0] * ncols)
        rows[r][col] += value

    for mi, exps in enumerate(monos):
        for bi, mask in enumerate(blades):
            col = mi * len(blades) + bi
            for j in range(m):
                e = exps[j]
                if e == 0:
                    continue
                ej = 1 << j
                dexps = exps[:j] + (e - 1,) + exps[j + 1:]
                out_mask = ej ^ mask
                # left condition: e_j * (d/dx_j) x^a e_A
                add_entry(("L", dexps, out_mask), col, e * int(signs[ej, mask]))
                # right condition: (d/dx_j) x^a e_A * e_j
                add_entry(("R", dexps, out_mask), col, e * int(signs[mask, ej]))

    vectors = nullspace_fraction_free(rows, ncols) if rows else [
        [1 if i == c else 0 for i in range(ncols)] for c in range(ncols)
    ]
    elements = []
    for vec in vectors:
        terms: dict[tuple, Multivector] = {}
        for mi, exps in enumerate(monos):
            coeffs = {}
            for bi, mask in enumerate(blades):
                v = vec[mi * len(blades) + bi]
                if v:
                    coeffs[mask] = v
            if coeffs:
                terms[exps] = Multivector(m, coeffs)
        elements.append(PolyMV(m, terms))
    return MonogenicBasis(m, k, l, tuple(elements))
