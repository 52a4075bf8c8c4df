"""Exact integer linear algebra and rational polynomial arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class ChainComplexError(ValueError):
    pass


class NotEventuallyPolynomial(ValueError):
    pass


# -- integer matrices ----------------------------------------------------------


class IntegerMatrix:
    """Integer matrix stored column-wise as ``{row: value}`` dicts.

    Boundary matrices of cube complexes are extremely sparse, so columns
    only hold their nonzero entries.
    """

    __slots__ = ("nrows", "ncols", "columns")

    def __init__(self, nrows: int, ncols: int, columns=None):
        self.nrows = nrows
        self.ncols = ncols
        if columns is None:
            columns = [{} for _ in range(ncols)]
        if len(columns) != ncols:
            raise ValueError("column count mismatch")
        self.columns = [{r: int(v) for r, v in col.items() if v} for col in columns]
        for col in self.columns:
            for r in col:
                if not 0 <= r < nrows:
                    raise ValueError(f"row index {r} out of range")

    @classmethod
    def from_dense(cls, rows) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        cols = [{i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, b in col.items():
                for i, a in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append({i: v for i, v in acc.items() if v})
        return IntegerMatrix(self.nrows, other.ncols, cols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self):
        return f"IntegerMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class SmithForm:
    factors: tuple[int, ...]  # nonzero invariant factors, d1 | d2 | ...

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def _dense_invariant_factors(a: list[list[int]]) -> list[int]:
    """Diagonalise a small dense matrix; pivot on the smallest |entry|."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it in
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                        best = (i, t, a[i][t])
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                        best = (t, j, a[t][j])
                i, j, _ = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rb, rt = a[bad], a[t]
            for k in range(t, n):
                rt[k] += rb[k]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Invariant factors of ``m``.

    Unit pivots are eliminated sparsely first (shortest row wins a tie),
    which leaves the invariant factors unchanged; whatever remains is
    small and is finished densely.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for j, col in enumerate(m.columns):
        if col:
            cols[j] = set(col)
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            rs = cols.get(c)
            if rs is None:
                continue
            if not rs:
                del cols[c]
                continue
            best = None
            for r in rs:
                v = rows[r][c]
                if v == 1 or v == -1:
                    key = (len(rows[r]), r)
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                continue
            p = best[1]
            prow = rows.pop(p)
            s = prow[c]
            for cc in prow:
                cols[cc].discard(p)
            for r in list(cols[c]):
                row = rows[r]
                f = row[c] * s
                for cc, x in prow.items():
                    y = row.get(cc, 0) - f * x
                    if y:
                        if cc not in row:
                            cols[cc].add(r)
                        row[cc] = y
                    else:
                        if cc in row:
                            del row[cc]
                            cols[cc].discard(r)
                if not row:
                    del rows[r]
            del cols[c]
            units += 1
            progress = True
    rest_rows = sorted(r for r, row in rows.items() if row)
    rest_cols = sorted(c for c, rs in cols.items() if rs)
    dense = [[rows[r].get(c, 0) for c in rest_cols] for r in rest_rows]
    tail = _dense_invariant_factors(dense) if dense and rest_cols else []
    factors = [1] * units + sorted(tail)
    return SmithForm(tuple(factors))


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d) -> "HomologyGroup":
        return cls(d["rank"], tuple(d["torsion"]))


def homology_of(dims, boundaries) -> list[HomologyGroup]:
    """Homology of a chain complex.

    ``dims[i]`` is the number of i-cells and ``boundaries[i]`` the matrix
    of the map from i-chains to (i-1)-chains (``boundaries[0]`` is ignored).
    """
    top = len(dims) - 1
    bnd = {}
    for i in range(1, top + 1):
        b = boundaries[i]
        if b.shape != (dims[i - 1], dims[i]):
            raise ChainComplexError(f"boundary {i} has shape {b.shape}, expected {(dims[i - 1], dims[i])}")
        bnd[i] = b
    for i in range(2, top + 1):
        if not (bnd[i - 1] @ bnd[i]).is_zero():
            raise ChainComplexError("not a chain complex")
    snf = {i: smith_normal_form(b) for i, b in bnd.items()}
    out = []
    for i in range(top + 1):
        rank_out = snf[i].rank if i in snf else 0
        rank_in = snf[i + 1].rank if i + 1 in snf else 0
        torsion = snf[i + 1].torsion if i + 1 in snf else ()
        out.append(HomologyGroup(dims[i] - rank_out - rank_in, torsion))
    return out


# -- polynomials -----------------------------------------------------------------


class QPolynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "QPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def binomial(cls, shift: int, k: int) -> "QPolynomial":
        """``C(x + shift, k)`` as a polynomial in ``x``.

        Built from the falling factorial, so small arguments evaluate to
        the polynomial value (possibly 0 or negative), not a table lookup.
        """
        if k < 0:
            return cls()
        p = cls((1,))
        for j in range(k):
            p = p * cls((shift - j, 1))
        return p * Fraction(1, math.factorial(k))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format("n")

    def format(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_pairs(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs) -> "QPolynomial":
        return cls(Fraction(a, b) for a, b in pairs)


@dataclass(frozen=True)
class RationalGF:
    """``numerator(t) / (1 - t)**k``."""

    numerator: QPolynomial
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("denominator exponent must be non-negative")


def gf_coefficient(f: RationalGF, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    total = Fraction(0)
    for j, a in enumerate(f.numerator.coeffs):
        if j > n or not a:
            continue
        if f.k == 0:
            total += a if j == n else 0
        else:
            total += a * math.comb(n - j + f.k - 1, f.k - 1)
    return total


def gf_to_polynomial(f: RationalGF) -> tuple[QPolynomial, int]:
    """Polynomial in n matching the coefficients, and the first n it holds for.

    The match starts at n = 0 exactly when deg(numerator) < k.
    """
    deg = f.numerator.degree
    if f.k == 0:
        if deg > 0:
            raise NotEventuallyPolynomial("numerator is not constant and there is no pole at t = 1")
        return QPolynomial(), (1 if deg == 0 else 0)
    poly = QPolynomial()
    for j, a in enumerate(f.numerator.coeffs):
        if a:
            poly = poly + a * QPolynomial.binomial(f.k - 1 - j, f.k - 1)
    return poly, max(0, deg - f.k + 1)
