"""Exact arithmetic substrate: rationals, Laurent polynomials, matrices.

Everything downstream is built from three carriers.

* Rational numbers are ``fractions.Fraction`` from the standard library,
  which already guarantees reduced form and a positive denominator.
* ``LaurentPoly`` is a sparse multivariate Laurent polynomial: a map from
  integer exponent vectors (negative exponents allowed) to nonzero Fraction
  coefficients, together with the ordered tuple of variable names the
  exponents refer to.  Construction canonicalizes: variables are sorted,
  zero coefficients are dropped, and variables that appear in no term are
  pruned, so ``==`` is structural equality of mathematical objects.
* ``RatMatrix`` is a dense matrix over the rationals whose elimination is
  fraction-free: rows are scaled to integers up front and every update
  divides by the row gcd, so no rational arithmetic happens in the inner
  loop and entries stay small.

No floating point is used anywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence


class ZeroIntoNegativePower(ValueError):
    """Raised when 0 is substituted into a variable with a negative exponent."""


class NotInvertible(ValueError):
    """Raised when inverting a Laurent polynomial that is not a single term."""


class InconsistentSystem(ValueError):
    """Raised by RatMatrix.solve when the system has no solution."""


Scalar = int | Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


_as_fraction = as_fraction


class LaurentPoly:
    """Sparse Laurent polynomial with Fraction coefficients.

    ``variables`` is a sorted tuple of names; ``terms`` maps exponent tuples
    (one entry per variable, any sign) to nonzero coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Iterable[str] = (),
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
    ) -> None:
        vars_in = tuple(variables)
        raw: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(vars_in):
                    raise ValueError("exponent tuple length does not match variables")
                c = _as_fraction(coeff)
                if c:
                    acc = raw.get(exps, _ZERO) + c
                    if acc:
                        raw[exps] = acc
                    else:
                        raw.pop(exps, None)
        # prune unused variables, then sort the survivors
        used = [i for i, v in enumerate(vars_in) if any(e[i] for e in raw)]
        kept = tuple(vars_in[i] for i in used)
        if len(set(kept)) != len(kept):
            raise ValueError(f"duplicate variable name in {vars_in!r}")
        order = sorted(range(len(kept)), key=lambda i: kept[i])
        object.__setattr__(self, "variables", tuple(kept[i] for i in order))
        canon: dict[tuple[int, ...], Fraction] = {}
        for exps, c in raw.items():
            key = tuple(exps[used[i]] for i in order)
            canon[key] = c
        object.__setattr__(self, "terms", canon)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls((), {})

    @classmethod
    def const(cls, value: Scalar) -> "LaurentPoly":
        return cls((), {(): _as_fraction(value)})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls((name,), {(1,): _ONE})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Scalar = 1) -> "LaurentPoly":
        names = tuple(exponents)
        return cls(names, {tuple(exponents[v] for v in names): _as_fraction(coeff)})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.variables

    def constant_value(self) -> Fraction:
        if self.variables:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), _ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit_monomial(self, invertible: set[str] | None = None) -> bool:
        """True when self is a single term whose variables (if any) all lie
        in ``invertible``; with ``invertible=None`` any variables qualify."""
        if len(self.terms) != 1:
            return False
        if invertible is None:
            return True
        (exps,) = self.terms
        return all(e == 0 or v in invertible for v, e in zip(self.variables, exps))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value: "LaurentPoly | Scalar") -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.const(value)

    def _aligned(
        self, other: "LaurentPoly"
    ) -> tuple[tuple[str, ...], dict[tuple[int, ...], Fraction], dict[tuple[int, ...], Fraction]]:
        if self.variables == other.variables:
            return self.variables, dict(self.terms), dict(other.terms)
        joint = tuple(sorted(set(self.variables) | set(other.variables)))

        def lift(p: LaurentPoly) -> dict[tuple[int, ...], Fraction]:
            pos = {v: i for i, v in enumerate(p.variables)}
            out = {}
            for exps, c in p.terms.items():
                out[tuple(exps[pos[v]] if v in pos else 0 for v in joint)] = c
            return out

        return joint, lift(self), lift(other)

    def __add__(self, other: "LaurentPoly | Scalar") -> "LaurentPoly":
        other = self._coerce(other)
        joint, a, b = self._aligned(other)
        for exps, c in b.items():
            a[exps] = a.get(exps, _ZERO) + c
        return LaurentPoly(joint, a)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly | Scalar") -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "LaurentPoly | Scalar") -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other: "LaurentPoly | Scalar") -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        joint, a, b = self._aligned(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(key, _ZERO) + ca * cb
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return LaurentPoly(joint, out)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise NotInvertible(f"not a unit monomial: {self}")
        ((exps, coeff),) = self.terms.items()
        return LaurentPoly(self.variables, {tuple(-e for e in exps): _ONE / coeff})

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and evaluation -------------------------------------------

    def diff(self, var: str) -> "LaurentPoly":
        if var not in self.variables:
            return LaurentPoly.zero()
        i = self.variables.index(var)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1 :]
            out[key] = out.get(key, _ZERO) + c * e
        return LaurentPoly(self.variables, out)

    def substitute(self, bindings: Mapping[str, "LaurentPoly | Scalar"]) -> "LaurentPoly":
        """Substitute polynomials for variables, exactly.

        A binding raised to a negative exponent must be invertible: zero
        raises ZeroIntoNegativePower, a non-monomial raises NotInvertible.
        """
        bound = {v: self._coerce(p) for v, p in bindings.items()}
        total = LaurentPoly.zero()
        for exps, coeff in self.terms.items():
            acc = LaurentPoly.const(coeff)
            for v, e in zip(self.variables, exps):
                if e == 0:
                    continue
                if v in bound:
                    repl = bound[v]
                    if repl.is_zero:
                        if e < 0:
                            raise ZeroIntoNegativePower(
                                f"0 substituted for {v} which occurs with exponent {e}"
                            )
                        acc = LaurentPoly.zero()
                        break
                    acc = acc * repl**e
                else:
                    acc = acc * LaurentPoly((v,), {(e,): _ONE})
            total = total + acc
        return total

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(self.variables, exps):
                if e == 0:
                    continue
                if v not in values:
                    raise ValueError(f"no value supplied for variable {v}")
                x = _as_fraction(values[v])
                if not x:
                    if e < 0:
                        raise ZeroIntoNegativePower(
                            f"0 given for {v} which occurs with exponent {e}"
                        )
                    term = _ZERO
                    break
                term = term * x**e
            total += term
        return total

    # -- degree bookkeeping --------------------------------------------------

    def exponents_of(self, var: str) -> tuple[int, ...]:
        if var not in self.variables:
            return (0,) * len(self.terms) if self.terms else ()
        i = self.variables.index(var)
        return tuple(e[i] for e in self.terms)

    def min_exponent(self, var: str) -> int:
        exps = self.exponents_of(var)
        return min(exps) if exps else 0

    def max_exponent(self, var: str) -> int:
        exps = self.exponents_of(var)
        return max(exps) if exps else 0

    def homogeneous_degree(self, group: Sequence[str]) -> int | None:
        """Total degree in ``group`` if every term has the same; else None."""
        if self.is_zero:
            return 0
        idx = [self.variables.index(v) for v in group if v in self.variables]
        degrees = {sum(e[i] for i in idx) for e in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    # -- structural protocol -------------------------------------------------

    def _key(self) -> tuple:
        return (self.variables, tuple(sorted(self.terms.items())))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for v, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(v)
                elif e != 0:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = f"{mag}*{body}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, chunk))  # type: ignore[arg-type]
        first_sign, first_chunk = parts[0]
        text = ("-" if first_sign == "-" else "") + first_chunk
        for sign, chunk in parts[1:]:
            text += f" {sign} {chunk}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [
                {
                    "exp": list(exps),
                    "num": str(coeff.numerator),
                    "den": str(coeff.denominator),
                }
                for exps, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LaurentPoly":
        variables = tuple(data["vars"])
        terms: dict[tuple[int, ...], Fraction] = {}
        for item in data["terms"]:
            exps = tuple(int(e) for e in item["exp"])
            terms[exps] = Fraction(int(item["num"]), int(item["den"]))
        return cls(variables, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_dict(json.loads(text))


# -- matrices of Laurent polynomials ------------------------------------------

PolyMatrix = tuple[tuple[LaurentPoly, ...], ...]


def poly_mat(rows: Iterable[Iterable[LaurentPoly | Scalar]]) -> PolyMatrix:
    return tuple(tuple(LaurentPoly._coerce(x) for x in row) for row in rows)


def poly_mat_identity(k: int) -> PolyMatrix:
    one, zero = LaurentPoly.const(1), LaurentPoly.zero()
    return tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))


def poly_mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    out = []
    for row in a:
        new_row = []
        for j in range(len(b[0])):
            acc = LaurentPoly.zero()
            for k, entry in enumerate(row):
                acc = acc + entry * b[k][j]
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def poly_mat_substitute(a: PolyMatrix, bindings: Mapping[str, LaurentPoly | Scalar]) -> PolyMatrix:
    return tuple(tuple(entry.substitute(bindings) for entry in row) for row in a)


def poly_mat_det(a: PolyMatrix) -> LaurentPoly:
    k = len(a)
    if any(len(row) != k for row in a):
        raise ValueError("determinant of a non-square matrix")
    if k == 0:
        return LaurentPoly.const(1)
    if k == 1:
        return a[0][0]
    if k == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = LaurentPoly.zero()
    sign = 1
    for j in range(k):
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        total = total + sign * a[0][j] * poly_mat_det(minor)
        sign = -sign
    return total


# -- exact rational matrices ---------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class RatMatrix:
    """Dense matrix over Fraction with exact rank/kernel/solve.

    Elimination works on integer-scaled rows (scaling a row changes neither
    the rank nor the null space) and divides each updated row by its gcd to
    keep entries small; rows whose pivot-column entry is zero are skipped.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar]) -> None:
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(_as_fraction(x) for x in entries))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        flat = [x for row in rows for x in row]
        return cls(r, c, flat)

    @classmethod
    def identity(cls, k: int) -> "RatMatrix":
        return cls(k, k, [1 if i == j else 0 for i in range(k) for j in range(k)])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(self.entry(i, j)) for j in range(self.cols)) for i in range(self.rows)
        )
        return f"RatMatrix[{body}]"

    # -- elimination core --------------------------------------------------

    def _int_rows(self, augment: Sequence[Fraction] | None = None) -> list[list[int]]:
        out = []
        for i in range(self.rows):
            row = list(self.row(i))
            if augment is not None:
                row.append(augment[i])
            scale = 1
            for x in row:
                scale = _lcm(scale, x.denominator)
            out.append([int(x * scale) for x in row])
        return out

    @staticmethod
    def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
        """In-place forward elimination; returns (echelon rows, pivot cols)."""
        if not rows:
            return rows, []
        ncols = len(rows[0])
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            pivot_row = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            piv = rows[r][c]
            for i in range(r + 1, len(rows)):
                head = rows[i][c]
                if not head:
                    continue
                new_row = [piv * a - head * b for a, b in zip(rows[i], rows[r])]
                g = 0
                for x in new_row:
                    g = gcd(g, x)
                if g > 1:
                    new_row = [x // g for x in new_row]
                rows[i] = new_row
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows, pivots

    def rank(self) -> int:
        _, pivots = self._echelon(self._int_rows())
        return len(pivots)

    def kernel(self) -> tuple[tuple[Fraction, ...], ...]:
        """Basis of the right null space, one vector per free column."""
        rows, pivots = self._echelon(self._int_rows())
        pivot_set = set(pivots)
        free_cols = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free_cols:
            vec = [_ZERO] * self.cols
            vec[f] = _ONE
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                row = rows[r]
                s = _ZERO
                for c in range(pc + 1, self.cols):
                    if row[c] and vec[c]:
                        s += Fraction(row[c]) * vec[c]
                if s:
                    vec[pc] = -s / row[pc]
            basis.append(tuple(vec))
        return tuple(basis)

    def solve(self, rhs: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """One exact solution of ``self @ x = rhs`` (free variables set to 0)."""
        if len(rhs) != self.rows:
            raise ValueError("right-hand side length mismatch")
        b = [_as_fraction(x) for x in rhs]
        rows, pivots = self._echelon(self._int_rows(augment=b))
        aug_col = self.cols
        for r, pc in enumerate(pivots):
            if pc == aug_col:
                raise InconsistentSystem("no solution: pivot in the augmented column")
        # rows beyond the pivot count are all-zero in the coefficient part
        for i in range(len(pivots), self.rows):
            if rows[i][aug_col]:
                raise InconsistentSystem("no solution: zero row with nonzero rhs")
        vec = [_ZERO] * self.cols
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = rows[r]
            s = Fraction(row[aug_col])
            for c in range(pc + 1, self.cols):
                if row[c] and vec[c]:
                    s -= Fraction(row[c]) * vec[c]
            vec[pc] = s / row[pc]
        return tuple(vec)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        k = self.rows
        work = [list(self.row(i)) for i in range(k)]
        sign = 1
        result = _ONE
        for c in range(k):
            pivot_row = next((i for i in range(c, k) if work[i][c]), None)
            if pivot_row is None:
                return _ZERO
            if pivot_row != c:
                work[c], work[pivot_row] = work[pivot_row], work[c]
                sign = -sign
            piv = work[c][c]
            result *= piv
            for i in range(c + 1, k):
                factor = work[i][c] / piv
                if factor:
                    work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
        return sign * result

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        flat = [self.entry(i, j) for i in rows for j in cols]
        return RatMatrix(len(rows), len(cols), flat)

    def mul_vec(self, vec: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        xs = [_as_fraction(x) for x in vec]
        return tuple(
            sum((self.entry(i, j) * xs[j] for j in range(self.cols)), _ZERO)
            for i in range(self.rows)
        )


def iter_exponent_boxes(*ranges: tuple[int, int]) -> Iterator[tuple[int, ...]]:
    """All integer tuples in the box [lo1, hi1] x ... (inclusive bounds)."""
    if not ranges:
        yield ()
        return
    (lo, hi), rest = ranges[0], ranges[1:]
    for head in range(lo, hi + 1):
        for tail in iter_exponent_boxes(*rest):
            yield (head,) + tail
