"""Lattice cones, cyclic quotient singularities, and their minimal resolutions.

A cyclic quotient singularity of order n and weight a is the quotient of the
plane by the diagonal action (x, y) -> (r*x, r^a*y) with r a primitive n-th
root of unity.  Each such singularity is toric: it is cut out by a single
two-dimensional lattice cone, and blowing up along the extra rays of the
Hirzebruch-Jung subdivision produces the minimal resolution, a chain of
rational curves whose self-intersection numbers are the negatives of the
continued-fraction coefficients of n over a.

Two conventions fixed here and relied on elsewhere:

* cones store their rays in counterclockwise order (positive cross product);
* cone equality is the equality of normal forms, where the normal form (N, q)
  is computed by moving ray1 to (1,0) by a unimodular map and shearing ray2
  into (-q, N) with 0 <= q < N, minimized over both orientations of the
  lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import LaurentPoly, RatMatrix

Vec = tuple[int, int]


class InvalidInput(ValueError):
    """Raised when numeric input violates a stated precondition."""


class Unsupported(ValueError):
    """Raised for inputs outside the implemented range of an operation."""


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, p, r) with p*a + r*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _cross(v: Vec, w: Vec) -> int:
    return v[0] * w[1] - v[1] * w[0]


def _primitive(v: Vec) -> Vec:
    g = gcd(v[0], v[1])
    if g == 0:
        raise InvalidInput("zero vector is not a ray")
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True)
class QuotientSingularity:
    """Cyclic quotient of the plane: order n, weight a, generator (r, r^a)."""

    n: int
    a: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInput(f"order must be positive, got {self.n}")
        if self.n == 1:
            if self.a != 1:
                raise InvalidInput("the trivial group has weight 1 by convention")
            return
        if not 1 <= self.a < self.n:
            raise InvalidInput(f"weight must satisfy 1 <= a < n, got a={self.a}, n={self.n}")
        if gcd(self.a, self.n) != 1:
            raise InvalidInput(f"weight {self.a} not coprime to order {self.n}")

    @property
    def group_generator(self) -> tuple[int, int]:
        """Exponents of the diagonal pair (r^1, r^a)."""
        return (1 % self.n, self.a % self.n)

    def is_dual_type_pair(self, other: "QuotientSingularity") -> bool:
        return self.n == other.n and (self.a + other.a) % self.n == 0


@dataclass(frozen=True)
class Cone2D:
    """Strictly convex rational cone in the plane, rays counterclockwise."""

    ray1: Vec
    ray2: Vec

    def __post_init__(self) -> None:
        if _cross(self.ray1, self.ray2) <= 0:
            raise InvalidInput("rays must be independent and counterclockwise")
        for v in (self.ray1, self.ray2):
            if gcd(v[0], v[1]) != 1:
                raise InvalidInput(f"ray {v} is not primitive")

    @classmethod
    def from_rays(cls, v: Vec, w: Vec) -> "Cone2D":
        v, w = _primitive(tuple(v)), _primitive(tuple(w))
        if _cross(v, w) == 0:
            raise InvalidInput("rays are linearly dependent")
        if _cross(v, w) < 0:
            v, w = w, v
        return cls(v, w)

    @property
    def rays(self) -> tuple[Vec, Vec]:
        return (self.ray1, self.ray2)

    @property
    def index(self) -> int:
        """Index of the sublattice spanned by the rays: the order n."""
        return _cross(self.ray1, self.ray2)

    def is_smooth(self) -> bool:
        return self.index == 1

    def contains(self, v: tuple[int, int] | tuple[Fraction, Fraction]) -> bool:
        d = self.index
        alpha = Fraction(v[0] * self.ray2[1] - v[1] * self.ray2[0], d)
        beta = Fraction(self.ray1[0] * v[1] - self.ray1[1] * v[0], d)
        return alpha >= 0 and beta >= 0

    def dual(self) -> "Cone2D":
        """Vectors pairing nonnegatively with the whole cone.

        Each dual ray is orthogonal to one primal ray and nonnegative on the
        other; the construction below lands in counterclockwise order and is
        an exact involution.
        """
        w1 = _primitive((self.ray2[1], -self.ray2[0]))
        w2 = _primitive((-self.ray1[1], self.ray1[0]))
        return Cone2D(w1, w2)

    def _oriented_q(self, v: Vec, w: Vec) -> int:
        n = _cross(v, w)
        _, p, r = _ext_gcd(v[0], v[1])
        alpha = p * w[0] + r * w[1]
        return (-alpha) % n

    def normal_form(self) -> tuple[int, int]:
        """(N, q): ray1 moved to (1,0), ray2 sheared to (-q, N), 0 <= q < N,
        minimized over the two lattice orientations."""
        n = self.index
        q_direct = self._oriented_q(self.ray1, self.ray2)
        mirrored_first = (self.ray2[0], -self.ray2[1])
        mirrored_second = (self.ray1[0], -self.ray1[1])
        q_mirror = self._oriented_q(mirrored_first, mirrored_second)
        return (n, min(q_direct, q_mirror))

    def is_equivalent(self, other: "Cone2D") -> bool:
        return self.normal_form() == other.normal_form()


def quotient_cone(s: QuotientSingularity) -> Cone2D:
    """The cone cutting out the quotient surface of s.

    Order-n weight-1 gives rays (1,0) and (-1,n); the inverse weight n-1
    gives rays (n,1) and (0,1); the smooth case n=1 is the first quadrant.
    Other weights use the sheared template ((1,0), (-a,n)).
    """
    n, a = s.n, s.a
    if n == 1:
        return Cone2D((1, 0), (0, 1))
    if a == n - 1 and n >= 3:
        return Cone2D((n, 1), (0, 1))
    return Cone2D((1, 0), (-a, n))


def dual_cone(c: Cone2D) -> Cone2D:
    return c.dual()


def hj_expansion(n: int, q: int) -> list[int]:
    """Minus-sign continued fraction of n/q: n/q = a1 - 1/(a2 - 1/(...)).

    All coefficients are >= 2, and evaluating the expansion returns n/q
    exactly (see hj_evaluate).
    """
    if not (0 < q < n) or gcd(n, q) != 1:
        raise InvalidInput(f"need 0 < q < n coprime, got n={n}, q={q}")
    out: list[int] = []
    while True:
        a = -((-n) // q)  # ceil(n / q)
        out.append(a)
        n, q = q, a * q - n
        if q == 0:
            return out


def hj_evaluate(coeffs: list[int]) -> Fraction:
    """Exact value of the minus-sign continued fraction [a1, a2, ...]."""
    if not coeffs:
        raise InvalidInput("empty continued fraction")
    value = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        value = a - 1 / value
    return value


@dataclass(frozen=True)
class ResolutionChain:
    """Exceptional data of the minimal resolution of a quotient singularity.

    ``rays`` are the lattice rays inserted into the cone (none when the cone
    is already smooth); ``self_intersections`` aligns with ``rays``; the
    intersection matrix is tridiagonal, with consecutive curves meeting once.
    """

    singularity: QuotientSingularity
    cone: Cone2D
    rays: tuple[Vec, ...]
    self_intersections: tuple[int, ...]

    @property
    def intersection_matrix(self) -> tuple[tuple[int, ...], ...]:
        k = len(self.rays)
        return tuple(
            tuple(
                self.self_intersections[i] if i == j else (1 if abs(i - j) == 1 else 0)
                for j in range(k)
            )
            for i in range(k)
        )

    def full_ray_sequence(self) -> tuple[Vec, ...]:
        """Cone boundary plus inserted rays, in sweep order."""
        if not self.rays:
            return self.cone.rays
        if self.singularity.a == self.singularity.n - 1 and self.singularity.n >= 3:
            # stored sweep runs from the (0,1) side for this family
            return (self.cone.ray2,) + self.rays + (self.cone.ray1,)
        return (self.cone.ray1,) + self.rays + (self.cone.ray2,)

    def is_unimodular_subdivision(self) -> bool:
        seq = self.full_ray_sequence()
        return all(abs(_cross(seq[i], seq[i + 1])) == 1 for i in range(len(seq) - 1))


def minimal_resolution(s: QuotientSingularity) -> ResolutionChain:
    """Hirzebruch-Jung subdivision of the quotient cone.

    Rays follow the three-term recurrence u(k+1) = a_k*u(k) - u(k-1) seeded
    by the smooth corner basis, so consecutive pairs are automatically
    unimodular; the coefficients a_k are exactly hj_expansion(n, a).
    """
    cone = quotient_cone(s)
    n, a = s.n, s.a
    if n == 1:
        return ResolutionChain(s, cone, (), ())
    coeffs = hj_expansion(n, a)
    chain = [(1, 0), (0, 1)]
    for c in coeffs:
        prev, cur = chain[-2], chain[-1]
        chain.append((c * cur[0] - prev[0], c * cur[1] - prev[1]))
    if chain[-1] != (-a, n):
        raise AssertionError("recurrence did not close up on the far ray")
    interior = chain[1:-1]
    if a == n - 1 and n >= 3:
        # move from template coordinates into the stored cone ((n,1),(0,1))
        interior = [(y, x + y) for (x, y) in interior]
    return ResolutionChain(
        s, cone, tuple(interior), tuple(-c for c in coeffs)
    )


@dataclass(frozen=True)
class DynkinGraph:
    """Dual graph of the exceptional curves: one vertex per curve, an edge
    where two curves meet."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def is_path(self) -> bool:
        k = len(self.vertices)
        return self.edges == tuple((i, i + 1) for i in range(k - 1))


def dynkin_dual_graph(chain: ResolutionChain) -> DynkinGraph:
    m = chain.intersection_matrix
    k = len(m)
    edges = tuple(
        (i, j) for i in range(k) for j in range(i + 1, k) if m[i][j] == 1
    )
    return DynkinGraph(tuple(range(k)), edges)


def leading_principal_minors(matrix: tuple[tuple[int, ...], ...]) -> list[Fraction]:
    m = RatMatrix.from_rows([list(row) for row in matrix]) if matrix else None
    out = []
    for k in range(1, len(matrix) + 1):
        out.append(m.submatrix(range(k), range(k)).det())
    return out


def is_negative_definite(matrix: tuple[tuple[int, ...], ...]) -> bool:
    """Sylvester test: k-th leading principal minor has sign (-1)^k."""
    for k, minor in enumerate(leading_principal_minors(matrix), start=1):
        if (minor > 0) != (k % 2 == 0) or minor == 0:
            return False
    return True


@dataclass(frozen=True)
class InvariantRing:
    """Generators and relations of the ring of group-invariant polynomials.

    Generators are monomials in the plane coordinates a, b; relations are
    binomials in the generator symbols x0..xm that vanish identically under
    the substitution x_i -> generator_i.
    """

    n: int
    generators: tuple[LaurentPoly, ...]
    relations: tuple[LaurentPoly, ...]

    def generator_symbols(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(len(self.generators)))

    def parametrization(self) -> dict[str, LaurentPoly]:
        return dict(zip(self.generator_symbols(), self.generators))

    def relations_vanish(self) -> bool:
        binding = self.parametrization()
        return all(r.substitute(binding).is_zero for r in self.relations)


def invariant_generators(s: QuotientSingularity) -> InvariantRing:
    """Invariant ring for weight 1: generated by a^i b^(n-i), i = 0..n,
    subject to all two-by-two minors of the row of consecutive symbols."""
    if s.n > 1 and s.a != 1:
        raise Unsupported(f"invariant ring implemented for weight 1 only, got a={s.a}")
    n = s.n
    gens = tuple(
        LaurentPoly(("a", "b"), {(i, n - i): 1}) for i in range(n + 1)
    )
    relations = []
    for i in range(n):
        for j in range(i + 1, n):
            xi = LaurentPoly.var(f"x{i}")
            xi1 = LaurentPoly.var(f"x{i + 1}")
            xj = LaurentPoly.var(f"x{j}")
            xj1 = LaurentPoly.var(f"x{j + 1}")
            relations.append(xi * xj1 - xi1 * xj)
    return InvariantRing(n, gens, tuple(relations))


@dataclass(frozen=True)
class ContractionMap:
    """Assignment sending the surface monomials z^i*u to generator symbols."""

    n: int
    assignments: tuple[tuple[LaurentPoly, str], ...]

    def substitution(self) -> dict[str, LaurentPoly]:
        return {symbol: mono for mono, symbol in self.assignments}

    def pullback(self, p: LaurentPoly) -> LaurentPoly:
        return p.substitute(self.substitution())


def contraction_map(n: int) -> ContractionMap:
    if n < 1:
        raise InvalidInput(f"need n >= 1, got {n}")
    z = LaurentPoly.var("z")
    u = LaurentPoly.var("u")
    pairs = tuple((z**i * u, f"x{i}") for i in range(n + 1))
    return ContractionMap(n, pairs)
