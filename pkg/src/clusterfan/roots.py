"""Finite crystallographic root systems in simple-root coordinates.

A root is stored as its integer coordinate vector over the simple roots.
The full system is generated by closing the simples under the simple
reflections; positivity is read off the signs of the coordinates.  The
bilinear form is (alpha_i, alpha_j) = d_i a_ij with D the minimal
symmetrizer, so coroot coordinates and reflection matrices stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import cartan as cartan_mod
from .cartan import DynkinType, Entries
from .linalg import solve_linear


class ClosureBudgetExceeded(RuntimeError):
    """The reflection closure produced more positive roots than the budget
    allows; the input cannot be of finite type."""


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    coroot_coords: tuple[int, ...]
    length_half_square: int  # (alpha, alpha) / 2

    @property
    def height(self) -> int:
        return sum(self.coords)


class RootSystem:
    """Roots, indexed positives-first; all group-theoretic actions are
    expressed as permutations of the index range or as integer matrices."""

    def __init__(self, entries: Entries):
        entries = cartan_mod.check_shape(entries)
        self.cartan = entries
        self.n = len(entries)
        self.symmetrizer = cartan_mod.require_finite_type(entries)
        self.dynkin = cartan_mod.classify(entries)
        positives = self._closure()
        positives.sort(key=lambda c: (sum(c), c))
        self.num_positive = len(positives)
        coords = positives + [tuple(-x for x in c) for c in positives]
        self.roots: list[Root] = [self._make_root(c) for c in coords]
        self.index = {r.coords: i for i, r in enumerate(self.roots)}
        self.simple_index = [
            self.index[tuple(1 if j == i else 0 for j in range(self.n))]
            for i in range(self.n)
        ]

    # -- construction ------------------------------------------------------

    def _closure(self) -> list[tuple[int, ...]]:
        budget = 10 * self.n * self.n
        simples = [tuple(1 if j == i else 0 for j in range(self.n)) for i in range(self.n)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            fresh = []
            for coords in frontier:
                for i in range(self.n):
                    image = self.reflect_coords(i, coords)
                    if image not in seen and all(x >= 0 for x in image):
                        seen.add(image)
                        fresh.append(image)
                        if len(seen) > budget:
                            raise ClosureBudgetExceeded(
                                f"more than {budget} positive roots generated"
                            )
            frontier = fresh
        return list(seen)

    def _make_root(self, coords: tuple[int, ...]) -> Root:
        pairing = 0
        for i in range(self.n):
            if coords[i]:
                for j in range(self.n):
                    if coords[j]:
                        pairing += coords[i] * coords[j] * self.symmetrizer[i] * self.cartan[i][j]
        assert pairing > 0 and pairing % 2 == 0
        half = pairing // 2
        coroot = []
        for i in range(self.n):
            num = coords[i] * self.symmetrizer[i]
            assert num % half == 0, "coroot coordinates must be integers"
            coroot.append(num // half)
        return Root(coords, tuple(coroot), half)

    # -- geometry ----------------------------------------------------------

    def reflect_coords(self, i: int, coords: Sequence[int]) -> tuple[int, ...]:
        """Apply the simple reflection s_i to a coordinate vector."""
        out = list(coords)
        out[i] = coords[i] - sum(self.cartan[i][j] * coords[j] for j in range(self.n))
        return tuple(out)

    def reflect_rational(self, i: int, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = list(coords)
        out[i] = coords[i] - sum(self.cartan[i][j] * coords[j] for j in range(self.n))
        return tuple(out)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """(a, b) for coordinate vectors over the simple roots."""
        total = Fraction(0)
        for i in range(self.n):
            if a[i]:
                for j in range(self.n):
                    if b[j]:
                        total += Fraction(a[i]) * Fraction(b[j]) * self.symmetrizer[i] * self.cartan[i][j]
        return total

    def coroot_pairing(self, coords: Sequence[int], root_idx: int) -> int:
        """<alpha, beta-vee> for alpha given by coords and beta a root."""
        beta = self.roots[root_idx]
        total = 0
        for i in range(self.n):
            if coords[i]:
                acc = sum(self.cartan[i][j] * beta.coords[j] for j in range(self.n))
                total += coords[i] * self.symmetrizer[i] * acc
        assert total % beta.length_half_square == 0
        return total // beta.length_half_square

    def reflection_matrix(self, root_idx: int) -> list[list[int]]:
        """Integer matrix of the reflection through a root, acting on
        simple-root coordinates (columns are images of the simples)."""
        beta = self.roots[root_idx]
        cols = []
        for j in range(self.n):
            unit = tuple(1 if k == j else 0 for k in range(self.n))
            pairing = self.coroot_pairing(unit, root_idx)
            cols.append(
                [
                    (1 if k == j else 0) - pairing * beta.coords[k]
                    for k in range(self.n)
                ]
            )
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    # -- permutations ------------------------------------------------------

    def simple_perm(self, i: int) -> tuple[int, ...]:
        return tuple(
            self.index[self.reflect_coords(i, r.coords)] for r in self.roots
        )

    def reflection_perm(self, root_idx: int) -> tuple[int, ...]:
        matrix = self.reflection_matrix(root_idx)
        out = []
        for r in self.roots:
            image = tuple(
                sum(matrix[k][j] * r.coords[j] for j in range(self.n))
                for k in range(self.n)
            )
            out.append(self.index[image])
        return tuple(out)

    def is_positive(self, idx: int) -> bool:
        return idx < self.num_positive

    def negate(self, idx: int) -> int:
        return idx + self.num_positive if idx < self.num_positive else idx - self.num_positive

    def positive_roots(self) -> list[Root]:
        return self.roots[: self.num_positive]

    def coords_text(self, idx: int) -> str:
        """Human-readable combination of simple roots, e.g. "a1+2*a2"."""
        coords = self.roots[idx].coords
        pieces = []
        for i, c in enumerate(coords):
            if not c:
                continue
            name = f"a{i + 1}"
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{c}*{name}"
            if pieces and c > 0:
                pieces.append(f"+{term}")
            else:
                pieces.append(term)
        return "".join(pieces) if pieces else "0"


def root_system(source: Entries | str | DynkinType) -> RootSystem:
    """Build a root system from a Cartan matrix, a type name like "A3", or a
    parsed Dynkin type."""
    if isinstance(source, str):
        source = cartan_mod.cartan_for_type(source)
    elif source and isinstance(source[0][0], str):
        source = cartan_mod.cartan_for_type(source)  # DynkinType
    return RootSystem(cartan_mod.as_entries(source))


# -- root poset --------------------------------------------------------------


class RootPoset:
    """Componentwise order on positive roots: beta <= gamma iff gamma - beta
    has nonnegative coordinates."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        pos = rs.positive_roots()
        self.size = len(pos)
        self._leq = [
            [
                all(b >= a for a, b in zip(pos[i].coords, pos[j].coords))
                for j in range(self.size)
            ]
            for i in range(self.size)
        ]

    def leq(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.size):
            for j in range(self.size):
                if i != j and self._leq[i][j]:
                    if not any(
                        k not in (i, j) and self._leq[i][k] and self._leq[k][j]
                        for k in range(self.size)
                    ):
                        out.append((i, j))
        return out

    def incomparable(self, i: int, j: int) -> bool:
        return not (self._leq[i][j] or self._leq[j][i])


# -- numerical invariants ----------------------------------------------------


@dataclass(frozen=True)
class CoxeterData:
    coxeter_number: int
    exponents: tuple[int, ...]
    group_order: int


def coxeter_data(rs: RootSystem) -> CoxeterData:
    """Coxeter number, exponents and Weyl group order of an irreducible
    system.

    Exponents come from the dual partition of the height histogram of the
    positive roots; the Coxeter number is the order of a bipartite Coxeter
    element as a permutation of the roots.  The classical cross-identities
    n h = 2 |positives| and |W| = prod(e_i + 1) are asserted.
    """
    if len(rs.dynkin) != 1:
        raise ValueError(f"coxeter_data needs an irreducible system, got {rs.dynkin}")
    histogram: dict[int, int] = {}
    for root in rs.positive_roots():
        histogram[root.height] = histogram.get(root.height, 0) + 1
    max_height = max(histogram)
    exponents: list[int] = []
    for h in range(1, max_height + 1):
        multiplicity = histogram.get(h, 0) - histogram.get(h + 1, 0)
        assert multiplicity >= 0, "height histogram must be non-increasing"
        exponents.extend([h] * multiplicity)
    exponents.sort()

    plus, minus = cartan_mod.bipartition(rs.cartan)
    perm = tuple(range(len(rs.roots)))
    for i in list(plus) + list(minus):
        s = rs.simple_perm(i)
        perm = tuple(s[perm[r]] for r in range(len(perm)))
    order = 1
    power = perm
    identity = tuple(range(len(rs.roots)))
    while power != identity:
        power = tuple(perm[power[r]] for r in range(len(power)))
        order += 1

    group_order = 1
    for e in exponents:
        group_order *= e + 1
    assert len(exponents) == rs.n
    assert rs.n * order == 2 * rs.num_positive
    assert sum(exponents) == rs.num_positive
    return CoxeterData(order, tuple(exponents), group_order)


@dataclass(frozen=True)
class WeightData:
    fundamental_weights: tuple[tuple[Fraction, ...], ...]
    coroot_half_sum: tuple[Fraction, ...]


def weight_data(rs: RootSystem) -> WeightData:
    """Fundamental weights (in simple-root coordinates) and the half-sum of
    the positive coroots (in simple-coroot coordinates)."""
    n = rs.n
    weights = []
    for i in range(n):
        rhs = [1 if j == i else 0 for j in range(n)]
        weights.append(tuple(solve_linear(rs.cartan, rhs)))
    total = [Fraction(0)] * n
    for idx in range(rs.num_positive):
        for i, c in enumerate(rs.roots[idx].coroot_coords):
            total[i] += c
    half = tuple(t / 2 for t in total)
    return WeightData(tuple(weights), half)


def to_json_dict(rs: RootSystem) -> dict:
    """JSON-ready summary; rationals are rendered as "p/q" strings."""
    data = {
        "type": cartan_mod.dynkin_name(rs.dynkin),
        "rank": rs.n,
        "roots": [list(r.coords) for r in rs.roots],
        "positive_roots": [list(r.coords) for r in rs.positive_roots()],
        "cartan": [list(row) for row in rs.cartan],
        "symmetrizer": list(rs.symmetrizer),
    }
    if len(rs.dynkin) == 1:
        cox = coxeter_data(rs)
        data["h"] = cox.coxeter_number
        data["exponents"] = list(cox.exponents)
        data["group_order"] = cox.group_order
    else:
        data["h"] = None
        data["exponents"] = None
        data["group_order"] = None
    return data
