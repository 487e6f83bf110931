"""Generalized associahedra over a finite crystallographic root system.

The chain runs: the almost-positive roots carry two involutions built from
the bipartition of the Dynkin diagram; alternating them reduces any pair of
roots to one involving a negated simple root, which decides compatibility;
the clique complex of the compatibility graph is the cluster complex; a
tau-invariant support function turns it into an explicit simple polytope
whose normal fan refines into the Coxeter fan after one linear change of
coordinates.  Everything is exact: vertices are rational, determinants are
integers, counts are compared to the product formula over the exponents.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import cartan as cartan_mod
from .coxeter import WeylGroup
from .linalg import SingularMatrix, det, solve_linear
from .roots import RootSystem, coxeter_data, weight_data


class OrbitEscape(RuntimeError):
    """Alternating the involutions failed to reach a negated simple root
    within the theoretical bound; indicates a bug, not bad input."""


class OrbitConflict(RuntimeError):
    """Two propagation paths assigned different support values to one root."""


class NonUnimodularCluster(RuntimeError):
    """A cluster's roots do not form a basis of the root lattice."""


class InequalityViolation(RuntimeError):
    """A polytope vertex landed on or outside a facet it should avoid."""


class SingularClusterSystem(RuntimeError):
    """The linear system of one cluster's facet equalities was singular."""


@dataclass(frozen=True)
class AlmostPositive:
    """The almost-positive roots (negated simples first, then all positive
    roots) together with the two involutions indexed by the bipartition."""

    rs: RootSystem
    parts: tuple[frozenset[int], frozenset[int]]
    indices: tuple[int, ...]
    position: Mapping[int, int]
    tau_plus: Mapping[int, int]
    tau_minus: Mapping[int, int]

    @property
    def n(self) -> int:
        return self.rs.n

    def negative_simple(self, idx: int) -> int | None:
        """The simple index i when idx is the root -alpha_i, else None."""
        coords = self.rs.roots[idx].coords
        if sum(coords) == -1 and min(coords) == -1:
            return coords.index(-1)
        return None

    def tau(self, sign: int, idx: int) -> int:
        return self.tau_plus[idx] if sign > 0 else self.tau_minus[idx]


def almost_positive(rs: RootSystem) -> AlmostPositive:
    parts = cartan_mod.bipartition(rs.cartan)
    negatives = tuple(rs.negate(rs.simple_index[i]) for i in range(rs.n))
    positives = tuple(i for i in range(len(rs.roots)) if rs.is_positive(i))
    indices = negatives + positives
    position = {idx: p for p, idx in enumerate(indices)}

    def build(part: frozenset[int], fixed: frozenset[int]) -> dict[int, int]:
        perm = list(range(len(rs.roots)))
        for i in part:
            sp = rs.simple_perm(i)
            perm = [sp[x] for x in perm]
        table = {}
        for idx in indices:
            coords = rs.roots[idx].coords
            if sum(coords) == -1 and min(coords) == -1 and coords.index(-1) in fixed:
                table[idx] = idx
            else:
                image = perm[idx]
                assert image in position or image in set(indices)
                table[idx] = image
        for idx, image in table.items():
            assert table[image] == idx, "involution"
            assert image in set(indices), "image stays almost positive"
        return table

    plus, minus = parts
    return AlmostPositive(
        rs,
        parts,
        indices,
        position,
        build(plus, minus),
        build(minus, plus),
    )


def tau_orbits(ap: AlmostPositive) -> list[tuple[int, ...]]:
    """Orbits of the group generated by the two involutions."""
    seen: set[int] = set()
    orbits = []
    for idx in ap.indices:
        if idx in seen:
            continue
        orbit = {idx}
        frontier = [idx]
        while frontier:
            x = frontier.pop()
            for image in (ap.tau_plus[x], ap.tau_minus[x]):
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        seen |= orbit
        orbits.append(tuple(sorted(orbit, key=lambda i: ap.position[i])))
    return orbits


def tau_order(ap: AlmostPositive, group: WeylGroup) -> int:
    """Order of the composite involution pair, checked against the closed
    form: (h+2)/2 when the longest element is -1, else h+2."""
    composite = {idx: ap.tau_minus[ap.tau_plus[idx]] for idx in ap.indices}
    order = 1
    for start in ap.indices:
        length = 1
        x = composite[start]
        while x != start:
            x = composite[x]
            length += 1
        order = math.lcm(order, length)
    h = coxeter_data(ap.rs).coxeter_number
    w0_is_minus_one = all(
        group.apply(group.w0, idx) == ap.rs.negate(idx)
        for idx in range(len(ap.rs.roots))
    )
    expected = (h + 2) // 2 if w0_is_minus_one else h + 2
    assert order == expected, (order, expected)
    return order


@dataclass(frozen=True)
class CompatibilityRelation:
    ap: AlmostPositive
    pairs: frozenset[tuple[int, int]]  # positions, ordered

    def compatible(self, idx1: int, idx2: int) -> bool:
        p, q = self.ap.position[idx1], self.ap.position[idx2]
        if p == q:
            return False
        return (min(p, q), max(p, q)) in self.pairs


def compatibility(ap: AlmostPositive) -> CompatibilityRelation:
    """Decide compatibility for every pair by alternating the involutions
    until a member is a negated simple root, then reading off the support
    rule.  Every intermediate verdict along both alternation starts must
    agree; a disagreement or a pair that never reaches a negated simple root
    is a fatal inconsistency."""
    rs = ap.rs
    # 2 |positive roots| / rank is the Coxeter number for an irreducible
    # system; twice (that + 2) bounds the size of any dihedral orbit.
    cap = 2 * (2 * rs.num_positive // rs.n + 2)

    def support_verdicts(a: int, b: int) -> list[bool]:
        out = []
        for x, y in ((a, b), (b, a)):
            i = ap.negative_simple(x)
            if i is not None:
                out.append(rs.roots[y].coords[i] == 0)
        return out

    def decide(a: int, b: int) -> bool:
        verdicts: list[bool] = []
        for first in (1, -1):
            x, y = a, b
            sign = first
            for _ in range(cap + 1):
                verdicts.extend(support_verdicts(x, y))
                x, y = ap.tau(sign, x), ap.tau(sign, y)
                sign = -sign
            if not verdicts:
                raise OrbitEscape(f"pair {a},{b} never met a negated simple root")
        assert all(v == verdicts[0] for v in verdicts), (a, b, verdicts)
        return verdicts[0]

    pairs = set()
    for p in range(len(ap.indices)):
        for q in range(p + 1, len(ap.indices)):
            if decide(ap.indices[p], ap.indices[q]):
                pairs.add((p, q))
    return CompatibilityRelation(ap, frozenset(pairs))


@dataclass(frozen=True)
class ClusterComplexData:
    ap: AlmostPositive
    facets: tuple[tuple[int, ...], ...]  # root indices, each of size n
    f_vector: tuple[int, ...]
    h_vector: tuple[int, ...]


def _h_from_f(f_vector: Sequence[int], n: int) -> tuple[int, ...]:
    """Reverse-Pascal conversion: expand sum_i f_(i-1) (q-1)^(n-i)."""
    coeffs = [0] * (n + 1)
    for i, f in enumerate(f_vector):  # f_(i-1) multiplies (q-1)^(n-i)
        power = n - i
        for j in range(power + 1):
            coeffs[j] += f * math.comb(power, j) * (-1) ** (power - j)
    assert all(c >= 0 for c in coeffs)
    return tuple(reversed(coeffs))


def cluster_complex(rel: CompatibilityRelation) -> ClusterComplexData:
    """All pairwise-compatible root sets, by backtracking.  The complex must
    be pure of dimension n-1 and every facet must be a lattice basis."""
    ap = rel.ap
    n = ap.n
    count = len(ap.indices)
    neighbors = [
        frozenset(
            q
            for q in range(count)
            if q != p and (min(p, q), max(p, q)) in rel.pairs
        )
        for p in range(count)
    ]
    sizes = [0] * (n + 1)
    sizes[0] = 1
    facets: list[tuple[int, ...]] = []

    def grow(current: list[int], greater: frozenset[int], extensions: frozenset[int]):
        """greater drives duplicate-free enumeration; extensions holds every
        vertex compatible with the whole current face, which is what purity
        is about."""
        size = len(current)
        if size == n:
            facets.append(tuple(ap.indices[p] for p in current))
            return
        if size:
            assert extensions, f"maximal face of size {size} < {n}"
        for p in sorted(greater):
            sizes[size + 1] += 1
            grow(
                current + [p],
                frozenset(q for q in greater if q > p and q in neighbors[p]),
                extensions & neighbors[p],
            )

    grow([], frozenset(range(count)), frozenset(range(count)))
    f_vector = tuple(sizes)
    assert f_vector[n] == len(facets)
    for facet in facets:
        matrix = [ap.rs.roots[idx].coords for idx in facet]
        if abs(det(matrix)) != 1:
            raise NonUnimodularCluster(f"facet {facet} has determinant {det(matrix)}")
    return ClusterComplexData(ap, tuple(facets), f_vector, _h_from_f(f_vector, n))


def n_phi(rs: RootSystem) -> int:
    """The product formula over the exponents."""
    data = coxeter_data(rs)
    h = data.coxeter_number
    total = Fraction(1)
    for e in data.exponents:
        total *= Fraction(e + h + 1, e + 1)
    assert total.denominator == 1
    return int(total)


_FIXED_NARAYANA = {
    "E6": (1, 36, 204, 351, 204, 36, 1),
    "E7": (1, 63, 546, 1470, 1470, 546, 63, 1),
    "E8": (1, 120, 1540, 6120, 9518, 6120, 1540, 120, 1),
    "F4": (1, 24, 55, 24, 1),
    "G2": (1, 6, 1),
}


def narayana(rs: RootSystem) -> tuple[int, ...]:
    """Closed forms per irreducible family (types B and C share a Weyl group
    and hence a vector)."""
    dtype = cartan_mod.classify(rs.cartan)
    if len(dtype) != 1:
        raise ValueError("closed forms cover irreducible systems only")
    family, n = dtype[0]
    if family == "A":
        out = tuple(
            math.comb(n + 1, k) * math.comb(n + 1, k + 1) // (n + 1)
            for k in range(n + 1)
        )
    elif family in ("B", "C"):
        out = tuple(math.comb(n, k) ** 2 for k in range(n + 1))
    elif family == "D":
        middle = []
        for k in range(1, n):
            term = Fraction(n, n - 1) * math.comb(n - 1, k - 1) * math.comb(n - 1, k)
            assert term.denominator == 1
            middle.append(math.comb(n, k) ** 2 - int(term))
        out = (1, *middle, 1)
    else:
        out = _FIXED_NARAYANA[f"{family}{n}"]
    assert sum(out) == n_phi(rs)
    return out


# -- support function and the polytope ----------------------------------------------


@dataclass(frozen=True)
class SupportFunctionF:
    ap: AlmostPositive
    values: Mapping[int, Fraction]

    def __call__(self, idx: int) -> Fraction:
        return self.values[idx]


def support_function(ap: AlmostPositive, group: WeylGroup) -> SupportFunctionF:
    """Seed F on the negated simples with the coroot half-sum coefficients,
    then spread it over the involution orbits.  The seed must be invariant
    under the diagram symmetry induced by the longest element, and strictly
    positive against every Cartan column."""
    rs = ap.rs
    rho = weight_data(rs).coroot_half_sum

    for i in range(rs.n):
        image = group.apply(group.w0, rs.simple_index[i])
        i_star = rs.roots[rs.negate(image)].coords.index(1)
        assert rho[i] == rho[i_star], "seed must be (-w0)-invariant"
    for j in range(rs.n):
        column = sum(rho[i] * rs.cartan[i][j] for i in range(rs.n))
        assert column > 0, f"column {j} fails strict positivity"

    values: dict[int, Fraction] = {}
    for orbit in tau_orbits(ap):
        anchors = [ap.negative_simple(idx) for idx in orbit]
        seeds = {rho[i] for i in anchors if i is not None}
        assert seeds, f"orbit {orbit} misses the negated simples"
        if len(seeds) > 1:
            raise OrbitConflict(f"orbit {orbit} received values {seeds}")
        value = seeds.pop()
        for idx in orbit:
            values[idx] = value
    return SupportFunctionF(ap, values)


@dataclass(frozen=True)
class AssociahedronPolytope:
    """One vertex per cluster, one linear inequality per almost-positive
    root.  Coordinates live in the dual space: the j-th coordinate of z is
    its pairing with the j-th simple root, so a root with simple-basis
    coordinates c pairs with z as the dot product c . z."""

    ap: AlmostPositive
    support: SupportFunctionF
    facets: tuple[tuple[int, ...], ...]  # clusters, aligned with vertices
    vertices: tuple[tuple[Fraction, ...], ...]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(len(self.facets)):
            si = set(self.facets[i])
            for j in range(i + 1, len(self.facets)):
                if len(si & set(self.facets[j])) == self.ap.n - 1:
                    out.append((i, j))
        return out


def build_polytope(
    complex_data: ClusterComplexData, support: SupportFunctionF
) -> AssociahedronPolytope:
    ap = complex_data.ap
    rs = ap.rs
    vertices = []
    for facet in complex_data.facets:
        matrix = [list(rs.roots[idx].coords) for idx in facet]
        rhs = [support(idx) for idx in facet]
        try:
            z = solve_linear(matrix, rhs)
        except SingularMatrix as exc:
            raise SingularClusterSystem(f"cluster {facet}: {exc}") from exc
        in_facet = set(facet)
        for idx in ap.indices:
            pairing = sum(
                c * zj for c, zj in zip(rs.roots[idx].coords, z)
            )
            if idx in in_facet:
                assert pairing == support(idx)
            elif pairing >= support(idx):
                raise InequalityViolation(
                    f"vertex of {facet} pairs to {pairing} against root {idx}"
                )
        vertices.append(tuple(z))
    assert len(set(vertices)) == len(vertices), "vertices must be distinct"
    return AssociahedronPolytope(
        ap, support, complex_data.facets, tuple(vertices)
    )


# -- fan checks ---------------------------------------------------------------------


def _cone_solver(
    rs: RootSystem, facet: tuple[int, ...]
) -> Callable[[Sequence[Fraction]], tuple[Fraction, ...]]:
    """Exact barycentric solver for the simplicial cone on a cluster: maps a
    vector to its coefficients over the cluster's roots."""
    n = rs.n
    columns = [rs.roots[idx].coords for idx in facet]
    matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    inverse_cols = [
        solve_linear(matrix, [1 if i == k else 0 for i in range(n)])
        for k in range(n)
    ]

    def solve(vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            sum(inverse_cols[k][j] * vector[k] for k in range(n))
            for j in range(n)
        )

    return solve


def wall_pairing(complex_data: ClusterComplexData) -> dict:
    """Every wall (an (n-1)-subset of a cluster) must lie in exactly two
    clusters; this is the pseudomanifold property of a complete simplicial
    fan."""
    counts: dict[tuple[int, ...], int] = {}
    for facet in complex_data.facets:
        for drop in range(len(facet)):
            wall = facet[:drop] + facet[drop + 1 :]
            counts[wall] = counts.get(wall, 0) + 1
    bad = {w: c for w, c in counts.items() if c != 2}
    return {"walls": len(counts), "all_paired": not bad, "violations": bad}


def coverage_check(
    complex_data: ClusterComplexData, samples: int = 1000, rng_seed: int = 11
) -> dict:
    """Randomized completeness and disjointness probe: every sampled vector
    lies in at least one cone, and in exactly one when some containing cone
    holds it strictly inside."""
    import random

    ap = complex_data.ap
    n = ap.n
    rng = random.Random(rng_seed)
    solvers = [_cone_solver(ap.rs, facet) for facet in complex_data.facets]
    covered_once = 0
    for _ in range(samples):
        vector = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        if not any(vector):
            vector[0] = Fraction(1)
        hits = 0
        interior = False
        for solve in solvers:
            coeffs = solve(vector)
            if all(c >= 0 for c in coeffs):
                hits += 1
                if all(c > 0 for c in coeffs):
                    interior = True
        assert hits >= 1, f"vector {vector} escaped the fan"
        if interior:
            assert hits == 1, f"interior vector {vector} hit {hits} cones"
            covered_once += 1
    return {"samples": samples, "interior_hits": covered_once, "complete": True}


def refinement_check(
    complex_data: ClusterComplexData, group: WeylGroup
) -> dict:
    """Push every cluster cone through the linear map sending the i-th
    simple root to (sign of its bipartition class) times the i-th fundamental
    weight; then each Weyl chamber must land inside a single image cone."""
    ap = complex_data.ap
    rs = ap.rs
    n = rs.n
    plus, _ = ap.parts
    weights = weight_data(rs).fundamental_weights

    def push(coords: Sequence[int]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * n
        for i, c in enumerate(coords):
            if not c:
                continue
            sign = 1 if i in plus else -1
            for j in range(n):
                out[j] += sign * c * weights[i][j]
        return tuple(out)

    solvers = []
    for facet in complex_data.facets:
        columns = [push(rs.roots[idx].coords) for idx in facet]
        matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
        inverse_cols = [
            solve_linear(matrix, [1 if i == k else 0 for i in range(n)])
            for k in range(n)
        ]
        solvers.append(inverse_cols)

    def members(vector: Sequence[Fraction]) -> set[int]:
        out = set()
        for c, inverse_cols in enumerate(solvers):
            coeffs = [
                sum(inverse_cols[k][j] * vector[k] for k in range(n))
                for j in range(n)
            ]
            if all(x >= 0 for x in coeffs):
                out.add(c)
        return out

    per_cone: dict[int, int] = {}
    for w in range(len(group)):
        rays = [group.act_rational(w, weights[i]) for i in range(n)]
        common = members(rays[0])
        for ray in rays[1:]:
            common &= members(ray)
        assert len(common) == 1, f"chamber {w} lies in cones {common}"
        home = common.pop()
        per_cone[home] = per_cone.get(home, 0) + 1
    assert sum(per_cone.values()) == len(group)
    return {
        "cones_used": len(per_cone),
        "cones_total": len(complex_data.facets),
        "regions": len(group),
        "max_regions_in_cone": max(per_cone.values()),
        "regions_per_cone": dict(sorted(per_cone.items())),
    }


def fan_checks(
    complex_data: ClusterComplexData,
    group: WeylGroup | None = None,
    samples: int = 1000,
    rng_seed: int = 11,
) -> dict:
    report: dict = {"wall_pairing": wall_pairing(complex_data)}
    if complex_data.ap.n <= 3:
        report["coverage"] = coverage_check(complex_data, samples, rng_seed)
    if group is not None:
        report["refinement"] = refinement_check(complex_data, group)
    return report


# -- export -------------------------------------------------------------------------


def polytope_json(poly: AssociahedronPolytope) -> str:
    rs = poly.ap.rs
    facet_rows = [
        {
            "root": list(rs.roots[idx].coords),
            "rhs": str(poly.support(idx)),
        }
        for idx in poly.ap.indices
    ]
    incidence = []
    for cluster in poly.facets:
        incidence.append([poly.ap.position[idx] for idx in cluster])
    return json.dumps(
        {
            "facets": facet_rows,
            "vertices": [[str(q) for q in v] for v in poly.vertices],
            "incidence": incidence,
        },
        indent=1,
    )


def polytope_off(poly: AssociahedronPolytope) -> str:
    """OFF text for the three-dimensional polytopes; float coordinates are
    fine here because the format is for external viewers only."""
    if poly.ap.n != 3:
        raise ValueError("OFF export is for 3-dimensional polytopes")
    verts = [[float(q) for q in v] for v in poly.vertices]
    faces = []
    for idx in poly.ap.indices:
        ring = [v for v, cluster in enumerate(poly.facets) if idx in cluster]
        normal = poly.ap.rs.roots[idx].coords
        center = [sum(verts[v][k] for v in ring) / len(ring) for k in range(3)]
        u = [verts[ring[0]][k] - center[k] for k in range(3)]
        w = [
            normal[1] * u[2] - normal[2] * u[1],
            normal[2] * u[0] - normal[0] * u[2],
            normal[0] * u[1] - normal[1] * u[0],
        ]
        ring.sort(
            key=lambda v: math.atan2(
                sum((verts[v][k] - center[k]) * w[k] for k in range(3)),
                sum((verts[v][k] - center[k]) * u[k] for k in range(3)),
            )
        )
        faces.append(ring)
    edge_count = len(poly.edges())
    lines = ["OFF", f"{len(verts)} {len(faces)} {edge_count}"]
    for v in verts:
        lines.append(" ".join(f"{x:.6f}" for x in v))
    for ring in faces:
        lines.append(" ".join(str(x) for x in [len(ring), *ring]))
    return "\n".join(lines) + "\n"
