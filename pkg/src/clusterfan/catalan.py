"""Four independent counts that all land on the same generalized Catalan
number: antichains in the root poset, noncrossing-partition lattice elements,
orbits of the Weyl group on a discrete torus, and positive regions of the Shi
arrangement.  The module computes each observation from scratch so that the
cross-interpretation equalities are genuine checks, not restatements.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .assoc import n_phi, narayana
from .cartan import dynkin_name
from .coxeter import AbsoluteInterval, BudgetExceeded, WeylGroup
from .linalg import SingularMatrix, solve_linear
from .roots import RootPoset, RootSystem, coxeter_data


def count_antichains(poset: RootPoset) -> tuple[int, tuple[int, ...]]:
    """Total number of antichains (the empty one included) and the count per
    size, by backtracking over pairwise incomparability."""
    n = poset.rs.n
    sizes = [0] * (n + 1)
    sizes[0] = 1

    def grow(last: int, members: list[int]):
        for nxt in range(last + 1, poset.size):
            if all(poset.incomparable(m, nxt) for m in members):
                sizes[len(members) + 1] += 1
                grow(nxt, members + [nxt])

    grow(-1, [])
    return sum(sizes), tuple(sizes)


def nc_lattice_stats(interval: AbsoluteInterval) -> dict:
    """Element and rank counts of the interval below a Coxeter element in
    absolute order (the noncrossing partition lattice of the type)."""
    total = len(interval.elements)
    assert sum(interval.rank_counts) == total
    assert interval.rank_counts[0] == 1
    return {"total": total, "rank_counts": interval.rank_counts}


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.groups = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry
            self.groups -= 1


def torus_orbits(
    rs: RootSystem, generators: str = "simple", budget: int = 10**7
) -> int:
    """Number of Weyl orbits on the coordinate lattice modulo h+1.

    A simple reflection acts on a coordinate vector by subtracting its Cartan
    row pairing from one coordinate, everything mod h+1, so the whole orbit
    structure is finite arithmetic.  With generators="all" the union-find is
    re-run with every reflection, which must not change the partition.
    """
    n = rs.n
    h = coxeter_data(rs).coxeter_number
    mod = h + 1
    size = mod**n
    if size > budget:
        raise BudgetExceeded(f"torus has {size} points, budget {budget}")

    if generators == "simple":
        matrices = [rs.reflection_matrix(rs.simple_index[i]) for i in range(n)]
    elif generators == "all":
        matrices = [
            rs.reflection_matrix(i)
            for i in range(len(rs.roots))
            if rs.is_positive(i)
        ]
    else:
        raise ValueError("generators must be 'simple' or 'all'")

    uf = _UnionFind(size)
    point = [0] * n
    for code in range(size):
        value = code
        for i in range(n):
            point[i] = value % mod
            value //= mod
        for matrix in matrices:
            image = 0
            weight = 1
            for i in range(n):
                coordinate = sum(matrix[i][j] * point[j] for j in range(n)) % mod
                image += coordinate * weight
                weight *= mod
            uf.union(code, image)
    return uf.groups


# -- Shi arrangement, rank <= 3 ------------------------------------------------------


@dataclass(frozen=True)
class _Region:
    """An open region, described by strict inequalities a.t < b and carrying
    the vertex set of its closure for fast side tests."""

    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    vertices: tuple[tuple[Fraction, ...], ...]


def _enumerate_vertices(
    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...], n: int
) -> tuple[tuple[Fraction, ...], ...]:
    vertices = set()
    for subset in combinations(range(len(constraints)), n):
        matrix = [list(constraints[i][0]) for i in subset]
        rhs = [constraints[i][1] for i in subset]
        try:
            point = solve_linear(matrix, rhs)
        except SingularMatrix:
            continue
        if all(
            sum(a * t for a, t in zip(coeffs, point)) <= b
            for coeffs, b in constraints
        ):
            vertices.add(tuple(point))
    return tuple(sorted(vertices))


def _split(region: _Region, normal: tuple[Fraction, ...], n: int) -> list[_Region]:
    values = [
        sum(a * t for a, t in zip(normal, v)) - 1 for v in region.vertices
    ]
    if all(v <= 0 for v in values) or all(v >= 0 for v in values):
        return [region]
    out = []
    for side in (
        (normal, Fraction(1)),
        (tuple(-a for a in normal), Fraction(-1)),
    ):
        constraints = region.constraints + (side,)
        vertices = _enumerate_vertices(constraints, n)
        if not vertices:
            continue
        centroid = [
            sum(v[i] for v in vertices) / len(vertices) for i in range(n)
        ]
        strict = all(
            sum(a * t for a, t in zip(coeffs, centroid)) < b
            for coeffs, b in constraints
        )
        if strict:
            out.append(_Region(constraints, vertices))
    assert len(out) == 2, "a genuinely cut region must leave two full pieces"
    return out


def shi_positive_regions(rs: RootSystem) -> int:
    """Count the regions of the doubled arrangement that lie in the cone
    where all simple-root pairings are positive.

    In the coordinates t_i = (pairing of x with the i-th simple root) the
    positive cone is the open orthant, the zero hyperplanes miss it, and the
    level-one hyperplane of a root is the locus (root coordinates).t = 1.
    Regions are grown by inserting hyperplanes one at a time inside the box
    0 < t_i < 2(h+1), which contains every vertex of the arrangement.
    """
    n = rs.n
    if n > 3:
        raise ValueError("exact region enumeration supported through rank 3")
    h = coxeter_data(rs).coxeter_number
    bound = Fraction(2 * (h + 1))
    base: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for i in range(n):
        base.append(
            (tuple(Fraction(-1 if j == i else 0) for j in range(n)), Fraction(0))
        )
        base.append(
            (tuple(Fraction(1 if j == i else 0) for j in range(n)), bound)
        )
    start = tuple(base)
    regions = [_Region(start, _enumerate_vertices(start, n))]
    for root in rs.positive_roots():
        normal = tuple(Fraction(c) for c in root.coords)
        regions = [r for region in regions for r in _split(region, normal, n)]
    return len(regions)


# -- the consolidated report ----------------------------------------------------------


def enumeration_report(
    rs: RootSystem,
    group: WeylGroup | None = None,
    interval: AbsoluteInterval | None = None,
    torus_budget: int = 10**7,
) -> list[dict]:
    """One row per (interpretation, statistic): observed against expected.

    Expected values come from the exponent product formula and the closed
    Narayana forms; every interpretation is computed independently of them.
    """
    expected_total = n_phi(rs)
    expected_profile = narayana(rs)
    rows: list[dict] = []

    name = dynkin_name(rs.dynkin)

    def add(interpretation: str, k, observed, expected):
        rows.append(
            {
                "type": name,
                "interpretation": interpretation,
                "k": k,
                "observed": observed,
                "expected": expected,
                "match": observed == expected,
            }
        )

    total, profile = count_antichains(RootPoset(rs))
    add("antichains", "total", total, expected_total)
    for k, size in enumerate(profile):
        add("antichains", k, size, expected_profile[k])

    if interval is not None:
        stats = nc_lattice_stats(interval)
        add("noncrossing", "total", stats["total"], expected_total)
        for k, size in enumerate(stats["rank_counts"]):
            add("noncrossing", k, size, expected_profile[k])

    h = coxeter_data(rs).coxeter_number
    if (h + 1) ** rs.n <= torus_budget:
        add("torus_orbits", "total", torus_orbits(rs), expected_total)

    if rs.n <= 3:
        add("shi_positive", "total", shi_positive_regions(rs), expected_total)

    return rows


def report_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer,
        fieldnames=["type", "interpretation", "k", "observed", "expected", "match"],
    )
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
