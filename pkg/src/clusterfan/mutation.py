"""Seed mutation: exchange matrices, clusters of Laurent polynomials, and
breadth-first exploration of the exchange graph.

A seed couples an m-by-n extended exchange matrix with n cluster variables
and m-n frozen variables, all living in one ambient Laurent ring.  Mutation
in direction k replaces the k-th cluster variable via the exchange relation
(product over positive column entries plus product over negative ones,
divided exactly by the old variable) and transforms the matrix.  Seeds are
compared through a canonical form that sorts the cluster and permutes the
matrix accordingly, so the exchange graph is found by plain BFS.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from . import cartan as cartan_mod
from .cartan import DynkinType
from .laurent import LaurentPoly
from .linalg import matrix_rank
from .roots import RootSystem


class MutationBudgetExceeded(RuntimeError):
    """Exploration hit its seed budget; the partial record is attached."""

    def __init__(self, message: str, partial: "MutationGraph | None" = None):
        super().__init__(message)
        self.partial = partial


class Inconclusive(RuntimeError):
    """Finite-type detection ran out of budget without a witness."""


class NotAlmostPositive(ValueError):
    """A denominator vector is neither a positive root nor a negated simple."""


def skew_symmetrizer(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Minimal positive integers d with d_i b_ij = -d_j b_ji for a square
    integer matrix with zero diagonal; raises ValueError if none exist."""
    n = len(rows)
    for i in range(n):
        if rows[i][i] != 0:
            raise ValueError(f"diagonal entry b[{i}][{i}] = {rows[i][i]} nonzero")
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise ValueError(f"zero pattern broken at ({i},{j})")
            if rows[i][j] * rows[j][i] > 0:
                raise ValueError(f"entries at ({i},{j}) share a sign")
    d: list[Fraction | None] = [None] * n
    for seed in range(n):
        if d[seed] is not None:
            continue
        d[seed] = Fraction(1)
        component = [seed]
        queue = [seed]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i == j or rows[i][j] == 0:
                    continue
                candidate = -d[i] * rows[i][j] / rows[j][i]
                if d[j] is None:
                    d[j] = candidate
                    component.append(j)
                    queue.append(j)
                elif d[j] != candidate:
                    raise ValueError(f"not skew-symmetrizable at edge ({i},{j})")
        from math import gcd, lcm

        scale = lcm(*(d[i].denominator for i in component))
        values = [int(d[i] * scale) for i in component]
        g = 0
        for v in values:
            g = gcd(g, v)
        for i, v in zip(component, values):
            d[i] = Fraction(v // g)
    return tuple(int(x) for x in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    """An m-by-n extended exchange matrix; the top n-by-n principal part must
    be skew-symmetrizable.

    A genuinely extended matrix (m > n) must in addition have full column
    rank, so that the frozen rows pin down the coefficients.  Square matrices
    are exempt: a skew-symmetrizable matrix of odd size is always singular,
    and coefficient-free seeds such as the one attached to a rank-3 Cartan
    matrix are still perfectly good starting points for mutation."""

    rows: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        m = len(rows)
        if m < self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"need an m>=n matrix with {self.n} columns")
        skew_symmetrizer([r[: self.n] for r in rows[: self.n]])
        if m > self.n and matrix_rank(rows) != self.n:
            raise ValueError("extended exchange matrix must have full column rank")

    @property
    def m(self) -> int:
        return len(self.rows)

    def principal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r[: self.n] for r in self.rows[: self.n])

    def mutate(self, k: int) -> "ExchangeMatrix":
        return ExchangeMatrix(matrix_mutate(self.rows, k), self.n)


def matrix_mutate(
    rows: Sequence[Sequence[int]], k: int
) -> tuple[tuple[int, ...], ...]:
    """Matrix mutation in direction k (0-based): entries in row or column k
    flip sign; an entry b_ij with b_ik b_kj > 0 moves by |b_ik| b_kj."""
    m = len(rows)
    n = len(rows[0])
    if not 0 <= k < n:
        raise ValueError(f"direction {k} out of range for {n} columns")
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            b = rows[i][j]
            if i == k or j == k:
                row.append(-b)
            elif rows[i][k] * rows[k][j] > 0:
                row.append(b + abs(rows[i][k]) * rows[k][j])
            else:
                row.append(b)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix
    cluster: tuple[LaurentPoly, ...]
    frozen: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.cluster) != self.matrix.n:
            raise ValueError("cluster size must equal the number of columns")
        if len(self.frozen) != self.matrix.m - self.matrix.n:
            raise ValueError("frozen count must equal m - n")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.cluster[0].variables


def initial_seed(
    btilde: Sequence[Sequence[int]],
    cluster_names: Sequence[str],
    frozen_names: Sequence[str] = (),
) -> Seed:
    """Fresh seed whose cluster and frozen variables are the generators of
    the ambient Laurent ring named by the given identifiers."""
    ambient = tuple(cluster_names) + tuple(frozen_names)
    gens = LaurentPoly.ring(ambient)
    n = len(cluster_names)
    return Seed(
        ExchangeMatrix(tuple(tuple(r) for r in btilde), n),
        gens[:n],
        gens[n:],
    )


def seed_mutate(seed: Seed, k: int) -> Seed:
    """Mutate a seed in direction k via the exchange relation."""
    n = seed.matrix.n
    if not 0 <= k < n:
        raise ValueError(f"direction {k} out of range")
    ambient = seed.variables
    pos = LaurentPoly.one(ambient)
    neg = LaurentPoly.one(ambient)
    for i, row in enumerate(seed.matrix.rows):
        b = row[k]
        if b == 0:
            continue
        factor = seed.cluster[i] if i < n else seed.frozen[i - n]
        if b > 0:
            pos = pos * factor**b
        else:
            neg = neg * factor ** (-b)
    new_var = (pos + neg).exact_div(seed.cluster[k])
    cluster = list(seed.cluster)
    cluster[k] = new_var
    return Seed(seed.matrix.mutate(k), tuple(cluster), seed.frozen)


def canonical_key(seed: Seed) -> tuple:
    """Canonical form: cluster sorted by canonical text, with the same
    permutation applied to matrix columns and the top n rows (frozen rows
    keep their order, their columns are permuted)."""
    n = seed.matrix.n
    texts = [v.text() for v in seed.cluster]
    if len(set(texts)) != n:
        raise ValueError("cluster variables within a seed must be distinct")
    order = sorted(range(n), key=lambda i: texts[i])
    matrix = seed.matrix.rows
    permuted_top = tuple(
        tuple(matrix[order[i]][order[j]] for j in range(n)) for i in range(n)
    )
    permuted_frozen = tuple(
        tuple(row[order[j]] for j in range(n)) for row in matrix[n:]
    )
    return (tuple(texts[i] for i in order), permuted_top + permuted_frozen)


@dataclass
class MutationGraph:
    seeds: list[Seed]
    edges: list[tuple[int, int, int]]  # (seed index, direction, seed index)
    variables: dict[str, LaurentPoly]  # canonical text -> value
    closed: bool

    def cluster_variables(self) -> list[LaurentPoly]:
        return list(self.variables.values())


def explore(seed: Seed, budget: int = 10**5) -> MutationGraph:
    """BFS over the exchange graph up to canonical equivalence.

    Raises MutationBudgetExceeded (with the partial graph attached) if more
    than `budget` seeds appear.
    """
    record = MutationGraph([seed], [], {}, False)
    index = {canonical_key(seed): 0}
    for v in seed.cluster:
        record.variables.setdefault(v.text(), v)
    frontier = [0]
    while frontier:
        fresh = []
        for u in frontier:
            current = record.seeds[u]
            for k in range(current.matrix.n):
                image = seed_mutate(current, k)
                key = canonical_key(image)
                v = index.get(key)
                if v is None:
                    v = len(record.seeds)
                    if v >= budget:
                        raise MutationBudgetExceeded(
                            f"exchange graph exceeded {budget} seeds", partial=record
                        )
                    index[key] = v
                    record.seeds.append(image)
                    fresh.append(v)
                    for var in image.cluster:
                        record.variables.setdefault(var.text(), var)
                if u <= v:
                    record.edges.append((u, k, v))
        frontier = fresh
    record.closed = True
    return record


def alternating_chain(
    btilde: Sequence[Sequence[int]], names: Sequence[str] = ("x", "y")
) -> tuple[list[Seed], list[LaurentPoly]]:
    """Mutate a rank-2 seed alternately in directions 0,1,0,1,... until the
    canonical form returns to the start.  Returns the seed cycle (start
    included once) and every distinct variable in order of first appearance."""
    seed = initial_seed(btilde, names)
    if seed.matrix.n != 2:
        raise ValueError("alternating_chain needs a rank-2 seed")
    start = canonical_key(seed)
    seeds = [seed]
    appeared: list[LaurentPoly] = list(seed.cluster)
    direction = 0
    while True:
        seed = seed_mutate(seed, direction)
        direction = 1 - direction
        if canonical_key(seed) == start:
            break
        seeds.append(seed)
        for v in seed.cluster:
            if all(v != w for w in appeared):
                appeared.append(v)
        if len(seeds) > 1000:
            raise MutationBudgetExceeded("rank-2 chain failed to close")
    return seeds, appeared


# -- finite type detection ----------------------------------------------------


def _principal_canonical(rows: tuple[tuple[int, ...], ...]) -> tuple:
    n = len(rows)
    best = None
    for perm in permutations(range(n)):
        flat = tuple(rows[perm[i]][perm[j]] for i in range(n) for j in range(n))
        for candidate in (flat, tuple(-x for x in flat)):
            if best is None or candidate < best:
                best = candidate
    return best


def _cartan_companion(rows: tuple[tuple[int, ...], ...]):
    """If every row is uniformly signed off the diagonal, build the Cartan
    matrix candidate 2I - |B| and return it, else None."""
    n = len(rows)
    for i in range(n):
        signs = {1 if x > 0 else -1 for x in rows[i] if x}
        if len(signs) > 1:
            return None
    return tuple(
        tuple(2 if i == j else -abs(rows[i][j]) for j in range(n)) for i in range(n)
    )


def detect_finite_type(
    rows: Sequence[Sequence[int]] | ExchangeMatrix, budget: int = 10**4
) -> DynkinType | None:
    """Classify the mutation class of a square exchange matrix.

    Returns the Dynkin type if the class contains a bipartite matrix built
    from a finite-type Cartan matrix, None if some class member has an entry
    pair with |b_ij b_ji| > 3 (an infinite-type witness), and raises
    Inconclusive if the budget runs out first.
    """
    if isinstance(rows, ExchangeMatrix):
        rows = rows.principal()
    start = tuple(tuple(int(x) for x in r) for r in rows)
    skew_symmetrizer(start)  # validates shape
    n = len(start)
    seen = {_principal_canonical(start)}
    frontier = [start]
    matrices = [start]
    while frontier:
        fresh = []
        for matrix in frontier:
            for k in range(n):
                image = matrix_mutate(matrix, k)
                if any(
                    abs(image[i][j] * image[j][i]) > 3
                    for i in range(n)
                    for j in range(i + 1, n)
                ):
                    return None
                key = _principal_canonical(image)
                if key not in seen:
                    seen.add(key)
                    if len(seen) > budget:
                        raise Inconclusive(
                            f"mutation class exceeded {budget} matrices"
                        )
                    fresh.append(image)
                    matrices.append(image)
        frontier = fresh
    for matrix in matrices:
        candidate = _cartan_companion(matrix)
        if candidate is None:
            continue
        try:
            if cartan_mod.validate_finite_type(candidate):
                return cartan_mod.classify(candidate)
        except (cartan_mod.NotCartanShape, cartan_mod.NotSymmetrizable):
            continue
    raise Inconclusive(
        "mutation class closed without a finite Cartan companion; "
        "this contradicts the finite-type classification"
    )


# -- denominators and positivity ------------------------------------------------


def denominator_root(variable: LaurentPoly, rs: RootSystem) -> int:
    """Index (in rs.roots) of the almost-positive root given by the
    denominator vector of a cluster variable with respect to the initial
    cluster (the first rs.n ambient variables)."""
    n = rs.n
    mins = variable.min_exponents()[:n]
    coords = tuple(-m for m in mins)
    if all(c >= 0 for c in coords) and any(coords):
        idx = rs.index.get(coords)
        if idx is not None and rs.is_positive(idx):
            return idx
        raise NotAlmostPositive(f"denominator vector {coords} is not a positive root")
    negatives = [i for i, c in enumerate(coords) if c < 0]
    if len(negatives) == 1 and coords[negatives[0]] == -1 and sum(map(abs, coords)) == 1:
        return rs.negate(rs.simple_index[negatives[0]])
    raise NotAlmostPositive(f"denominator vector {coords} is not almost positive")


def observe_positivity(variables: Iterable[LaurentPoly] | MutationGraph) -> dict:
    """Report (never assert) the positivity of coefficients."""
    if isinstance(variables, MutationGraph):
        variables = variables.cluster_variables()
    negatives = []
    count = 0
    for v in variables:
        count += 1
        if any(c < 0 for c in v.coefficients()):
            negatives.append(v.text())
    return {
        "variables": count,
        "all_positive": not negatives,
        "negative_examples": negatives[:10],
    }


# -- serialization ----------------------------------------------------------------


def seed_to_dict(seed: Seed) -> dict:
    return {
        "m": seed.matrix.m,
        "n": seed.matrix.n,
        "btilde": [list(r) for r in seed.matrix.rows],
        "cluster": [v.text() for v in seed.cluster],
        "frozen": [v.text() for v in seed.frozen],
        "variables": list(seed.variables),
    }


def seed_from_dict(data: dict) -> Seed:
    """Rebuild a seed from its JSON form.  Cluster entries that are bare
    identifiers become fresh generators; anything else is parsed as a Laurent
    expression over the ambient variables (the "variables" list, defaulting
    to cluster + frozen names)."""
    from .laurent import parse_laurent

    btilde = data["btilde"]
    cluster_src = data["cluster"]
    frozen_src = data.get("frozen", [])
    ambient = tuple(data.get("variables") or (list(cluster_src) + list(frozen_src)))
    n = int(data["n"])
    if len(cluster_src) != n:
        raise ValueError("cluster length disagrees with n")

    def build(source: str) -> LaurentPoly:
        if source in ambient:
            return LaurentPoly.variable(ambient, source)
        return parse_laurent(ambient, source)

    return Seed(
        ExchangeMatrix(tuple(tuple(r) for r in btilde), n),
        tuple(build(s) for s in cluster_src),
        tuple(build(s) for s in frozen_src),
    )


def graph_to_dot(record: MutationGraph) -> str:
    lines = ["graph exchange {"]
    for i, seed in enumerate(record.seeds):
        label = ", ".join(sorted(v.text() for v in seed.cluster))
        lines.append(f'  s{i} [label="{label}"];')
    for u, k, v in record.edges:
        lines.append(f'  s{u} -- s{v} [label="{k + 1}"];')
    lines.append("}")
    return "\n".join(lines)


def graph_to_dict(record: MutationGraph) -> dict:
    return {
        "seeds": [seed_to_dict(s) for s in record.seeds],
        "edges": [list(e) for e in record.edges],
        "variables": sorted(record.variables),
        "closed": record.closed,
    }
