"""Association-scheme analytics for Hermitian codes.

Inner distributions are exact rank histograms of the code span; dual inner
distributions come from two independent routes that must agree: enumeration
of the dual code, and the eigenvalue transform A'_k = sum_i Q_k(i) A_i with
Q computed by exact character sums over the full matrix space.  Character
values live in Z[zeta_p] with the vanishing-sum relation, never in floats.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .gf import FieldTower, make_tower
from .hermitian import HermCode, HermMatrix, form_matrix
from .linalg import rank_subfield_matrix

DEFAULT_BUDGET = 1_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


class ConsistencyError(RuntimeError):
    """A runtime cross-check that should be impossible to fail has failed."""


# -- cyclotomic integers -------------------------------------------------------


class CycloInt:
    """Element of Z[zeta_p] in the Z-basis 1, zeta, ..., zeta^{p-2}.

    Only what character sums need: construction from powers of zeta or from
    exponent counts, addition, and exact integrality testing via the relation
    1 + zeta + ... + zeta^{p-1} = 0.
    """

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Sequence[int]):
        if len(coords) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates")
        self.p = p
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, p: int) -> "CycloInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_zeta_power(cls, p: int, j: int) -> "CycloInt":
        j %= p
        if j < p - 1:
            coords = [0] * (p - 1)
            coords[j] = 1
            return cls(p, coords)
        return cls(p, (-1,) * (p - 1))

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> "CycloInt":
        """sum_j counts[j] * zeta^j for j in 0..p-1, reduced."""
        if len(counts) != p:
            raise ValueError(f"expected {p} exponent counts")
        top = counts[p - 1]
        return cls(p, [c - top for c in counts[: p - 1]])

    def __add__(self, other: "CycloInt") -> "CycloInt":
        if self.p != other.p:
            raise ValueError("mixed cyclotomic orders")
        return CycloInt(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.p, [-a for a in self.coords])

    def scaled(self, k: int) -> "CycloInt":
        return CycloInt(self.p, [k * a for a in self.coords])

    def is_rational_integer(self) -> bool:
        return not any(self.coords[1:])

    def as_int(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"not a rational integer: {self.coords}")
        return self.coords[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, CycloInt) and self.p == other.p
                and self.coords == other.coords)

    def __hash__(self) -> int:
        return hash((self.p, self.coords))

    def __repr__(self) -> str:
        return f"CycloInt(p={self.p}, {self.coords})"


def char_value(tower: FieldTower, x: int) -> CycloInt:
    """chi(x) = zeta_p^{Tr_{F_q/F_p}(x)} for x in F_q, a nontrivial character."""
    return CycloInt.from_zeta_power(tower.p, tower.prime_trace(x))


def conjugate_trace(a: HermMatrix, b: HermMatrix) -> int:
    """tr(A* B) = sum_{j,k} conj(A_{kj}) B_{kj}; lands in F_q for Hermitian pairs."""
    t = a.tower
    acc = 0
    for j in range(t.n):
        for k in range(t.n):
            x = a.rows[k][j]
            y = b.rows[k][j]
            if x and y:
                acc = t.add(acc, t.mul(t.frobenius(x, 1), y))
    if not t.in_subfield(acc, 1):
        raise ConsistencyError("trace form left F_q on a Hermitian pair")
    return acc


def pairing(a: HermMatrix, b: HermMatrix) -> CycloInt:
    """<A, B> = chi(tr(A* B))."""
    return char_value(a.tower, conjugate_trace(a, b))


# -- inner distributions ---------------------------------------------------------


def _span_walk(tower: FieldTower, gen_states: Sequence[Sequence[int]],
               start: Sequence[int] | None = None):
    """Yield the F_p-span of the given state vectors, one amortized add per step.

    The yielded list is a reused buffer; consumers must not keep references.
    """
    p = tower.p
    add = tower.add
    k = len(gen_states)
    width = len(gen_states[0]) if k else (len(start) if start else 0)
    cur = list(start) if start is not None else [0] * width
    yield cur
    if k == 0:
        return
    digits = [0] * k
    for _ in range(p ** k - 1):
        i = 0
        while digits[i] == p - 1:
            digits[i] = 0
            gs = gen_states[i]
            for idx in range(width):
                cur[idx] = add(cur[idx], gs[idx])
            i += 1
        digits[i] += 1
        gs = gen_states[i]
        for idx in range(width):
            cur[idx] = add(cur[idx], gs[idx])
        yield cur


def _rank_histogram(tower: FieldTower, gen_states: Sequence[Sequence[int]],
                    start: Sequence[int] | None = None) -> list[int]:
    from .linalg import nullity_of_code_columns
    n = tower.n
    ee = 2 * tower.e
    hist = [0] * (n + 1)
    for state in _span_walk(tower, gen_states, start):
        nullity = nullity_of_code_columns(tower, state)
        hist[n - nullity // ee] += 1
    return hist


def _histogram_chunk(args) -> list[int]:
    tower_spec, gen_states, start = args
    tower = _worker_tower((tower_spec["p"], tower_spec["e"], tower_spec["n"],
                           tuple(tower_spec["modulus"])))
    return _rank_histogram(tower, gen_states, start)


_WORKER_TOWERS: dict = {}


def _worker_tower(key) -> FieldTower:
    if key not in _WORKER_TOWERS:
        p, e, n, modulus = key
        _WORKER_TOWERS[key] = make_tower(p, e, n, modulus)
    return _WORKER_TOWERS[key]


def inner_distribution(code: HermCode, threads: int = 1) -> tuple[int, ...]:
    """Rank histogram of the code span (the inner distribution of an additive code)."""
    t = code.tower
    zero_state = [0] * t.m
    gen_states = [g.image_columns() for g in code.generators]
    if threads <= 1 or code.dim == 0:
        hist = _rank_histogram(t, gen_states, start=zero_state)
        return tuple(hist)
    # split on the most significant odometer digits; merged counts are
    # order-independent integer sums, so the result matches the serial path
    p = t.p
    split = 0
    while p ** split < threads and split < code.dim:
        split += 1
    top, rest = gen_states[code.dim - split:], gen_states[:code.dim - split]
    spec = t.to_dict()
    tasks = []
    width = len(gen_states[0])
    for combo in itertools.product(range(p), repeat=split):
        start = [0] * width
        for c, gs in zip(combo, top):
            for _ in range(c):
                start = [t.add(a, b) for a, b in zip(start, gs)]
        tasks.append((spec, rest, start))
    hist = [0] * (t.n + 1)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_histogram_chunk, tasks):
            hist = [a + b for a, b in zip(hist, part)]
    return tuple(hist)


def pairwise_inner_distribution(matrices: Sequence[HermMatrix],
                                budget: int = DEFAULT_BUDGET) -> tuple[Fraction, ...]:
    """A_i = |(C x C) on rank-i differences| / |C| for an arbitrary matrix set."""
    mats = list(matrices)
    if not mats:
        raise ValueError("empty set")
    if len(mats) ** 2 > budget:
        raise BudgetExceededError(f"{len(mats)}^2 pairs exceed budget {budget}")
    t = mats[0].tower
    n = t.n
    counts = [0] * (n + 1)
    for a in mats:
        for b in mats:
            rows = [[t.sub(x, y) for x, y in zip(ra, rb)]
                    for ra, rb in zip(a.rows, b.rows)]
            counts[rank_subfield_matrix(t, rows)] += 1
    return tuple(Fraction(c, len(mats)) for c in counts)


# -- eigenvalues by exact character sums -----------------------------------------


@dataclass(frozen=True)
class Eigenvalues:
    """Exact integer table Q[k][i] for the rank scheme on Hermitian matrices."""
    q: int
    n: int
    table: tuple[tuple[int, ...], ...]
    rank_counts: tuple[int, ...]  # |H_k|, the number of rank-k matrices

    def transform(self, inner: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(self.table[k][i] * int(a) for i, a in enumerate(inner))
                     for k in range(self.n + 1))


def _hermitian_matrix_basis(tower: FieldTower) -> list[list[int]]:
    """F_p-basis of the Hermitian matrix space, as flat row-major entry vectors."""
    n = tower.n
    out = []
    for j in range(n):
        for beta in tower.basis_over_prime(1):
            vec = [0] * (n * n)
            vec[j * n + j] = beta
            out.append(vec)
    for j in range(n):
        for k in range(j + 1, n):
            for beta in tower.basis_over_prime(2):
                vec = [0] * (n * n)
                vec[j * n + k] = beta
                vec[k * n + j] = tower.frobenius(beta, 1)
                out.append(vec)
    return out


def _congruence(tower: FieldTower, pmat: list[list[int]], b: HermMatrix) -> HermMatrix:
    """P* B P, a rank-preserving Hermitian congruence."""
    n = tower.n
    star = [[tower.frobenius(pmat[k][j], 1) for k in range(n)] for j in range(n)]

    def matmul(x, y):
        return [[_dot(tower, x[j], [y[r][k] for r in range(n)]) for k in range(n)]
                for j in range(n)]

    return HermMatrix(tower, matmul(matmul(star, list(map(list, b.rows))), pmat))


def _dot(tower: FieldTower, xs, ys):
    acc = 0
    for x, y in zip(xs, ys):
        if x and y:
            acc = tower.add(acc, tower.mul(x, y))
    return acc


def _random_invertible(tower: FieldTower, rng: random.Random) -> list[list[int]]:
    n = tower.n
    pool = tower.subfield_elements(2)
    while True:
        mat = [[rng.choice(pool) for _ in range(n)] for _ in range(n)]
        if rank_subfield_matrix(tower, mat) == n:
            return mat


def eigenvalues(tower: FieldTower, n: Optional[int] = None,
                budget: int = DEFAULT_BUDGET) -> Eigenvalues:
    """Exact Q_k(i) = sum over rank-k matrices A of chi(tr(A* B_i)).

    Every Q_k(i) is computed for two distinct rank-i representatives (the
    diagonal one and a seeded random congruence of it) and asserted equal,
    and asserted to be a rational integer in Z[zeta_p].  Cached per tower.
    """
    if n is not None and n != tower.n:
        raise ValueError(f"table is defined for the tower's n = {tower.n}")
    n = tower.n
    key = "eigenvalues"
    if key in tower.cache:
        return tower.cache[key]
    total = tower.q ** (n * n)
    if total > budget:
        raise BudgetExceededError(f"{total} Hermitian matrices exceed budget {budget}")

    p = tower.p
    reps: list[HermMatrix] = []
    for i in range(n + 1):
        rows = [[1 if (j == k and j < i) else 0 for k in range(n)] for j in range(n)]
        reps.append(HermMatrix(tower, rows))
    rng = random.Random(2024)
    pmat = _random_invertible(tower, rng)
    alt = [_congruence(tower, pmat, b) for b in reps]
    for i, m2 in enumerate(alt):
        if m2.rank() != i:
            raise ConsistencyError("congruence changed the rank of a representative")
    all_reps = reps + alt

    basis = _hermitian_matrix_basis(tower)
    # state = n*n matrix entries followed by tr(Delta* B) per representative;
    # both are additive, so the whole state rides the span odometer
    gen_states = []
    for vec in basis:
        n2 = n * n
        mat = HermMatrix(tower, [vec[r * n:(r + 1) * n] for r in range(n)])
        gen_states.append(list(vec) + [conjugate_trace(mat, b) for b in all_reps])

    trace_digit = {x: tower.prime_trace(x) for x in tower.subfield_elements(1)}
    nreps = len(all_reps)
    tallies = [[[0] * p for _ in range(n + 1)] for _ in range(nreps)]
    rank_counts = [0] * (n + 1)
    n2 = n * n
    for state in _span_walk(tower, gen_states):
        rows = [state[r * n:(r + 1) * n] for r in range(n)]
        rk = rank_subfield_matrix(tower, rows)
        rank_counts[rk] += 1
        for ridx in range(nreps):
            tallies[ridx][rk][trace_digit[state[n2 + ridx]]] += 1

    table = []
    for k in range(n + 1):
        row = []
        for i in range(n + 1):
            v1 = CycloInt.from_exponent_counts(p, tallies[i][k])
            v2 = CycloInt.from_exponent_counts(p, tallies[n + 1 + i][k])
            if v1 != v2:
                raise ConsistencyError(
                    f"Q_{k}({i}) depends on the rank-{i} representative: {v1} vs {v2}")
            if not v1.is_rational_integer():
                raise ConsistencyError(f"Q_{k}({i}) is not a rational integer: {v1}")
            row.append(v1.as_int())
        table.append(tuple(row))
    result = Eigenvalues(q=tower.q, n=n, table=tuple(table), rank_counts=tuple(rank_counts))
    for k in range(n + 1):
        if result.table[k][0] != rank_counts[k]:
            raise ConsistencyError("Q_k(0) must equal the number of rank-k matrices")
    tower.cache[key] = result
    return result


# -- dual inner distribution and designs ------------------------------------------


def dual_inner_distribution(code: HermCode, method: str = "dual-code",
                            budget: int = DEFAULT_BUDGET,
                            eig: Optional[Eigenvalues] = None) -> tuple[int, ...]:
    """A'_k, by dual-code enumeration or by the eigenvalue transform.

    Both methods return exact integers and are asserted non-negative,
    divisible by |C|, and normalized with A'_0 = |C|.
    """
    from .hermitian import dual_code

    size = code.size
    if method == "dual-code":
        dual = dual_code(code)
        if dual.size > budget:
            raise BudgetExceededError(f"dual has {dual.size} words, budget {budget}")
        hist = inner_distribution(dual)
        out = tuple(size * h for h in hist)
    elif method == "eigenvalues":
        if eig is None:
            eig = eigenvalues(code.tower, budget=budget)
        inner = inner_distribution(code)
        out = eig.transform(inner)
    else:
        raise ValueError(f"unknown method {method!r}")
    if out[0] != size or any(v < 0 or v % size for v in out):
        raise ConsistencyError(f"dual inner distribution fails basic constraints: {out}")
    return out


def design_strength(code: HermCode, budget: int = DEFAULT_BUDGET) -> int:
    """Largest t with A'_1 = ... = A'_t = 0 (0 when A'_1 != 0)."""
    dual = dual_inner_distribution(code, "dual-code", budget=budget)
    t = 0
    for k in range(1, code.n + 1):
        if dual[k]:
            break
        t = k
    return t


@dataclass
class Distribution:
    """Exact inner and dual inner distribution of an additive code."""
    inner: tuple[int, ...]
    dual: tuple[int, ...]

    @property
    def min_distance(self) -> int:
        return next((i for i, a in enumerate(self.inner) if i and a), 0)


def analyze(code: HermCode, budget: int = DEFAULT_BUDGET, threads: int = 1) -> Distribution:
    inner = inner_distribution(code, threads=threads)
    if inner[0] != 1 or sum(inner) != code.size:
        raise ConsistencyError(f"inner distribution fails basic constraints: {inner}")
    dual = dual_inner_distribution(code, "dual-code", budget=budget)
    return Distribution(inner=inner, dual=dual)


# -- negative q-binomials and the closed-form distribution -------------------------


def neg_q_binom(m: int, l: int, q: int) -> int:
    """Gaussian binomial evaluated at -q; exact integer.

    l > m returns 0 by the empty-Gaussian convention so closed-form sums
    need no boundary branches.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if l < 0 or m < 0:
        raise ValueError("arguments must be non-negative")
    if l > m:
        return 0
    val = Fraction(1)
    for i in range(1, l + 1):
        val *= Fraction((-q) ** (m - i + 1) - 1, (-q) ** i - 1)
    if val.denominator != 1:
        raise AssertionError(f"negative q-binomial ({m},{l}) at q={q} not integral")
    return int(val)


def theorem_distribution(n: int, d: int, q: int, size: int) -> tuple[int, ...]:
    """Predicted inner distribution (A_0..A_n) of a maximum d-code that is an
    (n-d)-design:

      A_{n-i} = sum_{j=i}^{n-d} (-1)^{j-i} (-q)^{C(j-i,2)} [j i][n j]
                 (size/q^{nj} * (-1)^{(n+1)j} - 1)
    """
    out = [0] * (n + 1)
    out[0] = 1
    for i in range(n):
        acc = Fraction(0)
        for j in range(i, n - d + 1):
            sign = (-1) ** (j - i)
            binoms = neg_q_binom(j, i, q) * neg_q_binom(n, j, q)
            power = (-q) ** ((j - i) * (j - i - 1) // 2)
            inner = Fraction(size, q ** (n * j)) * ((-1) ** ((n + 1) * j)) - 1
            acc += sign * power * binoms * inner
        if acc.denominator != 1:
            raise AssertionError("closed-form distribution not integral")
        out[n - i] = int(acc)
    return tuple(out)


def full_rank_residue(n: int, d: int, q: int, size: int) -> int:
    """A_n mod q^{n-d} from the closed-form distribution."""
    return theorem_distribution(n, d, q, size)[n] % (q ** (n - d))


def delta_identity_holds(k: int, i: int, q: int) -> bool:
    """sum_{j=i}^k (-1)^{j-i} (-q)^{C(j-i,2)} [j i][k j] == delta_{k,i}."""
    acc = 0
    for j in range(i, k + 1):
        acc += ((-1) ** (j - i) * (-q) ** ((j - i) * (j - i - 1) // 2)
                * neg_q_binom(j, i, q) * neg_q_binom(k, j, q))
    return acc == (1 if k == i else 0)


# -- design characterization by extension counting ---------------------------------


@dataclass
class ExtensionCountReport:
    """Counts of codewords whose Gram form restricts to H on each t-subspace."""
    t: int
    uniform: bool
    common_count: Optional[int]
    counts: dict
    witnesses: list = field(default_factory=list)


def _subspace_representatives(tower: FieldTower, t: int) -> list[tuple[tuple[int, ...], ...]]:
    """Canonical RREF bases of all t-dimensional subspaces of F_{q^2}^n."""
    n = tower.n
    elems = tower.subfield_elements(2)
    out = []
    for pivots in itertools.combinations(range(n), t):
        free_pos = []
        for r in range(t):
            for c in range(pivots[r] + 1, n):
                if c not in pivots:
                    free_pos.append((r, c))
        for values in itertools.product(elems, repeat=len(free_pos)):
            rows = [[0] * n for _ in range(t)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_pos, values):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def _hermitian_forms(tower: FieldTower, t: int) -> list[tuple[int, ...]]:
    """All t x t Hermitian matrices, flattened row-major."""
    mats = []
    diag_choices = [tower.subfield_elements(1)] * t
    off_positions = [(j, k) for j in range(t) for k in range(j + 1, t)]
    off_choices = [tower.subfield_elements(2)] * len(off_positions)
    for diag in itertools.product(*diag_choices):
        for offs in itertools.product(*off_choices):
            rows = [[0] * t for _ in range(t)]
            for j, v in enumerate(diag):
                rows[j][j] = v
            for (j, k), v in zip(off_positions, offs):
                rows[j][k] = v
                rows[k][j] = tower.frobenius(v, 1)
            mats.append(tuple(c for row in rows for c in row))
    return mats


def design_by_extension_count(code: HermCode, t: int,
                              budget: int = DEFAULT_BUDGET) -> ExtensionCountReport:
    """For every t-subspace U and Hermitian form H on U, count codewords whose
    Gram form restricted to U (in the canonical basis of U) equals H.

    The code is a t-design iff all counts coincide.
    """
    tower = code.tower
    if t < 1 or t > tower.n:
        raise ValueError(f"t must be in 1..{tower.n}")
    subspaces = _subspace_representatives(tower, t)
    if code.size * len(subspaces) > budget:
        raise BudgetExceededError(
            f"{code.size} words x {len(subspaces)} subspaces exceed budget {budget}")
    forms = _hermitian_forms(tower, t)
    counts = {(u, h): 0 for u in subspaces for h in forms}
    n = tower.n
    for f in code.iter_span():
        gram = form_matrix(f)
        for u in subspaces:
            conj = [tuple(tower.frobenius(c, 1) for c in row) for row in u]
            restricted = []
            for a in range(t):
                ga = [_dot(tower, u[a], [gram[j][k] for j in range(n)]) for k in range(n)]
                for b in range(t):
                    restricted.append(_dot(tower, ga, conj[b]))
            counts[(u, tuple(restricted))] += 1
    values = set(counts.values())
    uniform = len(values) == 1
    witnesses = []
    if not uniform:
        by_val: dict[int, tuple] = {}
        for kpair, v in counts.items():
            by_val.setdefault(v, kpair)
            if len(by_val) == 2:
                break
        for v, (u, h) in sorted(by_val.items()):
            witnesses.append({"subspace": u, "form": h, "count": v})
    return ExtensionCountReport(
        t=t, uniform=uniform,
        common_count=values.pop() if uniform else None,
        counts=counts, witnesses=witnesses)
