"""Brute-force congruence machinery over small prime fields.

Matrices are handled internally as flat row-major tuples of residues; the
public functions convert to and from :class:`~sigma_congruence.matrix.Matrix`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

from .errors import CapExceeded, UnsupportedField
from .field import GF, FieldDescriptor, Scalar, sqrt_in_field
from .invariant import canonical_form, congruence_transform, d_invariant, sigma
from .matrix import Matrix, derive_rng

MAX_N = 3
MAX_P = 7
DEFAULT_MAX_P = 5
REDUCTION_MAX_P = 5


def gl_order(n, p):
    """|GL(n, p)| = prod_{k<n} (p^n - p^k)."""
    order = 1
    for k in range(n):
        order *= p**n - p**k
    return order


def _check_prime_field(p):
    try:
        return GF(p)
    except ValueError as exc:
        raise UnsupportedField(str(exc)) from None


def _check_caps(n, p, max_p):
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise CapExceeded(f"n must be in 1..{MAX_N}, got {n}")
    field = _check_prime_field(p)
    if p > max_p:
        raise CapExceeded(f"p={p} exceeds the cap p <= {max_p}")
    return field


def _vectors(n, p):
    return list(itertools.product(range(p), repeat=n))


def _span_add(span, v, p):
    # span is a set of vectors closed under linear combination
    return {tuple((s + c * x) % p for s, x in zip(u, v)) for u in span for c in range(p)}


@functools.lru_cache(maxsize=None)
def _gl_flat(n, p):
    """All of GL(n, p) as flat tuples, in lexicographic order of entries."""
    vectors = _vectors(n, p)
    out = []

    def extend(rows, span):
        if len(rows) == n:
            out.append(tuple(x for r in rows for x in r))
            return
        for v in vectors:
            if v not in span:
                extend(rows + [v], _span_add(span, v, p))

    extend([], {(0,) * n})
    return tuple(out)


def enumerate_gl(n, p):
    """Yield every nonsingular n x n matrix over GF(p) once, lexicographically."""
    field = _check_caps(n, p, MAX_P)
    for flat in _gl_flat(n, p):
        yield _to_matrix(flat, n, field)


def _to_matrix(flat, n, field):
    return Matrix._raw(field, [flat[i * n:(i + 1) * n] for i in range(n)])


def _congruence_flat(a, x, n, p):
    # x^T a x on flat tuples
    ax = [sum(a[i * n + k] * x[k * n + j] for k in range(n)) for i in range(n) for j in range(n)]
    return tuple(
        sum(x[k * n + i] * ax[k * n + j] for k in range(n)) % p for i in range(n) for j in range(n)
    )


@dataclass
class Orbit:
    representative: Matrix
    size: int
    sigma: Scalar

    def to_json(self):
        return {
            "representative": self.representative.to_json(),
            "size": self.size,
            "sigma": str(self.sigma),
        }


@dataclass
class OrbitReport:
    field: FieldDescriptor
    n: int
    group_order: int
    orbits: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)

    @property
    def orbit_count(self):
        return len(self.orbits)

    @property
    def total_size(self):
        return sum(o.size for o in self.orbits)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "group_order": self.group_order,
            "enumerated": self.total_size,
            "orbit_count": self.orbit_count,
            "orbits": [o.to_json() for o in self.orbits],
            "violations": self.violations,
        }


def congruence_orbits(n, p, allow_large=False):
    """Partition GL(n, p) into congruence orbits and check sigma is constant on each.

    Seed-and-close: the first unvisited matrix in enumeration order seeds an
    orbit, which is closed by applying every X in GL(n, p).  Representatives
    are therefore the minimal-index members.
    """
    field = _check_caps(n, p, MAX_P if allow_large else DEFAULT_MAX_P)
    group = _gl_flat(n, p)
    index = {m: i for i, m in enumerate(group)}
    visited = bytearray(len(group))
    report = OrbitReport(field=field, n=n, group_order=len(group))
    for seed_index, seed in enumerate(group):
        if visited[seed_index]:
            continue
        members = {_congruence_flat(seed, x, n, p) for x in group}
        for m in members:
            visited[index[m]] = 1
        values = {}
        for m in sorted(members, key=index.__getitem__):
            s = sigma(_to_matrix(m, n, field))
            values.setdefault(s, m)
        rep = _to_matrix(seed, n, field)
        first_sigma = next(iter(values))
        report.orbits.append(Orbit(rep, len(members), first_sigma))
        if len(values) > 1:
            report.violations.append(
                {
                    "representative": rep.to_json(),
                    "sigma_values": [
                        {"sigma": str(s), "member": _to_matrix(m, n, field).to_json()}
                        for s, m in values.items()
                    ],
                }
            )
    return report


# -- witness search -------------------------------------------------------


def _dot(u, v, p):
    return sum(x * y for x, y in zip(u, v)) % p


def congruence_solutions(a, t, p):
    """Every X in GL(n, p) with X^T a X = t, as matrices over GF(p).

    Column-by-column backtracking: column j of X must satisfy
    x_j^T a x_j = t_jj and x_i^T a x_j = t_ij, x_j^T a x_i = t_ji for i < j,
    and stay outside the span of the earlier columns.  Equivalent to
    filtering the whole group, but prunes at every column.
    """
    field = a.field
    n = a.n
    arows = a.rows
    trows = t.rows
    vectors = [v for v in _vectors(n, p) if any(v)]
    # v^T a for every candidate column
    left = {v: tuple(_dot(v, col, p) for col in zip(*arows)) for v in vectors}
    by_diag = {}
    for v in vectors:
        by_diag.setdefault(_dot(left[v], v, p), []).append(v)
    found = []

    def extend(cols, span):
        j = len(cols)
        if j == n:
            found.append(cols)
            return
        for v in by_diag.get(trows[j][j], ()):
            if v in span:
                continue
            if all(
                _dot(left[u], v, p) == trows[i][j] and _dot(left[v], u, p) == trows[j][i]
                for i, u in enumerate(cols)
            ):
                extend(cols + [v], _span_add(span, v, p))

    extend([], {(0,) * n})
    return [
        Matrix._raw(field, [[cols[j][i] for j in range(n)] for i in range(n)]) for cols in found
    ]


def first_in_order(matrices):
    """The lexicographically first matrix (row-major entries), or None."""
    return min(matrices, key=Matrix.flat, default=None)


def _congruent_witness(a, t, p):
    return first_in_order(congruence_solutions(a, t, p))


# -- exploratory reduction A(a, b, c) -> A(s, 0, 0) -------------------------


@dataclass
class ReductionOutcome:
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar
    roots: list
    status: str
    found: bool = False
    root: Scalar | None = None
    witness: Matrix | None = None
    revalidated: bool | None = None

    def to_json(self):
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "D": str(self.d),
            "roots": [str(r) for r in self.roots],
            "status": self.status,
            "found": self.found,
            "root": None if self.root is None else str(self.root),
            "witness": None if self.witness is None else self.witness.to_json(),
            "revalidated": self.revalidated,
        }


@dataclass
class ReductionReport:
    field: FieldDescriptor
    mode: str
    outcomes: list = dc_field(default_factory=list)
    seed: int | None = None

    def counts(self):
        out = {"examined": 0, "found": 0, "not_found": 0, "skipped": 0}
        for o in self.outcomes:
            if o.status == "searched":
                out["examined"] += 1
                out["found" if o.found else "not_found"] += 1
            else:
                out["skipped"] += 1
        return out

    @property
    def all_witnesses_valid(self):
        return all(o.revalidated for o in self.outcomes if o.found)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "mode": self.mode,
            "seed": self.seed,
            "counts": self.counts(),
            "all_witnesses_valid": self.all_witnesses_valid,
            "triples": [o.to_json() for o in self.outcomes],
        }


def explore_reduction(p, sample=None, seed=0xC0FFEE):
    """Search X with X^T A(a,b,c) X = A(s,0,0), s^2 = D, over GF(p).

    Only triples with D != 0, a^2 + b^2 - abc != 0 and D a square are
    searched.  ``sample=k`` restricts to k seeded random triples.  The report
    records outcomes; nothing about found/not-found is asserted here.
    """
    field = _check_caps(3, p, REDUCTION_MAX_P)
    triples = list(itertools.product(range(p), repeat=3))
    if sample is not None:
        if sample < 0:
            raise ValueError("sample size must be non-negative")
        rng = derive_rng(seed, "explore-reduction", p)
        triples = sorted(rng.sample(triples, min(sample, len(triples))))
    report = ReductionReport(
        field=field, mode="all" if sample is None else f"sample({sample})",
        seed=None if sample is None else seed,
    )
    zero = Scalar(field, 0)
    for ta, tb, tc in triples:
        a, b, c = (Scalar(field, v) for v in (ta, tb, tc))
        d = d_invariant(a, b, c)
        outcome = ReductionOutcome(a, b, c, d, [], "searched")
        report.outcomes.append(outcome)
        if d.is_zero():
            outcome.status = "skipped: D = 0"
            continue
        if (a * a + b * b - a * b * c).is_zero():
            outcome.status = "skipped: a^2+b^2-abc = 0"
            continue
        outcome.roots = sqrt_in_field(d)
        if not outcome.roots:
            outcome.status = "skipped: no square root"
            continue
        source = canonical_form(a, b, c)
        for s in outcome.roots:
            target = canonical_form(s, zero, zero)
            x = _congruent_witness(source, target, p)
            if x is not None:
                outcome.found = True
                outcome.root = s
                outcome.witness = x
                outcome.revalidated = congruence_transform(source, x) == target
                break
    return report

