"""Certified spectral-radius enclosures, spectra, and closed-form bounds.

The radius enclosure comes from power iteration on the shifted operator
A + I (the shift defeats bipartite periodicity, making the matrix
primitive on each connected component).  For a positive vector x the
Collatz-Wielandt ratios min_v (Mx)_v/x_v and max_v (Mx)_v/x_v bracket the
Perron root, so every iterate yields a valid enclosure; iteration stops
once the bracket is narrower than the requested tolerance.  Disconnected
graphs are handled per component and the component-wise maximum enclosure
is returned, avoiding the reducible-matrix pitfalls of a global iteration.

Comparisons never treat overlapping float enclosures as equality; they
escalate to the exact integer machinery in :mod:`specfactor.exact`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .graphs import Graph, GraphError, bits, components, is_connected, partition_classes

DEFAULT_TOL = 1e-10
ITERATION_CAP = 100_000


class ConsistencyError(RuntimeError):
    """An internal cross-check that should be mathematically impossible failed."""


@dataclass(frozen=True)
class SpectralEnclosure:
    """Certified interval [lo, hi] containing the spectral radius."""

    lo: float
    hi: float
    method: str
    iterations: int = 0

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class Spectrum:
    """All adjacency eigenvalues, descending, with the tolerance used."""

    values: tuple[float, ...]
    tol: float


def _component_enclosure(g: Graph, comp_mask: int, tol: float) -> tuple[float, float, int]:
    verts = list(bits(comp_mask))
    k = len(verts)
    if k == 1:
        return 0.0, 0.0, 0
    pos = {v: i for i, v in enumerate(verts)}
    m = np.zeros((k, k))
    for i, v in enumerate(verts):
        for u in bits(g.adj[v] & comp_mask):
            m[i, pos[u]] = 1.0
        m[i, i] = 1.0
    x = np.ones(k)
    lo, hi = 0.0, float(k)
    iters = 0
    while iters < ITERATION_CAP:
        y = m @ x
        ratios = y / x
        lo = float(ratios.min()) - 1.0
        hi = float(ratios.max()) - 1.0
        iters += 1
        if hi - lo <= tol:
            break
        x = y / y.max()
    return lo, hi, iters


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> SpectralEnclosure:
    """Certified enclosure of the spectral radius via Collatz-Wielandt bounds.

    Raises on the empty graph.  If the iteration cap is hit the enclosure is
    returned at its achieved width (still valid, just wider than ``tol``).
    """
    if g.n == 0:
        raise GraphError("spectral radius of the empty graph is undefined")
    best_lo = best_hi = None
    total_iters = 0
    for comp in components(g):
        lo, hi, iters = _component_enclosure(g, comp, tol)
        total_iters += iters
        if best_lo is None or lo > best_lo:
            best_lo = lo
        if best_hi is None or hi > best_hi:
            best_hi = hi
    return SpectralEnclosure(best_lo, best_hi, "power-iteration", total_iters)


def batch_radius_upper_bounds(adj_arrays: np.ndarray, iterations: int = 48) -> np.ndarray:
    """Valid per-graph upper bounds on the spectral radius for a batch.

    ``adj_arrays`` has shape (batch, n, n).  Runs the shifted power
    iteration vectorized over the whole batch and returns the final
    max-ratio bound minus the shift.  The upper bound is sound for every
    graph (including disconnected ones); only upper bounds are returned
    because the matching lower bounds do not converge on reducible input.
    """
    b, n, _ = adj_arrays.shape
    m = adj_arrays + np.eye(n)
    x = np.ones((b, n))
    hi = np.full(b, float(n))
    for _ in range(iterations):
        y = np.einsum("bij,bj->bi", m, x)
        ratios = y / x
        hi = np.minimum(hi, ratios.max(axis=1))
        x = y / y.max(axis=1, keepdims=True)
    return hi - 1.0


def full_spectrum(g: Graph, tol: float = 1e-10) -> Spectrum:
    """All eigenvalues by cyclic Jacobi on the symmetric adjacency matrix.

    Sweeps rotate every off-diagonal pair until the off-diagonal Frobenius
    norm drops to ``tol``; eigenvalues are returned in descending order.
    """
    n = g.n
    if n == 0:
        raise GraphError("spectrum of the empty graph is undefined")
    a = np.zeros((n, n))
    for v in range(n):
        for u in bits(g.adj[v]):
            a[v, u] = 1.0
    for _ in range(200):
        off = math.sqrt(max(0.0, float((a**2).sum() - (np.diag(a) ** 2).sum())))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < abs(diff) * 1e-36:
                    t = apq / diff  # small-angle limit; avoids theta overflow
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    values = tuple(sorted((float(v) for v in np.diag(a)), reverse=True))
    return Spectrum(values, tol)


def hong_bound(g: Graph) -> float:
    """sqrt(2m - n + 1); valid as a radius upper bound for connected graphs."""
    if not is_connected(g) or g.n == 0:
        raise GraphError("the bound requires a connected non-empty graph")
    return math.sqrt(2 * g.edge_count() - g.n + 1)


# ---------------------------------------------------------------------------
# quotient matrices of vertex partitions


@dataclass(frozen=True)
class QuotientMatrix:
    """Block-averaged matrix of a vertex partition; entries are exact."""

    entries: tuple[tuple[Fraction, ...], ...]
    classes: tuple[int, ...]
    equitable: bool

    @property
    def size(self) -> int:
        return len(self.entries)

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def as_int_rows(self) -> list[list[int]]:
        if not self.equitable:
            raise ConsistencyError("integer rows require an equitable partition")
        return [[int(v) for v in row] for row in self.entries]


def quotient_matrix(g: Graph, classes) -> QuotientMatrix:
    """Quotient matrix over a partition, plus whether it is equitable.

    Entry (i, j) is the average number of neighbors a vertex of class i has
    inside class j; the partition is equitable when that count is constant
    over every class pair.
    """
    classes = partition_classes(g, classes)
    k = len(classes)
    rows = []
    equitable = True
    for i in range(k):
        row = []
        class_i = list(bits(classes[i]))
        for j in range(k):
            counts = [(g.adj[v] & classes[j]).bit_count() for v in class_i]
            if any(c != counts[0] for c in counts[1:]):
                equitable = False
            row.append(Fraction(sum(counts), len(counts)))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), classes, equitable)


def quotient_lambda1(q: QuotientMatrix, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue of a nonnegative quotient matrix.

    Power iteration with Collatz-Wielandt brackets on the shifted matrix,
    mirroring the dense path; intended for quotients of equitable
    partitions of connected graphs, where it equals the spectral radius.
    """
    m = q.as_float()
    if (m < 0).any():
        raise ConsistencyError("quotient matrix has negative entries")
    k = m.shape[0]
    m = m + np.eye(k)
    x = np.ones(k)
    lo, hi = 0.0, float(np.inf)
    for _ in range(ITERATION_CAP):
        y = m @ x
        ratios = y / x
        lo = float(ratios.min()) - 1.0
        hi = float(ratios.max()) - 1.0
        if hi - lo <= tol:
            break
        x = y / y.max()
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# closed forms tied to the extremal constructions


def lemma6_poly_values(n: int, s: int) -> tuple[int, int]:
    """Exact characteristic values of the 3x3 quotient of the L-family.

    Evaluates det(xI - B) at x = n-2 and x = n-4 for
    B = [[s-1, 3, n-s-3], [s, 0, 0], [s, 0, n-s-4]] in integer arithmetic,
    checks the two closed forms 2n^2 - 6n - 3s^2 - 6s + 4 and -3s^2, and
    checks the trace recomputed from the matrix (n-5).
    """
    if s < 1 or n < 4 * s + 1:
        raise GraphError(f"need s >= 1 and n >= 4s+1, got n={n}, s={s}")
    b = [[s - 1, 3, n - s - 3], [s, 0, 0], [s, 0, n - s - 4]]

    def det3(x: int) -> int:
        m = [[(x if i == j else 0) - b[i][j] for j in range(3)] for i in range(3)]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    val_n2 = det3(n - 2)
    val_n4 = det3(n - 4)
    if val_n2 != 2 * n * n - 6 * n - 3 * s * s - 6 * s + 4:
        raise ConsistencyError(f"f(n-2) mismatch at n={n}, s={s}: {val_n2}")
    if val_n4 != -3 * s * s:
        raise ConsistencyError(f"f(n-4) mismatch at n={n}, s={s}: {val_n4}")
    trace = b[0][0] + b[1][1] + b[2][2]
    if trace != n - 5:
        raise ConsistencyError(f"trace mismatch at n={n}, s={s}: {trace}")
    return val_n2, val_n4


def kopr_threshold(k: int, b: int) -> float:
    """Third-eigenvalue threshold for k-regular graphs and odd b < k.

    Piecewise in the parities of k and ceil(k/b); the published statement
    names the first parity with an otherwise unused symbol, which is read
    here as k itself.
    """
    if k < 3:
        raise GraphError(f"need k >= 3, got {k}")
    if b % 2 == 0 or not 0 < b < k:
        raise GraphError(f"need odd b with 0 < b < k, got b={b}")
    r = -(-k // b)
    if k % 2 == 0 and r % 2 == 0:
        return (k - 2 + math.sqrt((k + 2) ** 2 - 4 * (r - 2))) / 2
    if k % 2 == 0:
        return (k - 2 + math.sqrt((k + 2) ** 2 - 4 * (r - 1))) / 2
    if r % 2 == 1:
        return (k - 3 + math.sqrt((k + 3) ** 2 - 4 * (r - 2))) / 2
    return (k - 3 + math.sqrt((k + 3) ** 2 - 4 * (r - 1))) / 2


def theorem_n_bound(a: int, b: int) -> int:
    """Smallest order covered by the main radius condition for the pair (a, b)."""
    if a < 1 or a > b or (a - b) % 2 != 0:
        raise GraphError(f"need 1 <= a <= b with equal parity, got a={a}, b={b}")
    return max(2 * a * (a + 1) + b - 3, (2 * a + 2) * (a + 1))


# ---------------------------------------------------------------------------
# three-way radius comparison


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class CompareResult:
    order: Order
    method: str  # "float" | "exact"


def compare_radius(g: Graph, h: Graph, tol: float = DEFAULT_TOL) -> CompareResult:
    """Order the spectral radii of two graphs, exactly when floats cannot.

    Disjoint certified enclosures decide immediately.  Overlapping
    enclosures escalate to the exact comparison of the largest roots of the
    integer characteristic polynomials; equality is only ever reported by
    the exact path.
    """
    if g.n == 0 or h.n == 0:
        raise GraphError("compare_radius needs non-empty graphs")
    eg = spectral_radius(g, tol)
    eh = spectral_radius(h, tol)
    if eg.lo > eh.hi:
        return CompareResult(Order.GREATER, "float")
    if eg.hi < eh.lo:
        return CompareResult(Order.LESS, "float")
    sign = exact.compare_largest_roots(exact.char_poly_exact(g), exact.char_poly_exact(h))
    return CompareResult(Order(sign), "exact")
