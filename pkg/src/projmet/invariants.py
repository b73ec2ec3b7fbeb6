"""Metrisability obstructions of a projective structure at a point.

Everything here works on truncated Taylor jets of the four ODE coefficients
at a chosen base point.  The central objects:

  * the two fifth-order scalars L1, L2 (coefficients of the first
    point invariant, which is -6(L1 + L2 p) linear in the slope p);
  * the obstruction row vector V built from L1, L2 and their first
    derivatives;
  * the pair of 6x6 connection matrices O1, O2 of the prolonged
    metrisability system, against which V is differentiated covariantly
    (D_a V = dV/da - V O_a);
  * determinant/rank conditions on stacks of covariant derivatives of V
    (the 6x6 matrix M, its 21x6 saturation, the order-6 pair E1/E2, and
    rank-stratified order-7/order-8 determinants);
  * a dimension count for the space of solutions by rank stabilisation.

`decide_metrisability` combines these into a verdict over a sample of
points.  All derivative bookkeeping truncates uniformly, so a jet of order
N supports L at order N-2, V at order N-3, and k-fold derivatives of V at
order N-3-k; the full verdict needs N >= 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .jets import Jet, InsufficientOrderError
from .expressions import eval_jet

F13 = Fraction(1, 3)
F23 = Fraction(2, 3)
F43 = Fraction(4, 3)
F89 = Fraction(8, 9)
F169 = Fraction(16, 9)
F209 = Fraction(20, 9)
F49 = Fraction(4, 9)
F29 = Fraction(2, 9)
F83 = Fraction(8, 3)
F203 = Fraction(20, 3)
F163 = Fraction(16, 3)
F12 = Fraction(1, 2)

VERDICT_FLAT = "MetrisableFlat"
VERDICT_METRISABLE = "Metrisable"
VERDICT_NOT = "NotMetrisable"
VERDICT_DEGENERATE = "DegenerateKernel"
VERDICT_INCONCLUSIVE = "Inconclusive"


class JetStructure:
    """Coefficient jets of one structure at one point, with caches for the
    derived invariants so repeated queries don't recompute them."""

    def __init__(self, a_jets):
        a0, a1, a2, a3 = a_jets
        for a in (a1, a2, a3):
            if a.base != a0.base or a.order != a0.order:
                raise ValueError("coefficient jets must share base and order")
        self.a = (a0, a1, a2, a3)
        self._L = None
        self._conn = None
        self._levels = None

    @classmethod
    def at(cls, structure, point, order, mode="auto"):
        return cls(tuple(
            eval_jet(c, point, order, mode)
            for c in structure.coefficients
        ))

    @property
    def order(self):
        return self.a[0].order

    @property
    def base(self):
        return self.a[0].base

    @property
    def exact(self):
        return all(j.exact for j in self.a)

    def _zero(self, order):
        v = Fraction(0) if self.exact else 0.0
        return Jet.constant(v, self.base, order)

    def liouville(self):
        if self._L is None:
            self._L = _liouville_L(self.a)
        return self._L

    def connection(self):
        if self._conn is None:
            self._conn = _connection_matrices(self.a, self._zero)
        return self._conn

    def levels(self, depth):
        """Symmetrised covariant derivative rows of V up to `depth`,
        x-count-major inside each level."""
        max_depth = self.order - 3
        if depth > max_depth:
            raise InsufficientOrderError(depth + 3, self.order)
        if self._levels is None:
            self._levels = [[_vector_V(self)]]
        o1, o2 = self.connection()
        while len(self._levels) <= depth:
            k = len(self._levels)
            prev = self._levels[k - 1]
            cur = []
            for j in range(k, -1, -1):  # j = number of x-derivatives
                parts = []
                if j > 0:
                    parts.append(
                        (Fraction(j, k), cov_deriv(prev[k - j], o1, "x"))
                    )
                if j < k:
                    parts.append(
                        (Fraction(k - j, k), cov_deriv(prev[k - 1 - j], o2, "y"))
                    )
                row = parts[0][1]
                if parts[0][0] != 1:
                    row = tuple(parts[0][0] * e for e in row)
                for coef, extra in parts[1:]:
                    row = tuple(
                        a + coef * b for a, b in zip(row, extra)
                    )
                cur.append(row)
            self._levels.append(cur)
        return self._levels[: depth + 1]


# ---------------- scalar invariants ----------------


def _liouville_L(a):
    a0, a1, a2, a3 = a
    n = a0.order
    if n < 2:
        raise InsufficientOrderError(2, n)
    m = n - 2
    d = lambda j, v: j.diff(v).truncated(m)
    dd = lambda j, u, v: j.diff(u).diff(v)
    t = lambda j: j.truncated(m)

    l1 = (
        F23 * dd(a1, "x", "y") - F13 * dd(a2, "x", "x") - dd(a0, "y", "y")
        + t(a0) * d(a2, "y") + t(a2) * d(a0, "y")
        - t(a3) * d(a0, "x") - 2 * t(a0) * d(a3, "x")
        - F23 * t(a1) * d(a1, "y") + F13 * t(a1) * d(a2, "x")
    )
    l2 = (
        F23 * dd(a2, "x", "y") - F13 * dd(a1, "y", "y") - dd(a3, "x", "x")
        - t(a3) * d(a1, "x") - t(a1) * d(a3, "x")
        + t(a0) * d(a3, "y") + 2 * t(a3) * d(a0, "y")
        + F23 * t(a2) * d(a2, "x") - F13 * t(a2) * d(a1, "y")
    )
    return (l1, l2)


def liouville_L(js):
    return js.liouville()


def tresse_I1(js, slope):
    """Value of the lowest point invariant at the given slope: it is linear
    in the slope with coefficients (-6 L1, -6 L2)."""
    l1, l2 = js.liouville()
    return -6 * l1.value - 6 * l2.value * slope


def nu5(js):
    """Fifth-order relative invariant whose vanishing (on top of a rank-3
    degeneracy) signals the Liouville-type branch."""
    if js.order < 3:
        raise InsufficientOrderError(3, js.order)
    l1j, l2j = js.liouville()
    l1, l2 = l1j.value, l2j.value
    l1x, l1y = l1j.partial(1, 0), l1j.partial(0, 1)
    l2x, l2y = l2j.partial(1, 0), l2j.partial(0, 1)
    a0, a1, a2, a3 = (j.value for j in js.a)
    return (
        l2 * (l1 * l2x - l2 * l1x)
        + l1 * (l2 * l1y - l1 * l2y)
        + a3 * l1**3 - a2 * l1**2 * l2 + a1 * l1 * l2**2 - a0 * l2**3
    )


# ---------------- the obstruction vector and its connection ----------------


def _vector_V(js):
    n = js.order
    if n < 3:
        raise InsufficientOrderError(3, n)
    m = n - 3
    l1j, l2j = js.liouville()
    l1, l2 = l1j.truncated(m), l2j.truncated(m)
    l1x, l1y = l1j.diff("x"), l1j.diff("y")
    l2x, l2y = l2j.diff("x"), l2j.diff("y")
    a0, a1, a2, a3 = (j.truncated(m) for j in js.a)
    return (
        2 * l2y + 4 * a2 * l2 + 8 * a3 * l1,
        -2 * l1y - 2 * l2x - F43 * a1 * l2 + F43 * a2 * l1,
        2 * l1x - 8 * a0 * l2 - 4 * a1 * l1,
        -5 * l2,
        -5 * l1,
        js._zero(m),
    )


def vector_V(js):
    return js.levels(0)[0][0]


def _connection_matrices(a, zero_at):
    """The pair (O1, O2) of 6x6 connection matrices of the prolonged
    system, as jets of order N-2."""
    a0, a1, a2, a3 = a
    n = a0.order
    if n < 2:
        raise InsufficientOrderError(2, n)
    m = n - 2
    z = zero_at(m)
    one = z + 1
    half = one / 2

    d = lambda j, v: j.diff(v).truncated(m)
    dd = lambda j, u, v: j.diff(u).diff(v)
    a0t, a1t, a2t, a3t = (j.truncated(m) for j in a)

    a0x, a0y = d(a0, "x"), d(a0, "y")
    a1x, a1y = d(a1, "x"), d(a1, "y")
    a2x, a2y = d(a2, "x"), d(a2, "y")
    a3x, a3y = d(a3, "x"), d(a3, "y")

    o141 = -F43 * a2x + 4 * a0t * a3t + F23 * a1y
    o142 = -2 * a0y + F23 * a1x + 4 * a2t * a0t - F49 * a1t * a1t
    o143 = 2 * a0x - 4 * a0t * a1t
    o161 = (
        -F43 * dd(a2, "x", "y") - F203 * a0t * a2t * a3t
        + F23 * dd(a1, "y", "y") + 4 * a3t * a0y - 2 * a0t * a3y
        - F169 * a2t * a2x + F89 * a2t * a1y
    )
    o162 = (
        F23 * dd(a1, "x", "y") - F43 * a1t * a1y + 2 * a0t * a2y
        - 2 * dd(a0, "y", "y") + 4 * a2t * a0y + 4 * a3t * a0x
        + 6 * a0t * a3x + F89 * a1t * a2x
        + F43 * a0t * a1t * a3t - F43 * a0t * a2t * a2t
    )
    o163 = (
        2 * dd(a0, "x", "y") + F23 * a0t * a2x - F43 * a2t * a0x
        - 4 * a1t * a0y - F43 * a0t * a1y
        + F83 * a0t * a1t * a2t + 4 * a3t * a0t * a0t
    )
    o164 = F43 * a2x - a1y + 5 * a0t * a3t
    o165 = F13 * a1x - 4 * a0y + 3 * a2t * a0t - F29 * a1t * a1t

    omega1 = (
        (-F23 * a1t, 2 * a0t, z, z, z, z),
        (z, z, z, -half, z, z),
        (-2 * a3t, -F23 * a2t, F43 * a1t, z, one, z),
        (o141, o142, o143, -F13 * a1t, -3 * a0t, z),
        (z, z, z, z, z, -one),
        (o161, o162, o163, o164, o165, -F13 * a1t),
    )

    o251 = -2 * a3y - 4 * a3t * a2t
    o252 = 2 * a3x - F23 * a2y + 4 * a1t * a3t - F49 * a2t * a2t
    o253 = F43 * a1y - F23 * a2x + 4 * a0t * a3t
    o261 = (
        -2 * dd(a3, "x", "y") - 4 * a2t * a3x - F43 * a3t * a2x
        + F23 * a3t * a1y - F43 * a1t * a3y
        - 4 * a0t * a3t * a3t - F83 * a1t * a2t * a3t
    )
    o262 = (
        2 * dd(a3, "x", "x") - F43 * a2t * a2x - F43 * a0t * a2t * a3t
        - F23 * dd(a2, "x", "y") + 4 * a1t * a3x + 4 * a0t * a3y
        + 6 * a3t * a0y + F43 * a3t * a1t * a1t + 2 * a3t * a1x
        + F89 * a2t * a1y
    )
    o263 = (
        -F23 * dd(a2, "x", "x") + F89 * a1t * a2x + 4 * a0t * a3x
        - 2 * a3t * a0x - F169 * a1t * a1y + F43 * dd(a1, "x", "y")
        + F203 * a0t * a1t * a3t
    )
    o264 = 4 * a3x - F13 * a2y + 3 * a1t * a3t - F29 * a2t * a2t
    o265 = a2x - F43 * a1y + 5 * a0t * a3t

    omega2 = (
        (-F43 * a2t, F23 * a1t, 2 * a0t, one, z, z),
        (z, z, z, z, -half, z),
        (z, -2 * a3t, F23 * a2t, z, z, z),
        (z, z, z, z, z, -one),
        (o251, o252, o253, 3 * a3t, F13 * a2t, z),
        (o261, o262, o263, o264, o265, F13 * a2t),
    )
    return (omega1, omega2)


def connection_matrices(js):
    return js.connection()


def cov_deriv(row, omega, var):
    """Covariant derivative of a row vector: D_a V = dV/da - V . O_a."""
    k = row[0].order
    if k < 1:
        raise InsufficientOrderError(1, 0)
    m = k - 1
    rt = [e.truncated(m) for e in row]
    out = []
    for j in range(6):
        acc = row[j].diff(var)
        for i in range(6):
            entry = omega[i][j]
            if entry.is_zero():
                continue
            acc = acc - rt[i] * entry.truncated(m)
        out.append(acc)
    return tuple(out)


def curvature(js):
    """F = dO2/dx - dO1/dy + O1 O2 - O2 O1.  Its first five rows vanish
    identically and its sixth row equals V."""
    n = js.order
    if n < 3:
        raise InsufficientOrderError(3, n)
    m = n - 3
    o1, o2 = js.connection()
    o1t = [[e.truncated(m) for e in row] for row in o1]
    o2t = [[e.truncated(m) for e in row] for row in o2]
    out = []
    for i in range(6):
        row = []
        for j in range(6):
            acc = o2[i][j].diff("x") - o1[i][j].diff("y")
            for k in range(6):
                acc = acc + o1t[i][k] * o2t[k][j] - o2t[i][k] * o1t[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


# ---------------- determinant/rank stacks ----------------

_LEVEL_NAMES = ("", "x", "y", "xx", "xy", "yy", "xxx", "xxy", "xyy", "yyy")


def _row_values(row):
    return [e.value for e in row]


def _level_rows(js, depth):
    rows = []
    names = []
    for k, level in enumerate(js.levels(depth)):
        for i, row in enumerate(level):
            rows.append(_row_values(row))
            names.append("x" * (k - i) + "y" * i if k else "V")
    return rows, names


def matrix_M(js):
    """The 6x6 stack (V, D_xV, D_yV, D_(xx)V, D_(xy)V, D_(yy)V) of values."""
    levels = js.levels(2)
    rows = [
        _row_values(levels[0][0]),
        _row_values(levels[1][0]),
        _row_values(levels[1][1]),
        _row_values(levels[2][0]),
        _row_values(levels[2][1]),
        _row_values(levels[2][2]),
    ]
    return rows


def matrix_Mmax(js):
    """All symmetrised derivative rows of V through order five: 21 x 6."""
    rows, _ = _level_rows(js, 5)
    return rows


@dataclass
class EResult:
    e1: object
    e2: object
    fallback: bool
    rows_used: tuple


def sixth_order_E(js, tol=1e-9):
    """The order-6 determinant pair.

    The standard choice fixes the five rows (V, x, y, xx, yy) and tops them
    with xxx (E1) or yyy (E2).  If those five are dependent, fall back to a
    greedy scan of all rows through order three in graded order, take the
    first five independent ones, and use the next two rows in the scan as
    the alternative tops.  Returns None for both when no five independent
    rows exist (the rank has dropped; the stratified stacks apply instead).
    """
    rows, names = _level_rows(js, 3)
    std = [0, 1, 2, 3, 5]
    base = [rows[i] for i in std]
    if linalg.rank_kernel(base, tol).rank == 5:
        e1 = linalg.det(base + [rows[6]])
        e2 = linalg.det(base + [rows[9]])
        return EResult(e1, e2, False,
                       tuple(names[i] for i in std + [6]) + (names[9],))
    chosen = []
    for i in range(len(rows)):
        if len(chosen) == 5:
            tops = [j for j in range(i, len(rows)) if j not in chosen][:2]
            break
        trial = [rows[j] for j in chosen] + [rows[i]]
        if linalg.rank_kernel(trial, tol).rank == len(trial):
            chosen.append(i)
    else:
        return EResult(None, None, True, ())
    if len(tops) < 2:
        return EResult(None, None, True, ())
    base = [rows[j] for j in chosen]
    e1 = linalg.det(base + [rows[tops[0]]])
    e2 = linalg.det(base + [rows[tops[1]]])
    return EResult(e1, e2, True,
                   tuple(names[j] for j in chosen + tops))


@dataclass
class StratifiedResult:
    value: object
    rows_used: tuple
    swapped: bool


def _iterated_rows(js, pattern):
    """Row for each prefix-closed derivative word, e.g. 'xxxxx' -> V, Vx,
    Vxx, ... via repeated single-direction covariant derivatives; mixed
    words apply letters left to right."""
    o1, o2 = js.connection()
    row = js.levels(0)[0][0]
    for ch in pattern:
        row = cov_deriv(row, o1 if ch == "x" else o2, ch)
    return row


def stratified_obstruction(js, rank_case, tol=1e-9):
    """Single determinant adapted to a degenerate rank of M.

    rank 3 -> order-8 stack (V, Vx, Vxx, ..., Vxxxxx), valid when
    (V, Vx, Vxx) are independent; rank 4 -> order-7 stack
    (V, Vx, Vxy, Vxx, Vxxx, Vxxxx), valid when (V, Vx, Vy, Vxx) are
    independent.  Each falls back to the x<->y swap; if neither frame is
    independent the pencil is closed at lower rank and None is returned.
    """
    if rank_case not in (3, 4):
        raise ValueError("stratified stacks exist for rank 3 or 4 only")

    def build(words, guard_words, swapped):
        guard = [_row_values(_iterated_rows(js, w)) for w in guard_words]
        if linalg.rank_kernel(guard, tol).rank != len(guard):
            return None
        rows = [_row_values(_iterated_rows(js, w)) for w in words]
        return StratifiedResult(linalg.det(rows), tuple(words), swapped)

    if rank_case == 3:
        words = ("", "x", "xx", "xxx", "xxxx", "xxxxx")
        guards = ("", "x", "xx")
    else:
        words = ("", "x", "xy", "xx", "xxx", "xxxx")
        guards = ("", "x", "y", "xx")

    res = build(words, guards, False)
    if res is not None:
        return res
    swap = str.maketrans("xy", "yx")
    res = build(tuple(w.translate(swap) for w in words),
                tuple(g.translate(swap) for g in guards), True)
    return res


# ---------------- solution space dimension ----------------


@dataclass
class CartanResult:
    ranks: list
    stabilized_at: object
    stabilized_rank: object
    s_dim: object
    koenigs_ok: object
    marginal: bool


def cartan_stabilize(js, tol=1e-9, k_cap=None):
    """Dimension of the solution space by rank stabilisation.

    Stack the symmetrised derivative rows of V level by level; as soon as
    the rank of the stack through level K equals the rank through level
    K+1, it has stabilised and the solution space has dimension
    S = 6 - rank.  S = 5 never occurs for these pencils, so it is flagged.
    """
    if k_cap is None:
        k_cap = js.order - 4
    if k_cap < 0:
        raise InsufficientOrderError(4, js.order)
    k_cap = min(k_cap, js.order - 4)

    ranks = []
    marginal = False
    rows = []
    for k in range(k_cap + 2):
        for row in js.levels(k)[k]:
            rows.append(_row_values(row))
        res = linalg.rank_kernel(rows, tol)
        marginal = marginal or res.marginal
        ranks.append(res.rank)
    for k in range(k_cap + 1):
        if ranks[k] == ranks[k + 1]:
            rank = ranks[k]
            s = 6 - rank
            return CartanResult(ranks, k, rank, s, s != 5, marginal)
    return CartanResult(ranks, None, None, None, None, marginal)


# ---------------- degenerate-branch scalar obstruction ----------------


def degenerate_obstruction(ja):
    """Sixth-order obstruction for the special family y'' = -A(x,y) (only
    the zeroth slope coefficient present, with A the connection component).

    Takes the jet of A itself and needs order >= 6.
    """
    p = ja.partial
    dy2, dy3, dy4, dy5 = p(0, 2), p(0, 3), p(0, 4), p(0, 5)
    dxy2, dxy3, dxy4 = p(1, 2), p(1, 3), p(1, 4)
    return (
        7 * dy3 * dy4 * dxy3
        - 5 * dxy3 * dy5 * dy2
        - 6 * dxy4 * dy3**2
        + 6 * dy5 * dxy2 * dy3
        - 7 * dy4**2 * dxy2
        + 5 * dxy4 * dy4 * dy2
    )


# ---------------- kernel inspection and verdicts ----------------


def genericity_P(w):
    """P(W) = W1 W3 - W2^2, the discriminant of the symmetric form a kernel
    vector encodes; zero means a degenerate candidate metric."""
    return w[0] * w[2] - w[1] ** 2


def kernel_has_nondegenerate(basis, tol=1e-9):
    """Search the kernel basis and all pairwise sums for a vector with
    P != 0.  Returns (witness, marginal)."""
    if not basis:
        return None, False
    cands = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            cands.append(tuple(a + b for a, b in zip(basis[i], basis[j])))
    exact = all(
        isinstance(v, Fraction) for w in cands for v in w
    )
    best = None
    best_q = None
    for w in cands:
        q = genericity_P(w)
        if best_q is None or abs(q) > abs(best_q):
            best, best_q = w, q
    if exact:
        if best_q != 0:
            return best, False
        return None, False
    scale = max(1.0, max(abs(float(v)) for w in cands for v in w))
    thr = tol * scale * scale
    aq = abs(float(best_q))
    if aq > 10.0 * thr:
        return best, False
    if aq > thr:
        return best, True
    return None, aq > thr / 10.0


@dataclass
class PointReport:
    point: tuple
    mode: str
    verdict: str
    flat: bool
    marginal: bool
    l1: object
    l2: object
    i1_coeffs: tuple
    nu5: object
    v_row: tuple
    det_m: object
    rank_m: int
    e1: object = None
    e2: object = None
    e_fallback: bool = False
    order7: object = None
    order8: object = None
    stratified_rows: tuple = ()
    rank_mmax: object = None
    kernel: list = field(default_factory=list)
    witness: object = None
    p_value: object = None
    s_dim: object = None
    cartan_ranks: list = field(default_factory=list)
    koenigs_ok: object = None
    notes: list = field(default_factory=list)


@dataclass
class ObstructionReport:
    verdict: str
    points: list
    order: int
    tolerance: float
    mode: str
    notes: list = field(default_factory=list)


def analyze_point(structure, point, order=10, tol=1e-9, mode="auto"):
    if order < 5:
        raise InsufficientOrderError(5, order)
    js = JetStructure.at(structure, point, order, mode)
    notes = []
    marginal = False

    l1j, l2j = js.liouville()
    flat = l1j.is_zero() and l2j.is_zero()
    nu = nu5(js)

    m_rows = matrix_M(js)
    det_m = linalg.det(m_rows)
    rk = linalg.rank_kernel(m_rows, tol)
    marginal = marginal or rk.marginal
    v_row = tuple(m_rows[0])

    e1 = e2 = None
    e_fallback = False
    if js.order >= 6:
        eres = sixth_order_E(js, tol)
        e1, e2, e_fallback = eres.e1, eres.e2, eres.fallback
        if e_fallback:
            notes.append("order-6 pair used fallback rows")

    order7 = order8 = None
    strat_rows = ()
    if rk.rank == 4 and js.order >= 7:
        sres = stratified_obstruction(js, 4, tol)
        if sres is None:
            notes.append("rank-4 stack closed at lower rank")
        else:
            order7 = sres.value
            strat_rows = sres.rows_used
    if rk.rank == 3 and js.order >= 8:
        sres = stratified_obstruction(js, 3, tol)
        if sres is None:
            notes.append("rank-3 stack closed at lower rank")
        else:
            order8 = sres.value
            strat_rows = sres.rows_used

    rank_mmax = None
    kernel = []
    witness = None
    p_value = None
    if js.order >= 8:
        mm = matrix_Mmax(js)
        rkm = linalg.rank_kernel(mm, tol)
        marginal = marginal or rkm.marginal
        rank_mmax = rkm.rank
        kernel = rkm.kernel
        witness, wit_marginal = kernel_has_nondegenerate(kernel, tol)
        marginal = marginal or wit_marginal
        if witness is not None:
            p_value = genericity_P(witness)
        elif kernel:
            p_value = 0

    s_dim = None
    cartan_ranks = []
    koenigs = None
    if js.order >= 5:
        cres = cartan_stabilize(js, tol)
        marginal = marginal or cres.marginal
        s_dim = cres.s_dim
        cartan_ranks = cres.ranks
        koenigs = cres.koenigs_ok
        if cres.stabilized_at is None:
            notes.append("derivative ranks did not stabilise "
                         "within the available order")

    exact = js.exact
    if not exact and marginal:
        verdict = VERDICT_INCONCLUSIVE
        notes.append("rank decisions were numerically marginal")
    elif rk.rank == 6:
        verdict = VERDICT_NOT
    elif rank_mmax == 6:
        verdict = VERDICT_NOT
    elif rank_mmax is None:
        verdict = VERDICT_INCONCLUSIVE
        notes.append("jet order below 8: saturated stack unavailable")
    elif witness is not None:
        verdict = VERDICT_METRISABLE
    else:
        verdict = VERDICT_DEGENERATE

    return PointReport(
        point=tuple(point),
        mode="exact" if exact else "float",
        verdict=verdict,
        flat=flat,
        marginal=marginal,
        l1=l1j.value,
        l2=l2j.value,
        i1_coeffs=(-6 * l1j.value, -6 * l2j.value),
        nu5=nu,
        v_row=v_row,
        det_m=det_m,
        rank_m=rk.rank,
        e1=e1,
        e2=e2,
        e_fallback=e_fallback,
        order7=order7,
        order8=order8,
        stratified_rows=strat_rows,
        rank_mmax=rank_mmax,
        kernel=kernel,
        witness=witness,
        p_value=p_value,
        s_dim=s_dim,
        cartan_ranks=cartan_ranks,
        koenigs_ok=koenigs,
        notes=notes,
    )


def decide_metrisability(structure, points, order=10, tol=1e-9, mode="auto"):
    """Verdict over a sample of points.

    All points flat (both scalar invariants vanish to the working order)
    gives MetrisableFlat.  Otherwise each point is classified on its own
    and a unanimous classification is returned; disagreement between points
    or any marginal numerics gives Inconclusive.
    """
    if not points:
        raise ValueError("at least one sample point is required")
    reports = [
        analyze_point(structure, p, order, tol, mode) for p in points
    ]
    notes = []
    modes = {r.mode for r in reports}
    mode_tag = modes.pop() if len(modes) == 1 else "mixed"

    if all(r.flat for r in reports):
        return ObstructionReport(VERDICT_FLAT, reports, order, tol, mode_tag,
                                 ["flat to the working order at every "
                                  "sample point"])
    verdicts = {r.verdict for r in reports}
    if len(verdicts) == 1:
        verdict = verdicts.pop()
    else:
        verdict = VERDICT_INCONCLUSIVE
        notes.append("sample points disagree: " + ", ".join(
            sorted("%s at (%s, %s)" % (r.verdict, r.point[0], r.point[1])
                   for r in reports)
        ))
    return ObstructionReport(verdict, reports, order, tol, mode_tag, notes)
