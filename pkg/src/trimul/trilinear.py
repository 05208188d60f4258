"""Evaluators for the corrected trilinear aggregation identity.

The identity rewrites the trilinear form Trace(ABC + UVW + XYZ) as one
aggregated rank-one family plus correction terms, for any split g + h = n
with g, h nonzero:

    sum_{i,j,k} (a_ij + u_jk + x_ki)(b_jk + v_ki + y_ij)(c_ki + w_ij + z_jk)
      - sum_{i,j,k} [ a_ij v_ki z_jk + u_jk y_ij c_ki + x_ki b_jk w_ij ]
      + (per-i, per-j and per-k aggregate corrections, see _correction_*)
      - (six pairwise correction sums, see _pair_sums)

The aggregate corrections carry a parameter q in coefficients (q-g)/h^2
and (q-h)/g^2.  The identity holds exactly if and only if q = n; for any
other q the two sides differ by the closed-form residual (q - n) * S
computed by :func:`residual_formula`.  The uncorrected value q = 1
therefore fails for every n >= 2, which is what :func:`verify_identity`
demonstrates over exact rationals.

Everything here evaluates over exact rationals; float-mode inputs are
rejected because residuals must be compared with exact zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .core import (
    DimensionMismatchError,
    DisjointInputs,
    DualTensors,
    Scalar,
    format_scalar,
    trace_triple,
)

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class IdentityParams:
    """Dimension n and the split g + h = n, plus the correction parameter q."""

    n: int
    g: Fraction
    h: Fraction
    q: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.g + self.h != self.n:
            raise ValueError(f"g + h must equal n: {self.g} + {self.h} != {self.n}")
        if self.g == 0 or self.h == 0:
            raise ValueError("g and h must be nonzero (the identity divides by them)")

    @classmethod
    def of(cls, n: int, g, q) -> "IdentityParams":
        """Build params with h derived from g + h = n."""
        g = Fraction(g)
        return cls(n=n, g=g, h=n - g, q=Fraction(q))


class _Marginals(NamedTuple):
    """Row and column sums of all nine arrays.

    `rows` sums over the second index, `cols` over the first, so e.g.
    a_rows[i] = sum_j a_ij and x_cols[i] = sum_k x_ki.
    """

    a_rows: tuple
    a_cols: tuple
    b_rows: tuple
    b_cols: tuple
    u_rows: tuple
    u_cols: tuple
    v_rows: tuple
    v_cols: tuple
    x_rows: tuple
    x_cols: tuple
    y_rows: tuple
    y_cols: tuple
    c_rows: tuple
    c_cols: tuple
    w_rows: tuple
    w_cols: tuple
    z_rows: tuple
    z_cols: tuple


def _row_col_sums(m) -> tuple[tuple, tuple]:
    n = len(m)
    rows = tuple(sum(m[r][c] for c in range(n)) for r in range(n))
    cols = tuple(sum(m[r][c] for r in range(n)) for c in range(n))
    return rows, cols


def _marginals(inputs: DisjointInputs, duals: DualTensors) -> _Marginals:
    arrays = [m.entries for m in inputs.mats] + \
             [duals.c.entries, duals.w.entries, duals.z.entries]
    flat = []
    for arr in arrays:
        flat.extend(_row_col_sums(arr))
    return _Marginals(*flat)


def _require_exact(*items):
    for item in items:
        if item.mode != "exact":
            raise ValueError("identity evaluation runs over exact rationals only")


def eval_scalar_identity(a, b, c, u, v, w, x, y, z) -> tuple[Scalar, Scalar]:
    """Both sides of the scalar aggregation identity for nine scalars.

    lhs = a*b*c + u*v*w + x*y*z.  rhs aggregates the three monomials into
    one product of sums and subtracts the unwanted expansion terms, grouped
    exactly as the identity is stated.  The two are equal for all inputs.
    """
    lhs = a * b * c + u * v * w + x * y * z
    rhs = (
        (a + u + x) * (b + v + y) * (c + w + z)
        - (a * y * (c + w + z) + u * b * (w + z + c) + x * v * (z + c + w))
        - (a * (b + v) * w + u * (v + y) * z + x * (y + b) * c
           + (a + u) * v * c + (u + x) * y * w + (x + a) * b * z)
        - (a * v * z + u * y * c + x * b * w)
    )
    return lhs, rhs


def _aggregate_and_cross(inputs, duals, include_cross_terms: bool) -> Scalar:
    """sum_{i,j,k} of the rank-one aggregate, minus the three cross
    monomial families when requested."""
    n = inputs.n
    a, b, u, v, x, y = (m.entries for m in inputs.mats)
    c, w, z = duals.c.entries, duals.w.entries, duals.z.entries
    total = 0
    for i in range(n):
        for j in range(n):
            a_ij, y_ij, w_ij = a[i][j], y[i][j], w[i][j]
            for k in range(n):
                total += ((a_ij + u[j][k] + x[k][i])
                          * (b[j][k] + v[k][i] + y_ij)
                          * (c[k][i] + w_ij + z[j][k]))
                if include_cross_terms:
                    total -= (a_ij * v[k][i] * z[j][k]
                              + u[j][k] * y_ij * c[k][i]
                              + x[k][i] * b[j][k] * w_ij)
    return total


def _corrections(params: IdentityParams, s: _Marginals) -> Scalar:
    """The three aggregate correction sums (per-i, per-j, per-k).

    Each combines one product of mixed marginals with the two q-weighted
    triple-marginal terms whose coefficients (q-g)/h^2 and (q-h)/g^2 are
    the corrected values.
    """
    n, g, h, q = params.n, params.g, params.h, params.q
    qg = (q - g) / h ** 2
    qh = (q - h) / g ** 2
    total = 0
    for i in range(n):
        total += ((s.a_rows[i] / h + s.x_cols[i] / g)
                  * (s.y_rows[i] / h + s.v_cols[i] / g)
                  * (g * s.w_rows[i] + h * s.c_cols[i]))
        total += qg * s.a_rows[i] * s.y_rows[i] * s.w_rows[i]
        total += qh * s.x_cols[i] * s.v_cols[i] * s.c_cols[i]
    for j in range(n):
        total += ((s.a_cols[j] / g + s.u_rows[j] / h)
                  * (s.y_cols[j] / g + s.b_rows[j] / h)
                  * (h * s.w_cols[j] + g * s.z_rows[j]))
        total += qh * s.a_cols[j] * s.y_cols[j] * s.w_cols[j]
        total += qg * s.u_rows[j] * s.b_rows[j] * s.z_rows[j]
    for k in range(n):
        total += ((s.x_rows[k] / h + s.u_cols[k] / g)
                  * (s.v_rows[k] / h + s.b_cols[k] / g)
                  * (g * s.c_rows[k] + h * s.z_cols[k]))
        total += qg * s.x_rows[k] * s.v_rows[k] * s.c_rows[k]
        total += qh * s.u_cols[k] * s.b_cols[k] * s.z_cols[k]
    return total


def _pair_sums(params: IdentityParams, inputs, duals, s: _Marginals) -> Scalar:
    """The six subtracted pairwise sums, two per index pair (i,j), (j,k), (k,i)."""
    n, g, h = params.n, params.g, params.h
    a, b, u, v, x, y = (m.entries for m in inputs.mats)
    c, w, z = duals.c.entries, duals.w.entries, duals.z.entries
    total = 0
    for i in range(n):
        for j in range(n):
            total += ((a[i][j] + s.x_cols[i] / g) * (y[i][j] + s.v_cols[i] / g)
                      * (g * w[i][j] + s.c_cols[i]))
            total += ((a[i][j] + s.u_rows[j] / h) * (y[i][j] + s.b_rows[j] / h)
                      * (h * w[i][j] + s.z_rows[j]))
    for j in range(n):
        for k in range(n):
            total += ((u[j][k] + s.a_cols[j] / g) * (b[j][k] + s.y_cols[j] / g)
                      * (g * z[j][k] + s.w_cols[j]))
            total += ((u[j][k] + s.x_rows[k] / h) * (b[j][k] + s.v_rows[k] / h)
                      * (h * z[j][k] + s.c_rows[k]))
    for k in range(n):
        for i in range(n):
            total += ((x[k][i] + s.u_cols[k] / g) * (v[k][i] + s.b_cols[k] / g)
                      * (g * c[k][i] + s.z_cols[k]))
            total += ((x[k][i] + s.a_rows[i] / h) * (v[k][i] + s.y_rows[i] / h)
                      * (h * c[k][i] + s.w_rows[i]))
    return total


def eval_aggregated_rhs(params: IdentityParams, inputs: DisjointInputs,
                 duals: DualTensors,
                 include_cross_terms: bool = True) -> Scalar:
    """Right-hand side of the parameterized identity.

    With q = n and cross terms included this equals trace_triple exactly.
    With include_cross_terms=False the three cross monomial families are
    skipped, which is how the bilinear algorithm consumes the identity; the
    outputs it yields are then polluted by exactly Y*U, B*X and V*A.
    """
    _require_exact(*inputs.mats, duals.c, duals.w, duals.z)
    if not (params.n == inputs.n == duals.n):
        raise DimensionMismatchError("params, inputs and duals must agree on n")
    s = _marginals(inputs, duals)
    return (_aggregate_and_cross(inputs, duals, include_cross_terms)
            + _corrections(params, s)
            - _pair_sums(params, inputs, duals, s))


def eval_grouped_rhs(inputs: DisjointInputs, duals: DualTensors) -> Scalar:
    """Right-hand side of the summed scalar identity, grouped as stated:
    the aggregate product term, then groups (A), (B), (C).

    This is an unconditional identity: it equals trace_triple for every
    input, with no parameters involved.  It serves as the fixed point the
    parameterized identity must reduce to.
    """
    _require_exact(*inputs.mats, duals.c, duals.w, duals.z)
    if inputs.n != duals.n:
        raise DimensionMismatchError("inputs and duals must share dimension")
    n = inputs.n
    a, b, u, v, x, y = (m.entries for m in inputs.mats)
    c, w, z = duals.c.entries, duals.w.entries, duals.z.entries

    product_term = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                product_term += ((a[i][j] + u[j][k] + x[k][i])
                                 * (b[j][k] + v[k][i] + y[i][j])
                                 * (c[k][i] + w[i][j] + z[j][k]))

    group_a = 0
    for i in range(n):
        for j in range(n):
            group_a -= a[i][j] * y[i][j] * sum(c[k][i] + w[i][j] + z[j][k]
                                               for k in range(n))
    for j in range(n):
        for k in range(n):
            group_a -= u[j][k] * b[j][k] * sum(w[i][j] + z[j][k] + c[k][i]
                                               for i in range(n))
    for k in range(n):
        for i in range(n):
            group_a -= x[k][i] * v[k][i] * sum(z[j][k] + c[k][i] + w[i][j]
                                               for j in range(n))

    group_b = 0
    for i in range(n):
        for j in range(n):
            group_b -= a[i][j] * sum(b[j][k] + v[k][i] for k in range(n)) * w[i][j]
            group_b -= sum(u[j][k] + x[k][i] for k in range(n)) * y[i][j] * w[i][j]
    for j in range(n):
        for k in range(n):
            group_b -= u[j][k] * sum(v[k][i] + y[i][j] for i in range(n)) * z[j][k]
            group_b -= sum(x[k][i] + a[i][j] for i in range(n)) * b[j][k] * z[j][k]
    for k in range(n):
        for i in range(n):
            group_b -= x[k][i] * sum(y[i][j] + b[j][k] for j in range(n)) * c[k][i]
            group_b -= sum(a[i][j] + u[j][k] for j in range(n)) * v[k][i] * c[k][i]

    group_c = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                group_c -= (a[i][j] * v[k][i] * z[j][k]
                            + u[j][k] * y[i][j] * c[k][i]
                            + x[k][i] * b[j][k] * w[i][j])

    return product_term + group_a + group_b + group_c


def residual_formula(params: IdentityParams, inputs: DisjointInputs,
                     duals: DualTensors) -> Scalar:
    """Closed-form gap between the identity's two sides: (q - n) * S.

    S collects, over each outer index, the two triple-marginal products
    whose q-coefficients the correction terms carry.  The contract, exact
    for every input:

        eval_aggregated_rhs(q, cross terms included) - trace_triple == (q - n) * S
    """
    _require_exact(*inputs.mats, duals.c, duals.w, duals.z)
    if not (params.n == inputs.n == duals.n):
        raise DimensionMismatchError("params, inputs and duals must agree on n")
    n, g, h = params.n, params.g, params.h
    s = _marginals(inputs, duals)
    gg = g ** 2
    hh = h ** 2
    big_s = 0
    for i in range(n):
        big_s += (s.a_rows[i] * s.y_rows[i] * s.w_rows[i] / hh
                  + s.x_cols[i] * s.v_cols[i] * s.c_cols[i] / gg)
    for j in range(n):
        big_s += (s.a_cols[j] * s.y_cols[j] * s.w_cols[j] / gg
                  + s.u_rows[j] * s.b_rows[j] * s.z_rows[j] / hh)
    for k in range(n):
        big_s += (s.x_rows[k] * s.v_rows[k] * s.c_rows[k] / hh
                  + s.u_cols[k] * s.b_cols[k] * s.z_cols[k] / gg)
    return (params.q - n) * big_s


def trial_seeds(seed: int, trial: int) -> tuple[int, int]:
    """Derived (inputs, duals) seeds for one verification trial.

    Sequential sub-seeds are safe with SplitMix64, whose mixer was designed
    to decorrelate consecutive seeds; keeping the derivation this simple
    makes trials reproducible independently of each other.
    """
    base = seed + 2 * trial
    return base, base + 1


def trial_data(n: int, seed: int, trial: int,
               bound: int) -> tuple[DisjointInputs, DualTensors]:
    """The exact random inputs and duals that verification trial `trial` uses."""
    s_inputs, s_duals = trial_seeds(seed, trial)
    return (DisjointInputs.random(n, s_inputs, bound),
            DualTensors.random(n, s_duals, bound))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a randomized identity-verification campaign."""

    n: int
    g: Fraction
    h: Fraction
    q: Fraction
    trials: int
    seed: int
    per_trial: tuple
    max_abs_residual: Rational
    passed: bool

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "g": format_scalar(self.g),
            "h": format_scalar(self.h),
            "q": format_scalar(self.q),
            "trials": self.trials,
            "seed": self.seed,
            "max_abs_residual": str(format_scalar(self.max_abs_residual)),
            "pass": self.passed,
            "per_trial": [str(format_scalar(r)) for r in self.per_trial],
        }


def verify_identity(n: int, g, q, trials: int, seed: int,
                    bound: int = 5) -> VerificationReport:
    """Evaluate both identity sides at `trials` random exact points.

    Each trial draws fresh integer inputs and duals from its own derived
    seed, computes residual = eval_aggregated_rhs (cross terms included) minus
    trace_triple, and the campaign passes iff every residual is exactly
    zero.  Nonzero residuals pinpoint a wrong q: they all equal (q - n)*S.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    params = IdentityParams.of(n, g, q)
    residuals = []
    for t in range(trials):
        inputs, duals = trial_data(n, seed, t, bound)
        rhs = eval_aggregated_rhs(params, inputs, duals, include_cross_terms=True)
        residuals.append(rhs - trace_triple(inputs, duals))
    max_abs = max((abs(r) for r in residuals), default=0)
    return VerificationReport(
        n=n, g=params.g, h=params.h, q=params.q,
        trials=trials, seed=seed,
        per_trial=tuple(residuals),
        max_abs_residual=max_abs,
        passed=all(r == 0 for r in residuals),
    )
