"""The explicit bilinear algorithm for three disjoint matrix products.

Fixing the split g = 1, h = n - 1 and dropping the three cross monomial
families turns the aggregation identity into a bilinear scheme that spends
n^3 + 6n^2 + 9n non-scalar multiplications on all three products together.
Every stored product is one multiplication of two linear forms in the
input entries:

    full        p_full[i][j][k] = (a_ij + u_jk + x_ki)(b_jk + v_ki + y_ij)

    pair[0] (i,j)  (a_ij + sum_k x_ki)        * (y_ij + sum_k v_ki)
    pair[1] (i,j)  (a_ij + sum_k u_jk/(n-1))  * (y_ij + sum_k b_jk/(n-1))
    pair[2] (j,k)  (u_jk + sum_i a_ij)        * (b_jk + sum_i y_ij)
    pair[3] (j,k)  (u_jk + sum_i x_ki/(n-1))  * (b_jk + sum_i v_ki/(n-1))
    pair[4] (k,i)  (x_ki + sum_j u_jk)        * (v_ki + sum_j b_jk)
    pair[5] (k,i)  (x_ki + sum_j a_ij/(n-1))  * (v_ki + sum_j y_ij/(n-1))

    line[0] (i)  (sum_j a_ij/(n-1) + sum_k x_ki) * (sum_j y_ij/(n-1) + sum_k v_ki)
    line[1] (i)  (sum_j a_ij)(sum_j y_ij)/(n-1)
    line[2] (i)  (sum_k x_ki)(sum_k v_ki)
    line[3] (j)  (sum_i a_ij + sum_k u_jk/(n-1)) * (sum_i y_ij + sum_k b_jk/(n-1))
    line[4] (j)  (sum_i a_ij)(sum_i y_ij)
    line[5] (j)  (sum_k u_jk)(sum_k b_jk)/(n-1)
    line[6] (k)  (sum_i x_ki/(n-1) + sum_j u_jk) * (sum_i v_ki/(n-1) + sum_j b_jk)
    line[7] (k)  (sum_i x_ki)(sum_i v_ki)/(n-1)
    line[8] (k)  (sum_j u_jk)(sum_j b_jk)

The output combinations use only additions and scalar-constant multiples
of these.  Because the cross families are dropped, the raw outputs carry
an exact, structured pollution:

    C_raw = A*B + Y*U      (entrywise, C indexed (i, k))
    W_raw = U*V + B*X      (W indexed (j, i))
    Z_raw = X*Y + V*A      (Z indexed (k, j))

Corrected mode subtracts those three cross products, computed naively at
3n^3 extra multiplications, and returns the exact results.

Every combination coefficient below was cross-validated against
:func:`extract_output_via_duals`, which derives the same entry from the
identity evaluator with a one-hot dual array and is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    DimensionMismatchError,
    DisjointInputs,
    DualTensors,
    Mat,
    MultTally,
    Scalar,
    TripleResult,
    UnsupportedDimensionError,
    naive_matmul,
)
from .trilinear import IdentityParams, eval_aggregated_rhs


def count_products(n: int) -> int:
    """Non-scalar multiplications the scheme spends at dimension n."""
    return n ** 3 + 6 * n ** 2 + 9 * n


def _require_n2(n: int):
    if n < 2:
        raise UnsupportedDimensionError(
            "the bilinear scheme needs n >= 2 (it divides by n - 1)")


@dataclass(frozen=True)
class ProductSet:
    """All non-scalar products of one run, plus the multiplication tally.

    `p_full` is indexed [i][j][k]; `p_pair` holds the six pair families in
    the order of the table above (indexed (i,j), (i,j), (j,k), (j,k),
    (k,i), (k,i)); `p_line` the nine per-index families (three per index
    i, j, k).
    """

    n: int
    mode: str
    p_full: tuple
    p_pair: tuple
    p_line: tuple
    mult_count: int


@dataclass(frozen=True)
class CrossCorrections:
    """The three cross products the raw outputs are polluted by."""

    dc: Mat   # (i, k) = (Y*U)_ik
    dw: Mat   # (j, i) = (B*X)_ji
    dz: Mat   # (k, j) = (V*A)_kj
    mult_count: int


def compute_products(inputs: DisjointInputs) -> ProductSet:
    """Evaluate every product family; tally is exactly n^3 + 6n^2 + 9n."""
    n = inputs.n
    _require_n2(n)
    a, b, u, v, x, y = (m.entries for m in inputs.mats)
    inv = 1.0 / (n - 1) if inputs.mode == "float" else Fraction(1, n - 1)

    # Marginals, each scaled copy shared across families (additions only).
    a_rows = [sum(a[i][j] for j in range(n)) for i in range(n)]
    y_rows = [sum(y[i][j] for j in range(n)) for i in range(n)]
    a_cols = [sum(a[i][j] for i in range(n)) for j in range(n)]
    y_cols = [sum(y[i][j] for i in range(n)) for j in range(n)]
    u_rows = [sum(u[j][k] for k in range(n)) for j in range(n)]
    b_rows = [sum(b[j][k] for k in range(n)) for j in range(n)]
    u_cols = [sum(u[j][k] for j in range(n)) for k in range(n)]
    b_cols = [sum(b[j][k] for j in range(n)) for k in range(n)]
    x_rows = [sum(x[k][i] for i in range(n)) for k in range(n)]
    v_rows = [sum(v[k][i] for i in range(n)) for k in range(n)]
    x_cols = [sum(x[k][i] for k in range(n)) for i in range(n)]
    v_cols = [sum(v[k][i] for k in range(n)) for i in range(n)]

    tally = MultTally()

    p_full = []
    for i in range(n):
        plane = []
        for j in range(n):
            a_ij, y_ij = a[i][j], y[i][j]
            row = []
            for k in range(n):
                row.append((a_ij + u[j][k] + x[k][i]) * (b[j][k] + v[k][i] + y_ij))
                tally.add()
            plane.append(tuple(row))
        p_full.append(tuple(plane))

    def pair(first, second):
        out = []
        for r in range(n):
            row = []
            for c in range(n):
                row.append(first(r, c) * second(r, c))
                tally.add()
            out.append(tuple(row))
        return tuple(out)

    p_pair = (
        pair(lambda i, j: a[i][j] + x_cols[i], lambda i, j: y[i][j] + v_cols[i]),
        pair(lambda i, j: a[i][j] + u_rows[j] * inv, lambda i, j: y[i][j] + b_rows[j] * inv),
        pair(lambda j, k: u[j][k] + a_cols[j], lambda j, k: b[j][k] + y_cols[j]),
        pair(lambda j, k: u[j][k] + x_rows[k] * inv, lambda j, k: b[j][k] + v_rows[k] * inv),
        pair(lambda k, i: x[k][i] + u_cols[k], lambda k, i: v[k][i] + b_cols[k]),
        pair(lambda k, i: x[k][i] + a_rows[i] * inv, lambda k, i: v[k][i] + y_rows[i] * inv),
    )

    def line(first, second, post=None):
        out = []
        for t in range(n):
            prod = first(t) * second(t)
            tally.add()
            out.append(prod * post if post is not None else prod)
        return tuple(out)

    p_line = (
        line(lambda i: a_rows[i] * inv + x_cols[i], lambda i: y_rows[i] * inv + v_cols[i]),
        line(lambda i: a_rows[i], lambda i: y_rows[i], post=inv),
        line(lambda i: x_cols[i], lambda i: v_cols[i]),
        line(lambda j: a_cols[j] + u_rows[j] * inv, lambda j: y_cols[j] + b_rows[j] * inv),
        line(lambda j: a_cols[j], lambda j: y_cols[j]),
        line(lambda j: u_rows[j], lambda j: b_rows[j], post=inv),
        line(lambda k: x_rows[k] * inv + u_cols[k], lambda k: v_rows[k] * inv + b_cols[k]),
        line(lambda k: x_rows[k], lambda k: v_rows[k], post=inv),
        line(lambda k: u_cols[k], lambda k: b_cols[k]),
    )

    return ProductSet(n=n, mode=inputs.mode, p_full=tuple(p_full),
                      p_pair=p_pair, p_line=p_line, mult_count=tally.count)


def combine_outputs(products: ProductSet, n: int) -> TripleResult:
    """Raw outputs from stored products: additions, subtractions and
    multiples by the constant n - 1 only, no new non-scalar products.

    Float mode keeps the reduction order fixed (ascending summation index)
    so results are bit-reproducible.
    """
    if n != products.n:
        raise DimensionMismatchError(f"products were computed for n={products.n}")
    m = n - 1
    full = products.p_full
    p0, p1, p2, p3, p4, p5 = products.p_pair
    l0, l1, l2, l3, l4, l5, l6, l7, l8 = products.p_line

    c_rows = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = sum(full[i][j][k] - p0[i][j] - p3[j][k] for j in range(n))
            acc -= p4[k][i] + m * p5[k][i]
            acc += m * l0[i] + l2[i] + l6[k] + l7[k]
            row.append(acc)
        c_rows.append(row)

    w_rows = []
    for j in range(n):
        row = []
        for i in range(n):
            acc = sum(full[i][j][k] - p2[j][k] - p5[k][i] for k in range(n))
            acc -= p0[i][j] + m * p1[i][j]
            acc += l0[i] + l1[i] + m * l3[j] + l4[j]
            row.append(acc)
        w_rows.append(row)

    z_rows = []
    for k in range(n):
        row = []
        for j in range(n):
            acc = sum(full[i][j][k] - p1[i][j] - p4[k][i] for i in range(n))
            acc -= p2[j][k] + m * p3[j][k]
            acc += l3[j] + l5[j] + m * l6[k] + l8[k]
            row.append(acc)
        z_rows.append(row)

    mode = products.mode
    return TripleResult(Mat(c_rows, mode=mode), Mat(w_rows, mode=mode),
                        Mat(z_rows, mode=mode), products.mult_count)


def cross_corrections(inputs: DisjointInputs) -> CrossCorrections:
    """The cross products Y*U, B*X, V*A by direct naive multiplication."""
    tally = MultTally()
    dc = naive_matmul(inputs.y, inputs.u, tally)   # (i, k)
    dw = naive_matmul(inputs.b, inputs.x, tally)   # (j, i)
    dz = naive_matmul(inputs.v, inputs.a, tally)   # (k, j)
    return CrossCorrections(dc=dc, dw=dw, dz=dz, mult_count=tally.count)


def disjoint_multiply(inputs: DisjointInputs, mode: str = "corrected") -> TripleResult:
    """Run the scheme end to end.

    mode="raw" executes the combination formulas verbatim and returns the
    cross-polluted outputs at n^3 + 6n^2 + 9n multiplications.
    mode="corrected" additionally subtracts Y*U, B*X, V*A (3n^3 more) and
    returns C = A*B, W = U*V, Z = X*Y exactly.
    """
    if mode not in ("raw", "corrected"):
        raise ValueError(f"mode must be 'raw' or 'corrected', got {mode!r}")
    _require_n2(inputs.n)
    raw = combine_outputs(compute_products(inputs), inputs.n)
    if mode == "raw":
        return raw
    fix = cross_corrections(inputs)
    return TripleResult(raw.c - fix.dc, raw.w - fix.dw, raw.z - fix.dz,
                        raw.op_count + fix.mult_count)


def extract_output_via_duals(inputs: DisjointInputs, which: str, row: int,
                             col: int, include_cross_terms: bool = False) -> Scalar:
    """One output entry read off the identity with a one-hot dual array.

    Evaluates the aggregated identity at q = n, g = 1, h = n - 1 with a
    dual tensor that is 1 at the single position pairing output entry
    (row, col) and 0 elsewhere.  This is the authoritative derivation of
    the combination formulas: with cross terms omitted it must equal the
    corresponding combine_outputs entry; with them included, the true
    product entry.
    """
    n = inputs.n
    _require_n2(n)
    if which not in ("C", "W", "Z"):
        raise ValueError(f"which must be 'C', 'W' or 'Z', got {which!r}")
    if not (0 <= row < n and 0 <= col < n):
        raise IndexError(f"entry ({row}, {col}) outside {n}x{n}")
    duals = DualTensors.unit(n, which, row, col)
    params = IdentityParams.of(n, 1, n)
    return eval_aggregated_rhs(params, inputs, duals,
                               include_cross_terms=include_cross_terms)
