"""Ring-generic square matrices, exact rational scalars, seeded generation,
and the naive-multiplication oracle everything else is checked against.

Matrices carry a *role tag* naming their row/column indices.  The three
disjoint products computed throughout the library are

    C = A*B     with  A = [a_ij],  B = [b_jk]   ->  C indexed (i, k)
    W = U*V     with  U = [u_jk],  V = [v_ki]   ->  W indexed (j, i)
    Z = X*Y     with  X = [x_ki],  Y = [y_ij]   ->  Z indexed (k, j)

and the dual coefficient arrays pair with the outputs transposed:
c is indexed (k, i), w is (i, j), z is (j, k).  The cyclic convention
(i,j) -> (j,k) -> (k,i) is load-bearing; operations consume matrices by
role, never by bare position.

Scalars are exact rationals (int or Fraction, always lowest terms) in
"exact" mode or binary floats in "float" mode.  Modes are fixed per matrix
at construction and never mixed within one computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

Scalar = Union[int, Fraction, float]

_MASK64 = (1 << 64) - 1


class DimensionMismatchError(ValueError):
    """Operands do not share the required dimension."""


class UnsupportedDimensionError(ValueError):
    """Dimension outside the domain an operation is defined for."""


class InputFormatError(ValueError):
    """A serialized document does not follow the exchange format."""


class SplitMix64:
    """Portable 64-bit generator (SplitMix64).

    Fixed by name so that seeded values are reproducible bit-for-bit in any
    implementation: the state advances by the 64-bit golden-ratio constant
    and the output is the standard two-round xor-shift-multiply mix.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next64()
            if r < limit:
                return r % bound

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed interval [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def unit_float(self) -> float:
        """Uniform float in [-1.0, 1.0)."""
        return (self.next64() >> 11) * (2.0 ** -52) - 1.0


class Role(str, Enum):
    """Which paper-side operand a matrix plays, fixing its index names."""

    A = "A"          # (i, j)
    B = "B"          # (j, k)
    U = "U"          # (j, k)
    V = "V"          # (k, i)
    X = "X"          # (k, i)
    Y = "Y"          # (i, j)
    C_DUAL = "C"     # (k, i), pairs with output C indexed (i, k)
    W_DUAL = "W"     # (i, j), pairs with output W indexed (j, i)
    Z_DUAL = "Z"     # (j, k), pairs with output Z indexed (k, j)

    @property
    def axes(self) -> tuple[str, str]:
        return _ROLE_AXES[self]


_ROLE_AXES = {
    Role.A: ("i", "j"),
    Role.B: ("j", "k"),
    Role.U: ("j", "k"),
    Role.V: ("k", "i"),
    Role.X: ("k", "i"),
    Role.Y: ("i", "j"),
    Role.C_DUAL: ("k", "i"),
    Role.W_DUAL: ("i", "j"),
    Role.Z_DUAL: ("j", "k"),
}


def _coerce_exact(value) -> Union[int, Fraction]:
    if isinstance(value, bool):
        raise InputFormatError("bool is not a scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise InputFormatError(f"exact mode requires int or Fraction, got {type(value).__name__}")


class Mat:
    """Dense square matrix over exact rationals or floats.

    Immutable after construction: entries are stored as a tuple of row
    tuples.  Equality is structural (dimension, mode, entries); the role
    tag is index-naming metadata and does not participate.
    """

    __slots__ = ("n", "entries", "role", "mode")

    def __init__(self, rows: Sequence[Sequence], role: Optional[Role] = None,
                 mode: str = "exact"):
        if mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {mode!r}")
        n = len(rows)
        if n < 1:
            raise UnsupportedDimensionError("dimension must be >= 1")
        coerce = _coerce_exact if mode == "exact" else float
        frozen = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatchError("matrix must be square")
            frozen.append(tuple(coerce(e) for e in row))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(frozen))
        object.__setattr__(self, "role", role)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    def __getitem__(self, r: int) -> tuple:
        return self.entries[r]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.n == other.n and self.mode == other.mode
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.mode, self.entries))

    def __repr__(self):
        tag = f" role={self.role.value}" if self.role is not None else ""
        return f"Mat(n={self.n},{tag} mode={self.mode}, entries={self.entries!r})"

    def _binop(self, other: "Mat", op) -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatchError(f"dimensions differ: {self.n} vs {other.n}")
        if self.mode != other.mode:
            raise ValueError("cannot mix exact and float matrices")
        role = self.role if self.role == other.role else None
        rows = [[op(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)]
        return Mat(rows, role=role, mode=self.mode)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def scale(self, factor) -> "Mat":
        return Mat([[e * factor for e in row] for row in self.entries],
                   role=self.role, mode=self.mode)

    def with_role(self, role: Optional[Role]) -> "Mat":
        return Mat(self.entries, role=role, mode=self.mode)

    @classmethod
    def zero(cls, n: int, role: Optional[Role] = None, mode: str = "exact") -> "Mat":
        fill = 0.0 if mode == "float" else 0
        return cls([[fill] * n for _ in range(n)], role=role, mode=mode)

    @classmethod
    def identity(cls, n: int, role: Optional[Role] = None, mode: str = "exact") -> "Mat":
        one, zero = (1.0, 0.0) if mode == "float" else (1, 0)
        return cls([[one if r == c else zero for c in range(n)] for r in range(n)],
                   role=role, mode=mode)

    @classmethod
    def unit(cls, n: int, r: int, c: int, role: Optional[Role] = None) -> "Mat":
        """Exact matrix with a single 1 at (r, c)."""
        if not (0 <= r < n and 0 <= c < n):
            raise IndexError(f"position ({r}, {c}) outside {n}x{n}")
        rows = [[0] * n for _ in range(n)]
        rows[r][c] = 1
        return cls(rows, role=role)


class MultTally:
    """Running count of non-scalar multiplications."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, k: int = 1):
        self.count += k


def format_scalar(value) -> Union[int, str]:
    """Exact scalar -> JSON value: int, or "p/q" for non-integers."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    raise InputFormatError(f"cannot serialize {type(value).__name__} exactly")


def parse_scalar(value) -> Union[int, Fraction]:
    """JSON value -> exact scalar. Accepts ints and "p/q" strings."""
    if isinstance(value, bool):
        raise InputFormatError("bool is not a scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            frac = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"bad rational literal {value!r}") from exc
        return int(frac) if frac.denominator == 1 else frac
    raise InputFormatError(f"entries must be integers or 'p/q' strings, got {value!r}")


def mat_to_doc(mat: Mat, name: Optional[str] = None) -> dict:
    """Matrix -> exchange document {"n":, "name":, "entries": [[...]]}."""
    if mat.mode != "exact":
        raise InputFormatError("only exact matrices take part in the exchange format")
    if name is None:
        name = mat.role.value if mat.role is not None else ""
    return {
        "n": mat.n,
        "name": name,
        "entries": [[format_scalar(e) for e in row] for row in mat.entries],
    }


def mat_from_doc(doc: dict, expect_role: Optional[Role] = None) -> Mat:
    """Exchange document -> matrix; role inferred from the document name."""
    if not isinstance(doc, dict):
        raise InputFormatError("matrix document must be a JSON object")
    try:
        n = doc["n"]
        name = doc.get("name", "")
        entries = doc["entries"]
    except KeyError as exc:
        raise InputFormatError(f"matrix document missing key {exc}") from exc
    if not isinstance(n, int) or n < 1:
        raise InputFormatError("'n' must be a positive integer")
    if not isinstance(entries, list) or len(entries) != n:
        raise InputFormatError(f"'entries' must be a list of {n} rows")
    role = None
    if expect_role is not None:
        if name and name != expect_role.value:
            raise InputFormatError(f"expected matrix named {expect_role.value!r}, got {name!r}")
        role = expect_role
    elif name:
        try:
            role = Role(name)
        except ValueError:
            role = None
    rows = []
    for row in entries:
        if not isinstance(row, list) or len(row) != n:
            raise InputFormatError("rows must all have length n")
        rows.append([parse_scalar(e) for e in row])
    return Mat(rows, role=role)


def random_matrix(n: int, seed: int, bound: int, role: Optional[Role] = None) -> Mat:
    """Exact matrix with entries uniform in [-bound, bound], from SplitMix64.

    Entries are drawn row-major; the same seed reproduces the same matrix
    bit for bit.
    """
    if n < 1:
        raise UnsupportedDimensionError("dimension must be >= 1")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    gen = SplitMix64(seed)
    rows = [[gen.integer(-bound, bound) for _ in range(n)] for _ in range(n)]
    return Mat(rows, role=role)


def random_float_matrix(n: int, seed: int, role: Optional[Role] = None) -> Mat:
    """Float matrix with entries uniform in [-1, 1), same generator."""
    if n < 1:
        raise UnsupportedDimensionError("dimension must be >= 1")
    gen = SplitMix64(seed)
    rows = [[gen.unit_float() for _ in range(n)] for _ in range(n)]
    return Mat(rows, role=role, mode="float")


def _check_role(mat: Mat, role: Role):
    if mat.role is not role:
        raise ValueError(f"expected role {role.value}, got "
                         f"{mat.role.value if mat.role else None}")


def _common_dimension(mats: Sequence[Mat]) -> int:
    n = mats[0].n
    if any(m.n != n for m in mats):
        raise DimensionMismatchError("all matrices must share one dimension")
    if any(m.mode != mats[0].mode for m in mats):
        raise ValueError("all matrices must share one mode")
    return n


@dataclass(frozen=True)
class DisjointInputs:
    """The six operands A, B, U, V, X, Y of the three disjoint products."""

    a: Mat
    b: Mat
    u: Mat
    v: Mat
    x: Mat
    y: Mat

    def __post_init__(self):
        for mat, role in zip(self.mats, (Role.A, Role.B, Role.U, Role.V, Role.X, Role.Y)):
            _check_role(mat, role)
        _common_dimension(self.mats)

    @property
    def mats(self) -> tuple[Mat, ...]:
        return (self.a, self.b, self.u, self.v, self.x, self.y)

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def mode(self) -> str:
        return self.a.mode

    @classmethod
    def random(cls, n: int, seed: int, bound: int) -> "DisjointInputs":
        # One sub-seed per operand, in fixed order A, B, U, V, X, Y.
        gen = SplitMix64(seed)
        roles = (Role.A, Role.B, Role.U, Role.V, Role.X, Role.Y)
        return cls(*(random_matrix(n, gen.next64(), bound, role) for role in roles))

    @classmethod
    def random_float(cls, n: int, seed: int) -> "DisjointInputs":
        gen = SplitMix64(seed)
        roles = (Role.A, Role.B, Role.U, Role.V, Role.X, Role.Y)
        return cls(*(random_float_matrix(n, gen.next64(), role) for role in roles))

    def to_doc(self) -> dict:
        return {mat.role.value: mat_to_doc(mat) for mat in self.mats}

    @classmethod
    def from_doc(cls, doc: dict) -> "DisjointInputs":
        if not isinstance(doc, dict):
            raise InputFormatError("inputs document must be a JSON object")
        roles = (Role.A, Role.B, Role.U, Role.V, Role.X, Role.Y)
        mats = []
        for role in roles:
            if role.value not in doc:
                raise InputFormatError(f"missing matrix {role.value!r}")
            mats.append(mat_from_doc(doc[role.value], expect_role=role))
        return cls(*mats)


@dataclass(frozen=True)
class DualTensors:
    """Dual coefficient arrays c (k,i), w (i,j), z (j,k)."""

    c: Mat
    w: Mat
    z: Mat

    def __post_init__(self):
        for mat, role in zip((self.c, self.w, self.z),
                             (Role.C_DUAL, Role.W_DUAL, Role.Z_DUAL)):
            _check_role(mat, role)
        _common_dimension((self.c, self.w, self.z))

    @property
    def n(self) -> int:
        return self.c.n

    @property
    def mode(self) -> str:
        return self.c.mode

    @classmethod
    def random(cls, n: int, seed: int, bound: int) -> "DualTensors":
        gen = SplitMix64(seed)
        roles = (Role.C_DUAL, Role.W_DUAL, Role.Z_DUAL)
        return cls(*(random_matrix(n, gen.next64(), bound, role) for role in roles))

    @classmethod
    def zeros(cls, n: int) -> "DualTensors":
        return cls(Mat.zero(n, Role.C_DUAL), Mat.zero(n, Role.W_DUAL),
                   Mat.zero(n, Role.Z_DUAL))

    @classmethod
    def unit(cls, n: int, which: str, row: int, col: int) -> "DualTensors":
        """All-zero duals except a single 1 pairing output entry (row, col).

        Outputs are indexed C (i,k), W (j,i), Z (k,j) while their duals are
        indexed transposed, so the 1 lands at [col][row] of the dual array.
        """
        if which not in ("C", "W", "Z"):
            raise ValueError(f"which must be 'C', 'W' or 'Z', got {which!r}")
        duals = cls.zeros(n)
        role = {"C": Role.C_DUAL, "W": Role.W_DUAL, "Z": Role.Z_DUAL}[which]
        unit = Mat.unit(n, col, row, role=role)
        parts = {"C": duals.c, "W": duals.w, "Z": duals.z}
        parts[which] = unit
        return cls(parts["C"], parts["W"], parts["Z"])


@dataclass(frozen=True)
class TripleResult:
    """The three outputs: C indexed (i,k), W indexed (j,i), Z indexed (k,j),
    plus a tally of the non-scalar multiplications spent producing them."""

    c: Mat
    w: Mat
    z: Mat
    op_count: int

    def __post_init__(self):
        _common_dimension((self.c, self.w, self.z))
        if self.op_count < 0:
            raise ValueError("op_count must be >= 0")

    @property
    def n(self) -> int:
        return self.c.n

    def to_doc(self, mode: str) -> dict:
        return {
            "C": mat_to_doc(self.c, name="C"),
            "W": mat_to_doc(self.w, name="W"),
            "Z": mat_to_doc(self.z, name="Z"),
            "mult_count": self.op_count,
            "mode": mode,
        }


def naive_matmul(p: Mat, q: Mat, tally: Optional[MultTally] = None) -> Mat:
    """Definitional product: result[r][c] = sum_s p[r][s] * q[s][c].

    Costs exactly n^3 scalar multiplications, recorded on `tally` when one
    is passed.  This is the oracle; nothing here is shared with the fast
    path it checks.
    """
    n = _common_dimension((p, q))
    rows = []
    for r in range(n):
        prow = p.entries[r]
        rows.append([sum(prow[s] * q.entries[s][c] for s in range(n))
                     for c in range(n)])
    if tally is not None:
        tally.add(n * n * n)
    return Mat(rows, mode=p.mode)


def naive_triple_product(inputs: DisjointInputs) -> TripleResult:
    """All three disjoint products by naive multiplication: 3*n^3 mults."""
    tally = MultTally()
    c = naive_matmul(inputs.a, inputs.b, tally)   # (i, k)
    w = naive_matmul(inputs.u, inputs.v, tally)   # (j, i)
    z = naive_matmul(inputs.x, inputs.y, tally)   # (k, j)
    return TripleResult(c, w, z, tally.count)


def trace_triple(inputs: DisjointInputs, duals: DualTensors) -> Scalar:
    """The trilinear form sum_{i,j,k} (a_ij b_jk c_ki + u_jk v_ki w_ij
    + x_ki y_ij z_jk), i.e. Trace(ABC + UVW + XYZ) written out directly."""
    if inputs.n != duals.n:
        raise DimensionMismatchError("inputs and duals must share dimension")
    n = inputs.n
    a, b, u, v, x, y = (m.entries for m in inputs.mats)
    c, w, z = duals.c.entries, duals.w.entries, duals.z.entries
    total = 0
    for i in range(n):
        for j in range(n):
            a_ij, y_ij, w_ij = a[i][j], y[i][j], w[i][j]
            for k in range(n):
                total += (a_ij * b[j][k] * c[k][i]
                          + u[j][k] * v[k][i] * w_ij
                          + x[k][i] * y_ij * z[j][k])
    return total
