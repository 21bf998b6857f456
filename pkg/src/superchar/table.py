"""The supercharacter table and the identities it satisfies.

Cells are stored as an integer array ``A[r, c, k]`` (exponent counts of
zeta^k) over one common denominator, so that row and column sums can be
done in bulk.  Every check compares exact elements of Q(zeta_p).  Small
tables use direct integer convolution; large ones use the modular images of
:mod:`superchar.exact`, which are exact by a CRT bound.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import exact
from .cyclotomic import CycNumber
from .errors import IdentityViolation
from .finite_field import FieldCtx
from .group import DEFAULT_BRUTE_BOUND, SylowGroup
from .roots import BasicPair, Family
from .superclass import SuperclassModel
from .supercharacter import CharacterModel

# direct integer paths are used below these operation counts
DIRECT_LIMIT = 2 * 10**7


@dataclass
class CheckResult:
    """Outcome of one family of identities."""

    name: str
    instances: int = 0
    failed: int = 0
    first_counterexample: Optional[str] = None
    method: str = ""
    note: str = ""

    @property
    def passed(self) -> int:
        return self.instances - self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def fail(self, count: int, example: str) -> None:
        self.failed += count
        if self.first_counterexample is None:
            self.first_counterexample = example

    def to_json(self) -> dict:
        out = {
            "identity": self.name,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "method": self.method,
        }
        if self.first_counterexample is not None:
            out["first_counterexample"] = self.first_counterexample
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class SuperTable:
    """Rows are supercharacters, columns superclasses, both in basic-pair order."""

    family: Family
    ctx: FieldCtx
    pairs: list[BasicPair]
    A: np.ndarray
    den: int
    sizes: Optional[list[int]] = None
    order: int = 0
    _cells: dict = field(default_factory=dict, repr=False)

    # construction ----------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        G: SylowGroup,
        sizes: Optional[Sequence[int]] = None,
        bound: int = DEFAULT_BRUTE_BOUND,
        with_sizes: bool = True,
    ) -> "SuperTable":
        """Closed-form values for every (character, class) pair.

        Superclass sizes are counted by classifying every element unless
        ``sizes`` is given or ``with_sizes`` is false.
        """
        X = CharacterModel(G)
        S = SuperclassModel(G)
        pairs = S.pairs
        p = G.ctx.p
        order = G.ctx.q ** len(G.family.roots)
        if sizes is None and with_sizes:
            G.check_bound(bound)
            index = {pr: k for k, pr in enumerate(pairs)}
            counts = [0] * len(pairs)
            for z in G.elements(bound):
                counts[index[S.superclass_of(z)]] += 1
            sizes = counts
        rows = [[X.value(a, b) for b in pairs] for a in pairs]
        A, den = exact.to_array(rows, p)
        table = cls(G.family, G.ctx, list(pairs), A, den, list(sizes) if sizes is not None else None, order)
        table.check_shape()
        return table

    def check_shape(self) -> None:
        R, C, p = self.A.shape
        if R != C or R != len(self.pairs) or p != self.ctx.p:
            raise IdentityViolation("table is not square over the basic pairs")
        if self.sizes is not None:
            if len(self.sizes) != C:
                raise IdentityViolation("one size per superclass expected")
            if sum(self.sizes) != self.order:
                raise IdentityViolation(f"superclass sizes sum to {sum(self.sizes)}, not |U| = {self.order}")

    # cells ---------------------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    def __len__(self) -> int:
        return len(self.pairs)

    def cell(self, r: int, c: int) -> CycNumber:
        got = self._cells.get((r, c))
        if got is None:
            got = exact.from_vector(self.p, self.A[r, c], self.den)
            self._cells[(r, c)] = got
        return got

    def row(self, r: int) -> list[CycNumber]:
        return [self.cell(r, c) for c in range(len(self))]

    @cached_property
    def identity_column(self) -> int:
        for c, pr in enumerate(self.pairs):
            if len(pr) == 0:
                return c
        raise IdentityViolation("no empty basic pair")  # pragma: no cover

    @cached_property
    def degrees(self) -> list[int]:
        out = []
        for r in range(len(self)):
            v = self.cell(r, self.identity_column).as_rational()
            if v is None or v.denominator != 1 or v <= 0:
                raise IdentityViolation(f"degree of row {r} is not a positive integer: {v}")
            out.append(int(v))
        return out

    def weights(self) -> np.ndarray:
        if self.sizes is None:
            raise IdentityViolation("superclass sizes are required")
        return np.asarray(self.sizes, dtype=self.A.dtype)

    @cached_property
    def norms(self) -> list[Fraction]:
        """<xi, xi> = (1/|U|) sum_K |K| |xi(z_K)|^2 for every row."""
        auto = exact.autocorrelation(self.A, self.weights())
        out = []
        for r in range(len(self)):
            red = exact.reduced(auto[r])
            if any(red[1:]):
                raise IdentityViolation(f"norm of row {r} is not rational")
            out.append(Fraction(int(red[0]), self.den**2 * self.order))
        return out

    # Frobenius products on class functions ----------------------------------------------------

    def inner_product(self, f: Sequence[CycNumber], g: Sequence[CycNumber]) -> CycNumber:
        """(1/|U|) sum_K |K| f(z_K) conj(g(z_K)) for functions given per column."""
        total = CycNumber.zero(self.p)
        for size, a, b in zip(self.weights().tolist(), f, g):
            if not a.is_zero() and not b.is_zero():
                total = total + a * b.conjugate() * size
        return total / self.order

    def row_inner_product(self, r: int, s: int) -> CycNumber:
        return self.inner_product(self.row(r), self.row(s))

    # output ---------------------------------------------------------------------------------

    def column_ids(self) -> list[str]:
        return [pr.key() for pr in self.pairs]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["id", "degree", "norm"] + self.column_ids()
        w.writerow(header)
        w.writerow(["|K|", "", ""] + [str(s) for s in self.sizes] if self.sizes is not None else ["|K|", "", ""])
        norms = self.norms if self.sizes is not None else [None] * len(self)
        for r, pr in enumerate(self.pairs):
            nrm = "" if norms[r] is None else str(norms[r])
            w.writerow([pr.key(), str(self.degrees[r]), nrm] + [self.cell(r, c).literal() for c in range(len(self))])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "family": self.family.letter,
            "n": self.family.n,
            "p": self.ctx.p,
            "e": self.ctx.e,
            "modulus": list(self.ctx.modulus),
            "basic_pairs": [pr.to_json() for pr in self.pairs],
            "sizes": self.sizes,
            "degrees": self.degrees,
            "norms": [str(x) for x in self.norms] if self.sizes is not None else None,
            "values": [[self.cell(r, c).to_json() for c in range(len(self))] for r in range(len(self))],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"


# orthogonality -----------------------------------------------------------------------------


def _gram_direct(A: np.ndarray, B: np.ndarray, weights: Sequence[int]) -> np.ndarray:
    """Exact G[r,s,:] = sum_c w_c A[r,c] * conj(B[s,c]) as exponent vectors."""
    p = A.shape[-1]
    w = np.asarray([int(x) for x in weights], dtype=object if A.dtype == object else np.int64)
    Bc = np.roll(B[..., ::-1], 1, axis=-1)  # conj: exponent k -> -k
    out = np.zeros((A.shape[0], B.shape[0], p), dtype=A.dtype)
    Aw = A * w.reshape(1, -1, 1)
    for s in range(p):
        # (x * y)[s] = sum_k x[k] y[s-k]
        shifted = np.roll(Bc[:, :, ::-1], s + 1, axis=-1)  # shifted[..., k] = Bc[..., s-k]
        out[:, :, s] = np.tensordot(Aw, shifted, axes=([1, 2], [1, 2]))
    return out


def _direct_cost(R: int, S: int, C: int, p: int) -> int:
    return R * S * C * p * p


def _gram_check(
    result: CheckResult,
    A: np.ndarray,
    B: np.ndarray,
    weights: Sequence[int],
    row_scale: Sequence[int],
    diag: Sequence[int],
    labels: Sequence[str],
    method: str,
) -> None:
    """Check row_scale[r] * sum_c w_c A[r,c] conj(B[s,c]) = delta_rs * diag[r] for all r, s."""
    R, S, p = A.shape[0], B.shape[0], A.shape[-1]
    diag = [int(d) for d in diag]
    result.instances += R * S
    if method == "auto":
        method = "direct" if _direct_cost(R, S, A.shape[1], p) <= DIRECT_LIMIT else "modular"
    result.method = method
    if method == "direct":
        G = _gram_direct(A, B, weights)
        G = G * np.asarray(row_scale, dtype=G.dtype).reshape(-1, 1, 1)
        red = exact.reduced(G)
        want = np.zeros_like(red)
        for r in range(min(R, S)):
            want[r, r, 0] = diag[r]
        bad = np.argwhere((red != want).any(axis=-1))
    elif method == "modular":
        scale = np.asarray([int(x) for x in row_scale], dtype=object)
        bound = exact.gram_bound(A, B, weights) * int(np.abs(scale).max()) + max(abs(int(d)) for d in diag)
        badmask = np.zeros((R, S), dtype=bool)
        for emb, Gh in exact.weighted_gram(A, B, weights, True, bound):
            sc = emb.scalar(scale).reshape(1, -1, 1)
            Gh = np.mod(Gh * sc, emb.ell)
            want = np.zeros((R, S))
            for r in range(min(R, S)):
                want[r, r] = float(int(diag[r]) % emb.ell)
            badmask |= (Gh != want[None]).any(axis=0)
        bad = np.argwhere(badmask)
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(bad):
        r, s = (int(x) for x in bad[0])
        result.fail(len(bad), f"({labels[r]}, {labels[s]})")


def check_orthogonality(table: SuperTable, method: str = "auto") -> list[CheckResult]:
    """Row relation (first orthogonality) and column relation (second orthogonality).

    Failures are recorded in the results, never raised.
    """
    U = table.order
    labels = [pr.label() for pr in table.pairs]
    d2 = table.den**2
    rows = CheckResult("row orthogonality")
    cols = CheckResult("column orthogonality")
    try:
        norms = table.norms
    except IdentityViolation as exc:
        for res in (rows, cols):
            res.instances = len(table) ** 2
            res.fail(1, str(exc))
        return [rows, cols]

    # sum_c |K_c| A[r,c] conj(A[s,c]) = delta_rs <xi_r,xi_r> |U| den^2
    _gram_check(rows, table.A, table.A, table.sizes, [1] * len(table), [n * U * d2 for n in norms], labels, method)

    if any(n <= 0 for n in norms):
        cols.instances = len(table) ** 2
        cols.fail(1, "a row has non-positive norm")
        return [rows, cols]
    # weights M / <xi_r,xi_r> with M clearing every numerator; scaling column c by |K_c|
    # turns sum_r w_r A[r,c] conj(A[r,c']) into delta_cc' M den^2 |U|
    M = 1
    for n in norms:
        M = M * n.numerator // np.gcd(M, n.numerator)
    M = int(M)
    weights = [M * n.denominator // n.numerator for n in norms]
    At = np.ascontiguousarray(table.A.transpose(1, 0, 2))
    _gram_check(cols, At, At, weights, table.sizes, [M * d2 * U] * len(table), labels, method)
    return [rows, cols]


def regular_decomposition(table: SuperTable) -> list[int]:
    """Coefficients xi(1)/<xi,xi> of the regular character; raises if not positive integers."""
    out = []
    for r, (deg, nrm) in enumerate(zip(table.degrees, table.norms)):
        m = Fraction(deg) / nrm
        if m.denominator != 1 or m <= 0:
            raise IdentityViolation(f"coefficient of row {table.pairs[r].label()} is {m}")
        out.append(int(m))
    return out


def check_regular(table: SuperTable) -> CheckResult:
    """sum_r m_r xi_r equals |U| at the identity and 0 on every other class."""
    res = CheckResult("regular character", instances=len(table), method="direct")
    try:
        coeff = regular_decomposition(table)
    except IdentityViolation as exc:
        res.fail(1, str(exc))
        return res
    m = np.asarray(coeff, dtype=object).reshape(-1, 1, 1)
    total = (table.A.astype(object) * m).sum(axis=0)  # (C, p)
    red = exact.reduced(total)
    idc = table.identity_column
    for c in range(len(table)):
        want = [table.order * table.den if (c == idc and k == 0) else 0 for k in range(table.p - 1)]
        if list(red[c]) != want:
            res.fail(1, f"value {exact.from_vector(table.p, total[c], table.den)} at {table.pairs[c].label()}")
    return res


# convolution -------------------------------------------------------------------------------------


def convolve(data, f: Sequence[CycNumber], g: Sequence[CycNumber]) -> list[CycNumber]:
    """(f * g)(z) = sum_x f(x) g(z x^-1) on every element, f and g given per element."""
    p = data.ctx.p
    N = data.order
    inv = data.inverse
    out = []
    for z in range(N):
        idx = data.product_index(np.full(N, z), inv)
        total = CycNumber.zero(p)
        for x in range(N):
            a, b = f[x], g[idx[x]]
            if not a.is_zero() and not b.is_zero():
                total = total + a * b
        out.append(total)
    return out


def _quotient_table(data) -> np.ndarray:
    """Q[z, x] = superclass of z x^-1, for every pair of elements."""
    N = data.order
    inv = data.inverse
    Q = np.empty((N, N), dtype=np.int64)
    for z in range(N):
        Q[z] = data.superclass[data.product_index(np.full(N, z), inv)]
    return Q


def convolution_scalars(table: SuperTable) -> list[int]:
    """|U| <xi,xi> / xi(1), the eigenvalue of xi under self-convolution."""
    out = []
    for deg, nrm in zip(table.degrees, table.norms):
        c = Fraction(table.order) * nrm / deg
        if c.denominator != 1:
            raise IdentityViolation(f"non-integral convolution scalar {c}")
        out.append(int(c))
    return out


def idempotent_array(table: SuperTable) -> tuple[np.ndarray, int]:
    """Rows zeta_r = xi_r / c_r as an integer array over their own common denominator."""
    scal = convolution_scalars(table)
    L = 1
    for c in scal:
        L = L * c // np.gcd(L, c)
    L = int(L)
    mult = np.asarray([L // c for c in scal], dtype=object).reshape(-1, 1, 1)
    Z = table.A.astype(object) * mult
    if np.abs(Z).max() < 1 << 40:
        Z = Z.astype(np.int64)
    return Z, table.den * L


def _convolution_method(R: int, N: int, C: int, p: int) -> str:
    if R * R * N * N * p * p <= DIRECT_LIMIT:
        return "direct"
    if N * (p - 1) * (R * C * C + R * R * C) <= 5000 * DIRECT_LIMIT:
        return "modular"
    return "random"


def _check_self_convolution(
    result: CheckResult,
    F: np.ndarray,
    den: int,
    kappa: Sequence[int],
    data,
    Q: np.ndarray,
    labels: Sequence[str],
    method: str,
    trials: int,
    rng: np.random.Generator,
) -> None:
    """Check f_r * f_s = delta_rs kappa_r f_r on every element, f_r = F[r, class] / den.

    Scaled by den^2 this reads conv[r, s](z) = delta_rs kappa_r den F[r, s(z)].
    """
    R, _, p = F.shape
    N = data.order
    s_of = data.superclass
    result.method = method
    if method == "direct":
        result.instances = R * R * N
        Fx = F[:, s_of, :]  # (R, N, p)
        for z in range(N):
            Fz = F[:, Q[z], :]
            conv = np.zeros((R, R, p), dtype=F.dtype)
            for t in range(p):
                # (x * y)[t] = sum_k x[k] y[t-k]
                conv[:, :, t] = np.tensordot(Fx, np.roll(Fz[:, :, ::-1], t + 1, axis=-1), axes=([1, 2], [1, 2]))
            red = exact.reduced(conv)
            want = np.zeros_like(red)
            for r in range(R):
                want[r, r] = exact.reduced(F[r, s_of[z]] * (int(kappa[r]) * den))
            bad = np.argwhere((red != want).any(axis=-1))
            if len(bad):
                r, s = (int(x) for x in bad[0])
                result.fail(len(bad), f"({labels[r]}, {labels[s]}) at element {z}")
        return

    l1 = int(exact.l1_norms(F).max())
    bound = N * l1 * l1 + max(abs(int(k)) for k in kappa) * den * l1
    if method == "modular":
        result.instances = R * R * N
    elif method == "random":
        result.instances = R * R * N
        result.note = f"random-combination test, {trials} trials per prime and root of unity"
    else:
        raise ValueError(f"unknown method {method!r}")
    C = F.shape[1]
    for emb in exact.embeddings(p, bound):
        ell = emb.ell
        Fh = emb.embed(F)  # (R, C, p-1)
        kd = np.asarray([(int(k) * den) % ell for k in kappa], dtype=np.float64)
        if method == "modular":
            # conv[r,s](z) = sum_{c1,c2} P_z[c1,c2] F[r,c1] F[s,c2] with
            # P_z[c1,c2] = #{x : s(x) = c1, s(z x^-1) = c2}
            Tk = np.ascontiguousarray(Fh.transpose(2, 0, 1))  # (p-1, R, C)
            TkT = np.ascontiguousarray(Tk.transpose(0, 2, 1))  # (p-1, C, R)
            diag = np.eye(R, dtype=bool)
            for z in range(N):
                P = np.bincount(s_of * C + Q[z], minlength=C * C).reshape(C, C).astype(np.float64)
                X = exact.mod_matmul(exact.mod_matmul(Tk, P, ell), TkT, ell)  # (p-1, R, R)
                want = np.zeros_like(X)
                want[:, diag] = np.mod(kd[None, :] * Tk[:, :, s_of[z]], ell)
                bad = np.argwhere((X != want).any(axis=0))
                if len(bad):
                    r, s = (int(x) for x in bad[0])
                    result.fail(len(bad), f"({labels[r]}, {labels[s]}) at element {z}")
            continue
        for k in range(p - 1):
            T = Fh[:, :, k]
            Tx = T[:, s_of]  # (R, N)
            if method == "modular":
                continue
            else:
                for _ in range(trials):
                    a = rng.integers(0, ell, R).astype(np.float64)
                    b = rng.integers(0, ell, R).astype(np.float64)
                    f = exact.mod_matmul(a[None, :], Tx, ell)[0]  # per element
                    g = exact.mod_matmul(b[None, :], T, ell)[0]  # per class
                    conv = exact.mod_matmul(g[Q], f, ell)  # sum_x f(x) g(z x^-1)
                    w = np.mod(np.mod(a * b, ell) * kd, ell)
                    want = exact.mod_matmul(w[None, :], Tx, ell)[0]
                    bad = np.nonzero(conv != want)[0]
                    if len(bad):
                        result.fail(len(bad), f"random combination at element {int(bad[0])} (prime {ell})")


def check_convolution(
    table: SuperTable,
    data,
    method: str = "auto",
    trials: int = 3,
    seed: int = 0,
) -> list[CheckResult]:
    """xi_r * xi_s = delta_rs c_r xi_r and zeta_r * zeta_s = delta_rs zeta_r on every element.

    ``method`` is "direct" (exact integer sums over all pairs), "modular"
    (all pairs through modular images) or "random" (random linear
    combinations of rows, a bilinear identity test over F_l with
    false-pass probability at most (2/l)^trials per prime and root).
    """
    if data.pairs != table.pairs:
        raise IdentityViolation("table and group data use different pair orders")
    R, N, p = len(table), data.order, table.p
    if method == "auto":
        method = _convolution_method(R, N, R, p)
    labels = [pr.label() for pr in table.pairs]
    Q = _quotient_table(data)
    rng = np.random.default_rng(seed)
    xi = CheckResult("supercharacter convolution")
    _check_self_convolution(xi, table.A, table.den, convolution_scalars(table), data, Q, labels, method, trials, rng)
    ze = CheckResult("idempotent convolution")
    Z, zden = idempotent_array(table)
    _check_self_convolution(ze, Z, zden, [1] * R, data, Q, labels, method, trials, rng)
    return [xi, ze]
