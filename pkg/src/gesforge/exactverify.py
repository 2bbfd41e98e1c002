"""Exact certification: full rank, per-cut spanning, and Fourier minor scans.

The spanning property of a one-sided coefficient matrix is decided by
exhaustive enumeration: every subset of rows of the side's dimension must
have full rank.  No structural theorem is assumed on the way in; the
matrices are checked as given, so user-supplied exponent tables and scaled
columns get the same treatment as the standard recipe.  All verdicts are
exact; floating point never participates (floating scales route the whole
exact stage into a recorded skip).
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import cyclo, minors
from .construct import ConstructionParams, exponent_table, validate_exponent_table, validate_params
from .cyclo import CycMatrix, is_prime, power_counts_are_zero, power_counts_value
from .partition import Bipartition, FlatMatrix, coefficient_matrix, enumerate_bipartitions, factor_matrices

_WITNESS_CAP = 20


@dataclass
class SpanningCheck:
    """Outcome of the all-subsets rank check for one side of a cut."""

    parties: tuple[int, ...]
    dimension: int
    subsets_total: int
    ok: bool
    witness: tuple[int, ...] | None = None
    failures: int = 0
    methods: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "parties": list(self.parties),
            "dimension": self.dimension,
            "subsets_total": self.subsets_total,
            "ok": self.ok,
            "witness": list(self.witness) if self.witness is not None else None,
            "failures": self.failures,
            "methods": dict(self.methods),
        }


@dataclass
class BipartitionCheck:
    members: tuple[int, ...]
    complement: tuple[int, ...]
    required_vectors: int
    count_ok: bool
    left: SpanningCheck | None
    right: SpanningCheck | None

    @property
    def ok(self) -> bool:
        return (
            self.count_ok
            and self.left is not None
            and self.right is not None
            and self.left.ok
            and self.right.ok
        )

    def to_doc(self) -> dict:
        return {
            "members": list(self.members),
            "complement": list(self.complement),
            "required_vectors": self.required_vectors,
            "count_ok": self.count_ok,
            "ok": self.ok,
            "left": self.left.to_doc() if self.left else None,
            "right": self.right.to_doc() if self.right else None,
        }


@dataclass
class ChebotarevScan:
    """Census of exactly-zero minors of the order-p Fourier matrix."""

    order: int
    max_size: int
    requested_size: int
    prime: bool
    checked: dict
    witnesses: list
    zero_count: int = 0
    elapsed: float = 0.0

    @property
    def clean(self) -> bool:
        return self.zero_count == 0

    @property
    def clamped(self) -> bool:
        return self.max_size != self.requested_size

    def to_doc(self) -> dict:
        return {
            "order": self.order,
            "max_size": self.max_size,
            "requested_size": self.requested_size,
            "prime": self.prime,
            "clean": self.clean,
            "checked": {str(k): v for k, v in self.checked.items()},
            "zero_count": self.zero_count,
            "witnesses": [
                {"size": len(rows), "rows": list(rows), "cols": list(cols)}
                for rows, cols in self.witnesses
            ],
            "elapsed_seconds": self.elapsed,
        }


@dataclass
class ExactReport:
    dims: tuple[int, ...]
    num_vectors: int
    root_order: int
    scales_exact: bool
    skipped: bool = False
    skip_reason: str | None = None
    matrix_rank: int | None = None
    full_rank: bool | None = None
    rank_method: str | None = None
    bipartitions: list = field(default_factory=list)
    chebotarev_scans: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool | None:
        if self.skipped:
            return None
        return bool(self.full_rank) and all(b.ok for b in self.bipartitions)

    def to_doc(self) -> dict:
        return {
            "dims": list(self.dims),
            "num_vectors": self.num_vectors,
            "root_order": str(self.root_order),
            "scales_exact": self.scales_exact,
            "skipped": self.skipped,
            "skip_reason": self.skip_reason,
            "matrix_rank": self.matrix_rank,
            "full_rank": self.full_rank,
            "rank_method": self.rank_method,
            "passed": self.passed,
            "bipartitions": [b.to_doc() for b in self.bipartitions],
            "chebotarev_scans": [s.to_doc() for s in self.chebotarev_scans],
            "elapsed_seconds": self.elapsed,
        }


def _modular_rank(values: np.ndarray, q: int) -> int:
    """Row rank of an integer matrix over F_q, division-free."""
    a = (np.array(values, dtype=np.int64) % q).tolist()
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f:
                a[i] = [(pr[c] * x - f * y) % q for x, y in zip(a[i], pr)]
        r += 1
        if r == rows:
            break
    return r


def rank_full(flat: FlatMatrix) -> tuple[bool, int, str]:
    """(has full row rank, exact rank, deciding method) for a FlatMatrix.

    A modular image of full rank certifies the exact rank; otherwise the
    field elimination settles it.
    """
    if not flat.scales_exact:
        raise ValueError("exact rank needs exact column scales")
    k = flat.num_vectors
    if is_prime(flat.root_order):
        for index in (0, 1):
            ctx = minors.modular_context(flat.root_order, index)
            values = ctx.power_table()[flat.exponents]
            if flat.column_scales is not None:
                smod = minors.scales_mod(flat.column_scales, ctx)
                if smod is None:
                    continue
                values = values * smod[None, :] % ctx.modulus
            r = _modular_rank(values, ctx.modulus)
            if r == k:
                return True, k, "modular"
    r = cyclo.rank(flat.to_cyc_matrix())
    return r == k, r, "elimination"


def _spanning_flat(flat: FlatMatrix, chunk: int) -> SpanningCheck:
    k = flat.num_vectors
    dim = flat.dimension
    if k < dim:
        raise ValueError(
            f"{k} vectors cannot satisfy the spanning hypothesis on a dimension-{dim} side"
        )
    if not flat.scales_exact:
        raise ValueError("exact spanning needs exact column scales")
    total = math.comb(k, dim)
    methods: dict = {}
    witness = None
    failures = 0
    for rows in minors.iter_index_combinations(k, dim, chunk):
        exps = flat.exponents[rows]
        verdicts = minors.decide_nonzero(
            exps, flat.root_order, flat.column_scales, stats=methods
        )
        if not verdicts.all():
            bad = np.nonzero(~verdicts)[0]
            failures += int(bad.size)
            if witness is None:
                witness = tuple(int(x) for x in rows[bad[0]])
    return SpanningCheck(
        parties=flat.parties,
        dimension=dim,
        subsets_total=total,
        ok=failures == 0,
        witness=witness,
        failures=failures,
        methods=methods,
    )


def _spanning_cyc(matrix: CycMatrix) -> SpanningCheck:
    k, dim = matrix.rows, matrix.cols
    if k < dim:
        raise ValueError(
            f"{k} vectors cannot satisfy the spanning hypothesis on a dimension-{dim} side"
        )
    witness = None
    failures = 0
    checked = 0
    for rows in itertools.combinations(range(k), dim):
        checked += 1
        if cyclo.rank(matrix.submatrix(rows, range(dim))) < dim:
            failures += 1
            if witness is None:
                witness = rows
    return SpanningCheck(
        parties=(),
        dimension=dim,
        subsets_total=checked,
        ok=failures == 0,
        witness=witness,
        failures=failures,
        methods={"elimination": checked},
    )


def spanning_property(matrix, *, chunk: int = 100_000) -> SpanningCheck:
    """Exhaustive check that every dimension-sized row subset has full rank.

    Accepts a FlatMatrix (fast exact engines) or a CycMatrix (reference
    field elimination).  Raises when the row count is below the side
    dimension, where the spanning hypothesis cannot hold.
    """
    if isinstance(matrix, FlatMatrix):
        return _spanning_flat(matrix, chunk)
    if isinstance(matrix, CycMatrix):
        return _spanning_cyc(matrix)
    raise TypeError("expected a FlatMatrix or a CycMatrix")


def verify_all_bipartitions(
    params: ConstructionParams, table=None, *, chunk: int = 100_000
) -> ExactReport:
    """Full-rank plus per-cut spanning over every canonical bipartition."""
    problems = validate_params(params)
    if problems:
        raise ValueError("; ".join(problems))
    if table is not None:
        problems = validate_exponent_table(params, table)
        if problems:
            raise ValueError("; ".join(problems))
    start = time.perf_counter()
    report = ExactReport(
        dims=params.dims,
        num_vectors=params.num_vectors,
        root_order=params.root_order,
        scales_exact=params.scales_exact,
    )
    if not params.scales_exact:
        report.skipped = True
        report.skip_reason = (
            "column scales are floating point; exact verification needs exact scales"
        )
        report.elapsed = time.perf_counter() - start
        return report
    flat = coefficient_matrix(params, table)
    ok, r, method = rank_full(flat)
    report.matrix_rank = r
    report.full_rank = ok
    report.rank_method = method
    for cut in enumerate_bipartitions(params.num_parties):
        left_flat, right_flat = factor_matrices(params, cut, table)
        required = left_flat.dimension + right_flat.dimension - 1
        count_ok = params.num_vectors >= required
        left = right = None
        if count_ok:
            left = spanning_property(left_flat, chunk=chunk)
            right = spanning_property(right_flat, chunk=chunk)
        report.bipartitions.append(
            BipartitionCheck(
                members=cut.members,
                complement=cut.complement,
                required_vectors=required,
                count_ok=count_ok,
                left=left,
                right=right,
            )
        )
    report.elapsed = time.perf_counter() - start
    return report


def chebotarev_scan(order: int, max_size: int, *, chunk: int = 250_000) -> ChebotarevScan:
    """Enumerate all square minors of the order-p Fourier matrix up to a size.

    For prime order the expected witness list is empty (total
    nonsingularity); composite orders surface exactly-zero minors.  Every
    zero claimed for a composite order is double-checked at high precision.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    requested = max_size
    max_size = min(max_size, order)
    prime = is_prime(order)
    start = time.perf_counter()
    checked = {}
    witnesses = []
    zero_total = 0
    for size in range(1, max_size + 1):
        combos = np.array(list(itertools.combinations(range(order), size)), dtype=np.int64)
        n_combo = combos.shape[0]
        checked[size] = n_combo * n_combo
        block_rows = max(1, chunk // max(1, n_combo))
        for lo in range(0, n_combo, block_rows):
            rows = combos[lo : lo + block_rows]
            exps = rows[:, None, :, None] * combos[None, :, None, :] % order
            exps = exps.reshape(-1, size, size)
            if prime:
                verdicts = minors.decide_nonzero(exps, order)
                zero_idx = np.nonzero(~verdicts)[0]
            else:
                counts = minors.det_power_counts(exps, order)
                zero_idx = np.nonzero(power_counts_are_zero(counts, order))[0]
            for t in zero_idx:
                b, c = divmod(int(t), n_combo)
                rowset = tuple(int(x) for x in rows[b])
                colset = tuple(int(x) for x in combos[c])
                if not prime:
                    value = power_counts_value(counts[t], order)
                    if abs(value) > 1e-30:
                        raise RuntimeError(
                            f"reduction claims zero but high-precision value is {value}"
                        )
                if len(witnesses) < _WITNESS_CAP:
                    witnesses.append((rowset, colset))
                zero_total += 1
    return ChebotarevScan(
        order=order,
        max_size=max_size,
        requested_size=requested,
        prime=prime,
        checked=checked,
        witnesses=witnesses,
        zero_count=zero_total,
        elapsed=time.perf_counter() - start,
    )
