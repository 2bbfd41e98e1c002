"""Batched exact nonzero tests for minors of root-power matrices.

Every matrix handled here has entries of the form scale_j * w**e[i, j]
where w is a root of unity of a fixed order and scale_j is an exact
per-column constant.  Two exact routes are combined:

* modular certificates: entries are pushed through a ring homomorphism
  into a prime field F_q, q = 1 (mod 4 * order), chosen deterministically;
  a determinant that is nonzero mod q is nonzero, full stop.  The converse
  does not hold, so a zero image only escalates the minor.
* integer reduction: the determinant is expanded into an integer count
  vector over the powers of w and reduced modulo the cyclotomic
  polynomial, which decides zero exactly.

Nonzero verdicts may come from either route; zero verdicts only ever come
from the exact reduction route (or from field elimination when column
scales are present).  The homomorphism is sound because the subring
Z[i, w] is isomorphic to Z[i][x] modulo the cyclotomic polynomial, which
stays irreducible over Q(i) for odd prime orders, and the chosen q admits
images for both i and w.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import (
    CycMatrix,
    GaussianRational,
    det,
    is_prime,
    power_counts_are_zero,
    root_power,
)

# Large moduli keep spurious zero images rare (about size/q per minor), so
# escalations to the slower exact routes stay exceptional.
_MODULUS_FLOOR = 1_000_000

# Subset dynamic programming is exponential in the minor size; above this
# the generic field elimination takes over.
_DP_SIZE_LIMIT = 14


@dataclass(frozen=True)
class ModularContext:
    """A prime field together with images of w and i."""

    order: int
    modulus: int
    root: int
    quartic: int

    def power_table(self) -> np.ndarray:
        return _power_table(self.order, self.modulus, self.root)


@lru_cache(maxsize=None)
def _power_table(order: int, modulus: int, root: int) -> np.ndarray:
    table = np.empty(order, dtype=np.int64)
    value = 1
    for t in range(order):
        table[t] = value
        value = value * root % modulus
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def modular_context(order: int, index: int = 0) -> ModularContext:
    """Deterministic choice of the (index+1)-th usable prime field.

    q runs over primes with q = 1 (mod 4 * order) starting at a fixed
    floor; the root image is h**((q-1)/order) for the smallest h giving a
    nontrivial image (exact multiplicative order for prime `order`), and
    likewise a fourth root of unity for the image of i.
    """
    if not is_prime(order):
        raise ValueError("modular certificates require a prime order")
    step = 4 * order
    q = _MODULUS_FLOOR - (_MODULUS_FLOOR % step) + 1
    while q < _MODULUS_FLOOR:
        q += step
    found = 0
    while True:
        if is_prime(q):
            if found == index:
                break
            found += 1
        q += step
    root = 0
    for h in range(2, q):
        g = pow(h, (q - 1) // order, q)
        if g != 1:
            root = g
            break
    quartic = 0
    for h in range(2, q):
        g = pow(h, (q - 1) // 4, q)
        if g * g % q == q - 1:
            quartic = g
            break
    return ModularContext(order=order, modulus=q, root=root, quartic=quartic)


def scales_mod(scales, ctx: ModularContext):
    """Images of exact column scales in F_q, or None on a denominator hit."""
    q = ctx.modulus
    out = np.empty(len(scales), dtype=np.int64)
    for j, s in enumerate(scales):
        s = GaussianRational.coerce(s)
        parts = 0
        for frac, unit in ((s.re, 1), (s.im, ctx.quartic)):
            den = frac.denominator % q
            if den == 0:
                return None
            num = frac.numerator % q
            parts += num * pow(den, q - 2, q) % q * unit
        out[j] = parts % q
    return out


def certify_nonzero_mod(exponents: np.ndarray, ctx: ModularContext, column_scales=None) -> np.ndarray:
    """True where the minor is certified nonzero via F_q.

    exponents: (N, k, k) integers modulo the order.  Division-free
    elimination: rows below the pivot are replaced by piv*row - c*pivrow,
    which scales the determinant by nonzero factors mod q.  A zero pivot is
    not swapped away; it simply withholds the certificate for that minor.
    """
    q = ctx.modulus
    a = ctx.power_table()[exponents]
    if column_scales is not None:
        a = a * column_scales[None, None, :] % q
    n, k, _ = a.shape
    alive = np.ones(n, dtype=bool)
    for r in range(k - 1):
        piv = a[:, r, r]
        alive &= piv != 0
        coeff = a[:, r + 1 :, r][:, :, None]
        block = a[:, r + 1 :, r:]
        np.remainder(piv[:, None, None] * block - coeff * a[:, r : r + 1, r:], q, out=block)
    alive &= a[:, k - 1, k - 1] != 0
    return alive


def det_power_counts(exponents: np.ndarray, order: int) -> np.ndarray:
    """Exact determinants of root-power matrices as integer count vectors.

    exponents: (N, k, k) integers modulo `order`.  Returns (N, order) int64
    counts c with det = sum_t c[t] * w**t, built by Laplace expansion with
    dynamic programming over column subsets; multiplying by w**e is a
    cyclic index shift, so only integer additions occur.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    n, k, _ = exponents.shape
    base = np.zeros((n, order), dtype=np.int64)
    base[:, 0] = 1
    if k == 0:
        return base
    if k > _DP_SIZE_LIMIT:
        raise ValueError(f"subset expansion limited to size {_DP_SIZE_LIMIT}")
    wheel = np.arange(order)[None, :]
    prev = {(): base}
    for r in range(1, k + 1):
        cur = {}
        for subset in itertools.combinations(range(k), r):
            acc = np.zeros((n, order), dtype=np.int64)
            for pos, j in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1 :]
                idx = (wheel - exponents[:, r - 1, j][:, None]) % order
                shifted = np.take_along_axis(prev[rest], idx, axis=1)
                if (r - 1 + pos) % 2:
                    acc -= shifted
                else:
                    acc += shifted
            cur[subset] = acc
        prev = cur
    return prev[tuple(range(k))]


def _det_scaled_exact(expmat: np.ndarray, order: int, column_scales) -> bool:
    """Nonzero test via field elimination with the scales multiplied in."""
    k = expmat.shape[0]
    rows = []
    for i in range(k):
        rows.append([root_power(int(expmat[i, j]), order) * GaussianRational.coerce(column_scales[j]) for j in range(k)])
    return not det(CycMatrix.from_rows(rows)).is_zero


def decide_nonzero(
    exponents: np.ndarray,
    order: int,
    column_scales=None,
    stats: dict | None = None,
) -> np.ndarray:
    """Exact nonzero verdicts for a batch of minors.

    exponents: (N, k, k) integers modulo `order`; column_scales: optional
    exact per-column constants shared by the whole batch.  Chains two
    modular certificates and settles survivors with the exact reduction
    route (or field elimination when scales are present).  Every returned
    verdict is exact.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    n = exponents.shape[0]
    verdict = np.zeros(n, dtype=bool)
    if n == 0:
        return verdict
    todo = np.arange(n)
    if is_prime(order):
        for index in (0, 1):
            ctx = modular_context(order, index)
            smod = None
            if column_scales is not None:
                smod = scales_mod(column_scales, ctx)
                if smod is None:
                    continue
            ok = certify_nonzero_mod(exponents[todo], ctx, smod)
            if stats is not None:
                stats["modular"] = stats.get("modular", 0) + int(ok.sum())
            verdict[todo[ok]] = True
            todo = todo[~ok]
            if todo.size == 0:
                return verdict
    elif column_scales is not None:
        raise ValueError("composite orders with column scales are not supported")
    if column_scales is None:
        k = exponents.shape[1]
        if k <= _DP_SIZE_LIMIT:
            counts = det_power_counts(exponents[todo], order)
            nonzero = ~power_counts_are_zero(counts, order)
            if stats is not None:
                stats["reduction"] = stats.get("reduction", 0) + int(todo.size)
            verdict[todo] = nonzero
            return verdict
        column_scales = [GaussianRational(1)] * exponents.shape[1]
    settled = np.fromiter(
        (_det_scaled_exact(exponents[t], order, column_scales) for t in todo),
        dtype=bool,
        count=todo.size,
    )
    if stats is not None:
        stats["elimination"] = stats.get("elimination", 0) + int(todo.size)
    verdict[todo] = settled
    return verdict


def iter_index_combinations(n: int, size: int, chunk: int):
    """Yield lexicographic size-subsets of range(n) as (N, size) int64 blocks."""
    it = itertools.combinations(range(n), size)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)
