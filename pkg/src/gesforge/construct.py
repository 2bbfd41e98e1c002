"""Product-vector families read off prime-order discrete Fourier matrices.

Vector i of the family assigns party m the local state whose level-s
amplitude is scale[m][s] * w**exponent, with w a primitive root of unity
of prime order and exponent i*s*W_m modulo that order, where W_m is the
mixed-radix weight of party m.  Flattened, the family's coefficient
matrix is a row-and-column selection of the order-p Fourier matrix, whose
minors are all nonzero; that is what makes the span unextendible by
product vectors and its complement a candidate genuinely entangled
subspace.  Exponent tables are the exact source of truth everywhere;
floating amplitudes are derived views.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import GaussianRational, is_prime

Scale = GaussianRational | complex


def smallest_prime_geq(x: int) -> int:
    n = max(2, int(x))
    while not is_prime(n):
        n += 1
    return n


def mixed_radix_weights(dims) -> tuple[int, ...]:
    """W_m = product of the local dimensions of the parties after m."""
    weights = []
    acc = 1
    for d in reversed(dims):
        weights.append(acc)
        acc *= d
    return tuple(reversed(weights))


def _min_vectors(dims) -> int:
    """Smallest family size supporting every bipartition's spanning demand.

    A cut needs at least D_S + D_Sbar - 1 members; take the worst cut.
    For n equal dimensions d this is d**(n-1) + d - 1.
    """
    n = len(dims)
    worst = 0
    for mask in range(1, 2 ** n - 1):
        left = 1
        right = 1
        for m in range(n):
            if mask >> m & 1:
                left *= dims[m]
            else:
                right *= dims[m]
        worst = max(worst, left + right - 1)
    return worst


@dataclass(frozen=True)
class ConstructionParams:
    """Family shape: local dimensions, member count, root order, scales.

    scales, when present, holds one exact or floating complex factor per
    party and level; all-exact scales keep the exact verification routes
    available.
    """

    dims: tuple[int, ...]
    num_vectors: int
    root_order: int
    scales: tuple[tuple[Scale, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.scales is not None:
            object.__setattr__(self, "scales", tuple(tuple(row) for row in self.scales))

    @property
    def num_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    @property
    def complement_dim(self) -> int:
        return self.total_dim - self.num_vectors

    @property
    def min_vectors(self) -> int:
        return _min_vectors(self.dims)

    @property
    def max_vectors(self) -> int:
        return self.total_dim - 1

    @property
    def max_complement_dim(self) -> int:
        return self.total_dim - self.min_vectors

    @property
    def is_max_complement(self) -> bool:
        return self.num_vectors == self.min_vectors

    @property
    def scales_exact(self) -> bool:
        if self.scales is None:
            return True
        return all(isinstance(s, GaussianRational) for row in self.scales for s in row)


def make_params(
    dims=None,
    num_vectors=None,
    root_order=None,
    scales=None,
    n: int | None = None,
    d: int | None = None,
) -> ConstructionParams:
    """Build params from either explicit dims or a (parties, dimension) pair."""
    if dims is None:
        if n is None or d is None:
            raise ValueError("give dims, or both the party count and the local dimension")
        dims = (d,) * n
    else:
        dims = tuple(int(x) for x in dims)
        if n is not None and n != len(dims):
            raise ValueError("party count disagrees with dims")
        if d is not None and any(x != d for x in dims):
            raise ValueError("local dimension disagrees with dims")
    if num_vectors is None:
        raise ValueError("the number of vectors is required")
    if root_order is None:
        root_order = smallest_prime_geq(math.prod(dims))
    return ConstructionParams(
        dims=dims, num_vectors=int(num_vectors), root_order=int(root_order), scales=scales
    )


def validate_params(params: ConstructionParams) -> list[str]:
    """All violated constraints, as human-readable strings; empty means valid."""
    problems = []
    if params.num_parties < 2:
        problems.append("at least two parties are required")
    if any(d < 2 for d in params.dims):
        problems.append("every local dimension must be at least 2")
    if not is_prime(params.root_order):
        problems.append(f"root order {params.root_order} is not prime")
    if params.root_order < params.total_dim:
        problems.append(
            f"root order {params.root_order} is below the total dimension {params.total_dim}"
        )
    if params.num_parties >= 2 and all(d >= 2 for d in params.dims):
        lo = params.min_vectors
        hi = params.max_vectors
        if params.num_vectors < lo:
            problems.append(
                f"{params.num_vectors} vectors cannot span every cut; at least {lo} are needed"
            )
        if params.num_vectors > hi:
            problems.append(
                f"{params.num_vectors} vectors leave no room for a complement; at most {hi} fit"
            )
    if params.scales is not None:
        if len(params.scales) != params.num_parties:
            problems.append("scales must give one row per party")
        else:
            for m, row in enumerate(params.scales):
                if len(row) != params.dims[m]:
                    problems.append(f"scales for party {m} must have {params.dims[m]} entries")
                    continue
                for s, value in enumerate(row):
                    if isinstance(value, GaussianRational):
                        if value.is_zero:
                            problems.append(f"scale for party {m} level {s} is zero")
                    elif value == 0:
                        problems.append(f"scale for party {m} level {s} is zero")
    return problems


def exponent_table(params: ConstructionParams) -> list[list[list[int]]]:
    """table[i][m][s] = i * s * W_m modulo the root order."""
    weights = mixed_radix_weights(params.dims)
    p = params.root_order
    return [
        [[i * s * weights[m] % p for s in range(params.dims[m])] for m in range(params.num_parties)]
        for i in range(params.num_vectors)
    ]


@dataclass(frozen=True)
class ProductVector:
    """One family member: per-party exponents plus optional scales."""

    root_order: int
    exponents: tuple[tuple[int, ...], ...]
    scales: tuple[tuple[Scale, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(tuple(int(e) for e in row) for row in self.exponents))

    @property
    def num_parties(self) -> int:
        return len(self.exponents)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.exponents)

    def local_amplitudes(self, m: int) -> np.ndarray:
        p = self.root_order
        amps = np.array(
            [cmath.exp(2j * cmath.pi * e / p) for e in self.exponents[m]], dtype=complex
        )
        if self.scales is not None:
            factors = [
                s.to_complex() if isinstance(s, GaussianRational) else complex(s)
                for s in self.scales[m]
            ]
            amps = amps * np.array(factors, dtype=complex)
        return amps

    def amplitudes(self) -> np.ndarray:
        out = np.array([1.0 + 0j])
        for m in range(self.num_parties):
            out = np.kron(out, self.local_amplitudes(m))
        return out


def validate_exponent_table(params: ConstructionParams, table) -> list[str]:
    problems = []
    if len(table) != params.num_vectors:
        return [f"table has {len(table)} rows, expected {params.num_vectors}"]
    for i, row in enumerate(table):
        if len(row) != params.num_parties:
            problems.append(f"vector {i} covers {len(row)} parties, expected {params.num_parties}")
            continue
        for m, local in enumerate(row):
            if len(local) != params.dims[m]:
                problems.append(
                    f"vector {i} party {m} has {len(local)} levels, expected {params.dims[m]}"
                )
                continue
            for e in local:
                if not isinstance(e, int) or not 0 <= e < params.root_order:
                    problems.append(
                        f"vector {i} party {m} holds exponent {e!r} outside [0, {params.root_order})"
                    )
                    break
    return problems


def build_nupb(params: ConstructionParams, table=None) -> list[ProductVector]:
    """The product family as vectors; raises on invalid params or table."""
    problems = validate_params(params)
    if problems:
        raise ValueError("; ".join(problems))
    if table is None:
        table = exponent_table(params)
    else:
        problems = validate_exponent_table(params, table)
        if problems:
            raise ValueError("; ".join(problems))
    return [
        ProductVector(
            root_order=params.root_order,
            exponents=tuple(tuple(row) for row in table[i]),
            scales=params.scales,
        )
        for i in range(params.num_vectors)
    ]


def is_standard_table(params: ConstructionParams, table) -> bool:
    reference = exponent_table(params)
    return [[list(loc) for loc in row] for row in table] == reference


# ---------------------------------------------------------------------------
# JSON document form.  Exponents and rational parts are serialized as
# strings; floats appear only as [re, im] pairs and are advisory.

SCHEMA_VERSION = 1


def scale_to_json(value: Scale):
    if isinstance(value, GaussianRational):
        return {"re": str(value.re), "im": str(value.im)}
    value = complex(value)
    return [value.real, value.imag]


def scale_from_json(obj) -> Scale:
    if isinstance(obj, dict):
        return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))
    if isinstance(obj, str):
        return GaussianRational(Fraction(obj))
    re, im = obj
    return complex(re, im)


def params_to_json(params: ConstructionParams) -> dict:
    doc = {
        "dims": list(params.dims),
        "num_vectors": params.num_vectors,
        "root_order": str(params.root_order),
    }
    if params.scales is None:
        doc["scales"] = None
    else:
        doc["scales"] = [[scale_to_json(s) for s in row] for row in params.scales]
    return doc


def params_from_json(doc) -> ConstructionParams:
    scales = doc.get("scales")
    if scales is not None:
        scales = tuple(tuple(scale_from_json(s) for s in row) for row in scales)
    return ConstructionParams(
        dims=tuple(int(d) for d in doc["dims"]),
        num_vectors=int(doc["num_vectors"]),
        root_order=int(doc["root_order"]),
        scales=scales,
    )


def vectors_to_doc(params: ConstructionParams, table=None, provenance: str | None = None) -> dict:
    if table is None:
        table = exponent_table(params)
    if provenance is None:
        provenance = "standard-recipe" if is_standard_table(params, table) else "user-supplied"
    vectors = build_nupb(params, table)
    return {
        "schema": "gesforge/vectors",
        "schema_version": SCHEMA_VERSION,
        "params": params_to_json(params),
        "provenance": provenance,
        "exponent_table": [[[str(e) for e in loc] for loc in row] for row in table],
        "amplitudes": [
            [[[amp.real, amp.imag] for amp in v.local_amplitudes(m)] for m in range(v.num_parties)]
            for v in vectors
        ],
    }


def vectors_from_doc(doc) -> tuple[ConstructionParams, list[list[list[int]]], str]:
    if doc.get("schema") != "gesforge/vectors":
        raise ValueError("not a vectors document")
    params = params_from_json(doc["params"])
    table = [[[int(e) for e in loc] for loc in row] for row in doc["exponent_table"]]
    # provenance is re-derived, not trusted: an edited table is user-supplied
    # no matter what the file claims
    provenance = "standard-recipe" if is_standard_table(params, table) else "user-supplied"
    return params, table, provenance
