"""Fast evaluation of scheme sequences at arbitrary-precision indices.

Writing n in base p as digits i0 (least significant) .. i_{T-1}, the scheme
value vector satisfies a(n) = M_{i0} * a(n div p), so

    a(n) = M_{i0} M_{i1} ... M_{i_{T-1}} a(0)

computed as T exact integer matrix-vector products from the base vector.
The sparse subsequence at n = p^k - 1 is k applications of the top-digit
matrix; for p = 2 many schemes are further determined by it through the
run-length transform, checked here empirically.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .scheme import Scheme


def _digits(n: int, p: int) -> list[int]:
    """Base-p digits of n, least significant first; empty for n = 0."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def _mat_vec(mat: list[list[int]], vec: list[int]) -> list[int]:
    return [sum(m * v for m, v in zip(row, vec)) for row in mat]


def eval_at(scheme: Scheme, n: int) -> int:
    """Value of the sequence at n, in ceil(log_p n) matrix-vector products."""
    matrices = [scheme.digit_matrix(i) for i in range(scheme.p)]
    vec = list(scheme.base_scalar)
    for d in reversed(_digits(n, scheme.p)):
        vec = _mat_vec(matrices[d], vec)
    return vec[0]


def eval_at_memo(scheme: Scheme, n: int) -> int:
    """Value at n by memoized top-down recursion over the digit multisets.

    An independent route kept deliberately separate from the matrix-product
    path in eval_at so the two can cross-check each other.
    """
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    p = scheme.p
    transitions = scheme.transitions
    base = scheme.base_scalar
    cache: dict[tuple[int, int], int] = {}

    def value(j: int, m: int) -> int:
        if m == 0:
            return base[j]
        key = (j, m)
        got = cache.get(key)
        if got is None:
            rest, digit = divmod(m, p)
            got = sum(value(l - 1, rest) for l in transitions[j][digit])
            cache[key] = got
        return got

    # recursion depth tracks the digit count of n
    depth = len(_digits(n, p))
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * depth + 100))
    try:
        return value(0, n)
    finally:
        sys.setrecursionlimit(old_limit)


def eval_histogram_at(scheme: Scheme, n: int) -> tuple[int, ...]:
    """Residue histogram at n: the digit-matrix product applied per residue column."""
    matrices = [scheme.digit_matrix(i) for i in range(scheme.p)]
    rows = [list(h) for h in scheme.base_histogram]
    for d in reversed(_digits(n, scheme.p)):
        mat = matrices[d]
        rows = [
            [sum(mat[j][l] * rows[l][c] for l in range(len(rows))) for c in range(scheme.p - 1)]
            for j in range(len(rows))
        ]
    return tuple(rows[0])


def terms_prefix(scheme: Scheme, count: int) -> list[int]:
    """First `count` sequence values, sharing digit-prefix work across indices."""
    if count <= 0:
        return []
    matrices = [scheme.digit_matrix(i) for i in range(scheme.p)]
    vecs: list[list[int]] = [list(scheme.base_scalar)]
    for n in range(1, count):
        rest, digit = divmod(n, scheme.p)
        vecs.append(_mat_vec(matrices[digit], vecs[rest]))
    return [v[0] for v in vecs]


def sparse_terms(scheme: Scheme, count: int) -> list[int]:
    """Values at n = p^k - 1 for k = 0..count: powers of the top-digit matrix."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    top = scheme.digit_matrix(scheme.p - 1)
    vec = list(scheme.base_scalar)
    out = [vec[0]]
    for _ in range(count):
        vec = _mat_vec(top, vec)
        out.append(vec[0])
    return out


def rlt_expand(sparse: list[int], n: int) -> int:
    """Run-length product: multiply sparse[L] over maximal runs of L ones in binary n.

    The empty product (n = 0) is 1.  Raises ValueError if a run is longer
    than the supplied sparse values cover.
    """
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    result = 1
    run = 0
    while n:
        if n & 1:
            run += 1
        elif run:
            if run >= len(sparse):
                raise ValueError(f"run of length {run} exceeds the {len(sparse)} supplied values")
            result *= sparse[run]
            run = 0
        n >>= 1
    if run:
        if run >= len(sparse):
            raise ValueError(f"run of length {run} exceeds the {len(sparse)} supplied values")
        result *= sparse[run]
    return result


@dataclass(frozen=True)
class RltReport:
    """Outcome of a run-length-transform sweep; counterexample is (n, sequence, product)."""

    passed: bool
    checked: int
    counterexample: tuple[int, int, int] | None = None


def rlt_check(scheme: Scheme, limit: int) -> RltReport:
    """Test whether the sequence factors through the run-length transform for n < limit.

    Only meaningful in base 2; a failure is a property of the automaton, not
    an error, so it is reported rather than raised.
    """
    if scheme.p != 2:
        raise ValueError(f"run-length transform check requires p=2, got p={scheme.p}")
    if limit <= 0:
        return RltReport(passed=True, checked=0)
    max_run = (limit - 1).bit_length()
    sparse = sparse_terms(scheme, max_run + 1)
    values = terms_prefix(scheme, limit)
    for n, value in enumerate(values):
        product = rlt_expand(sparse, n)
        if product != value:
            return RltReport(passed=False, checked=n + 1, counterexample=(n, value, product))
    return RltReport(passed=True, checked=limit)
