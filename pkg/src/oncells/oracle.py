"""Brute-force ground truth and whole-scheme verification.

Values are recomputed from the definition: multiply out Q * P^n one factor
of P at a time, reducing coefficients mod p after every step, then sum or
tally the coefficients.  The multiplication here is its own plain dict
convolution, deliberately separate from the fast evaluation path, so the
two sides of every comparison stay independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from .genfun import RationalGF, gf_series
from .poly import ModPoly
from .scheme import LimitError, Scheme
from .sequence import eval_at, eval_histogram_at, rlt_check, sparse_terms, terms_prefix

TERM_LIMIT = 10**7


def _mul_mod(a: dict, b: dict, p: int, nvars: int) -> dict:
    out: dict = {}
    get = out.get
    if nvars == 1:
        for (b0,), cb in b.items():
            for (a0,), ca in a.items():
                e = (a0 + b0,)
                out[e] = get(e, 0) + ca * cb
    elif nvars == 2:
        for (b0, b1), cb in b.items():
            for (a0, a1), ca in a.items():
                e = (a0 + b0, a1 + b1)
                out[e] = get(e, 0) + ca * cb
    else:
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in ((e, c % p) for e, c in out.items()) if c}


def _product_chain(
    poly: ModPoly, seed: ModPoly, count: int, term_limit: int = TERM_LIMIT
) -> Iterator[dict]:
    """Yield the term dict of seed * poly^n for n = 0 .. count-1."""
    if poly.p != seed.p or poly.vars != seed.vars:
        raise ValueError("seed and polynomial must share modulus and variables")
    p = poly.p
    nvars = len(poly.vars)
    base = dict(poly.terms)
    current = {e: c % p for e, c in seed.terms.items() if c % p}
    for _ in range(count):
        if len(current) > term_limit:
            raise LimitError(f"expansion exceeded {term_limit} terms")
        yield current
        current = _mul_mod(current, base, p, nvars)


def _histogram(terms: dict, p: int) -> tuple[int, ...]:
    counts = [0] * (p - 1)
    for c in terms.values():
        counts[c - 1] += 1
    return tuple(counts)


def brute_scalar(poly: ModPoly, seed: ModPoly, n: int, term_limit: int = TERM_LIMIT) -> int:
    """Coefficient sum of seed * poly^n mod p by direct expansion."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    for terms in _product_chain(poly, seed, n + 1, term_limit):
        pass
    return sum(terms.values())


def brute_histogram(
    poly: ModPoly, seed: ModPoly, n: int, term_limit: int = TERM_LIMIT
) -> tuple[int, ...]:
    """Residue histogram of seed * poly^n mod p by direct expansion."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    for terms in _product_chain(poly, seed, n + 1, term_limit):
        pass
    return _histogram(terms, poly.p)


def brute_values(
    poly: ModPoly, seed: ModPoly, count: int, term_limit: int = TERM_LIMIT
) -> list[int]:
    """Coefficient sums for n = 0 .. count-1, sharing one expansion chain."""
    return [sum(t.values()) for t in _product_chain(poly, seed, count, term_limit)]


def brute_histograms(
    poly: ModPoly, seed: ModPoly, count: int, term_limit: int = TERM_LIMIT
) -> list[tuple[int, ...]]:
    """Residue histograms for n = 0 .. count-1, sharing one expansion chain."""
    p = poly.p
    return [_histogram(t, p) for t in _product_chain(poly, seed, count, term_limit)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    informational: bool = False
    counterexample: dict | None = None


@dataclass(frozen=True)
class VerificationReport:
    """Named check outcomes for one scheme; failing checks carry a counterexample."""

    scheme: str
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed or c.informational for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "informational": c.informational,
                    "counterexample": c.counterexample,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_text(self) -> str:
        lines = [f"scheme: {self.scheme}"]
        for c in self.checks:
            if c.passed:
                status = "pass"
            elif c.informational:
                status = "info-fail"
            else:
                status = "FAIL"
            line = f"  {status:9s} {c.name}"
            if c.counterexample:
                detail = ", ".join(f"{k}={v}" for k, v in c.counterexample.items())
                line += f"  [{detail}]"
            lines.append(line)
        lines.append("result: " + ("OK" if self.ok else "FAILED"))
        return "\n".join(lines)


def verify_scheme(
    scheme: Scheme,
    n_max: int,
    gf: RationalGF | None = None,
    rlt_limit: int | None = None,
    sparse_count: int = 12,
    term_limit: int = TERM_LIMIT,
) -> VerificationReport:
    """Replay a scheme against the brute-force definition and report per-check results.

    Checks, in order: sequence and histogram values for state 1 on n < n_max;
    the per-state digit recurrence for n < n_max // p; the digit-0 fixed
    point of the base vector; sparse terms against direct evaluation; series
    coefficients of an attached generating function; and (p = 2 only,
    informational) the run-length-transform factorization.
    """
    p = scheme.p
    checks: list[CheckResult] = []

    tables = [
        brute_values(scheme.poly, state, n_max, term_limit) for state in scheme.states
    ]

    fast = terms_prefix(scheme, n_max)
    bad = next((n for n in range(n_max) if fast[n] != tables[0][n]), None)
    checks.append(
        CheckResult(
            "scalar_vs_brute",
            bad is None,
            counterexample=None
            if bad is None
            else {"n": bad, "expected": tables[0][bad], "got": fast[bad]},
        )
    )

    hist_table = brute_histograms(scheme.poly, scheme.states[0], n_max, term_limit)
    bad_h = next(
        (n for n in range(n_max) if eval_histogram_at(scheme, n) != hist_table[n]), None
    )
    checks.append(
        CheckResult(
            "histogram_vs_brute",
            bad_h is None,
            counterexample=None
            if bad_h is None
            else {
                "n": bad_h,
                "expected": list(hist_table[bad_h]),
                "got": list(eval_histogram_at(scheme, bad_h)),
            },
        )
    )

    recurrence_bad = None
    for n in range(n_max // p):
        for j in range(scheme.state_count):
            for i in range(p):
                expected = tables[j][p * n + i]
                got = sum(tables[l - 1][n] for l in scheme.transitions[j][i])
                if got != expected:
                    recurrence_bad = {
                        "state": j + 1,
                        "digit": i,
                        "n": n,
                        "expected": expected,
                        "got": got,
                    }
                    break
            if recurrence_bad:
                break
        if recurrence_bad:
            break
    checks.append(
        CheckResult("recurrence_identity", recurrence_bad is None, counterexample=recurrence_bad)
    )

    zero_mat = scheme.digit_matrix(0)
    base = list(scheme.base_scalar)
    fixed = [sum(m * v for m, v in zip(row, base)) for row in zero_mat]
    checks.append(
        CheckResult(
            "base_fixed_point",
            fixed == base,
            counterexample=None if fixed == base else {"expected": base, "got": fixed},
        )
    )

    sparse = sparse_terms(scheme, sparse_count)
    bad_k = next(
        (k for k in range(sparse_count + 1) if sparse[k] != eval_at(scheme, p**k - 1)), None
    )
    checks.append(
        CheckResult(
            "sparse_agreement",
            bad_k is None,
            counterexample=None
            if bad_k is None
            else {"k": bad_k, "expected": eval_at(scheme, p**bad_k - 1), "got": sparse[bad_k]},
        )
    )

    if gf is not None:
        series = gf_series(gf, sparse_count + 1)
        bad_k = next((k for k in range(sparse_count + 1) if series[k] != sparse[k]), None)
        checks.append(
            CheckResult(
                "series_agreement",
                bad_k is None,
                counterexample=None
                if bad_k is None
                else {"k": bad_k, "expected": sparse[bad_k], "got": series[bad_k]},
            )
        )

    if p == 2:
        report = rlt_check(scheme, rlt_limit if rlt_limit is not None else n_max)
        counter = None
        if report.counterexample:
            n, value, product = report.counterexample
            counter = {"n": n, "expected": value, "got": product}
        checks.append(
            CheckResult(
                "run_length_product",
                report.passed,
                informational=True,
                counterexample=counter,
            )
        )

    return VerificationReport(scheme=scheme.label(), checks=tuple(checks))
