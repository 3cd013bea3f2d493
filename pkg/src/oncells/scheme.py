"""Synthesis of base-p recurrence schemes by worklist closure.

A scheme is the finite automaton behind the sequence n -> coeff_sum(Q * P^n):
canonical state polynomials Q_1..Q_m (Q_1 the canonicalized seed), and for
each state j and digit i in {0..p-1} a sorted multiset S_i(j) of state
indices with

    value_j(p*n + i) = sum over l in S_i(j) of value_l(n).

States are found by splitting Q_j * P^i into exponent-residue classes mod p
(dividing exponents by p), canonicalizing each nonzero class, and numbering
new polynomials in first-discovery order: digits ascending, residue classes
in lexicographic order.  Termination follows from the per-variable degree
bound max(deg Q_1, deg P), which closure preserves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .poly import ModPoly, ensure_prime, parse_poly


class LimitError(RuntimeError):
    """A configured resource limit (state count, term budget, solve size) was hit."""


@dataclass(frozen=True)
class Scheme:
    """A synthesized recurrence scheme.  Immutable; safe to share.

    transitions[j][i] is the sorted tuple of 1-based state indices of the
    digit-i multiset for state j+1.  base_scalar[j] and base_histogram[j]
    are the n=0 values coeff_sum(Q_{j+1}) and coeff_histogram(Q_{j+1}).
    """

    p: int
    vars: tuple[str, ...]
    poly: ModPoly
    states: tuple[ModPoly, ...]
    transitions: tuple[tuple[tuple[int, ...], ...], ...]
    base_scalar: tuple[int, ...]
    base_histogram: tuple[tuple[int, ...], ...]

    @property
    def state_count(self) -> int:
        return len(self.states)

    def digit_matrix(self, i: int) -> list[list[int]]:
        """Multiplicity matrix of digit i: entry [j][l] counts l+1 in transitions[j][i]."""
        if not 0 <= i < self.p:
            raise ValueError(f"digit {i} out of range for p={self.p}")
        m = self.state_count
        rows = []
        for j in range(m):
            row = [0] * m
            for l in self.transitions[j][i]:
                row[l - 1] += 1
            rows.append(row)
        return rows

    def label(self) -> str:
        return f"p={self.p} poly={self.poly} q0={self.states[0]}"


def degree_bounds(poly: ModPoly, q0: ModPoly) -> tuple[int, ...]:
    """Per-variable degree ceiling max(deg q0, deg poly) for canonical inputs.

    Splitting Q*P^i divides exponents by p, so states never exceed this bound:
    deg(class) <= floor((deg Q + (p-1) deg P) / p) <= max(deg Q, deg P).
    """
    dp = poly.degrees()
    dq = q0.degrees()
    return tuple(max(a, b) for a, b in zip(dp, dq))


def synthesize(
    poly: ModPoly,
    q0: ModPoly | None = None,
    max_states: int = 100_000,
) -> Scheme:
    """Build the full recurrence scheme for coeff_sum(q0 * poly^n).

    Both inputs must be nonzero mod p; poly and the seed are canonicalized
    first (legal because the functionals ignore monomial factors).  The
    worklist closure is sequential and byte-deterministic: states are
    numbered in first-discovery order with digits ascending and residue
    classes in lexicographic order.  Raises LimitError if more than
    max_states states appear.
    """
    if poly.is_zero():
        raise ValueError("polynomial is zero mod p")
    if q0 is None:
        q0 = ModPoly.one(poly.p, poly.vars)
    if q0.is_zero():
        raise ValueError("seed polynomial is zero mod p")
    if q0.p != poly.p or q0.vars != poly.vars:
        raise ValueError("seed and polynomial must share modulus and variables")

    p = poly.p
    poly = poly.canonical()
    powers = [ModPoly.one(p, poly.vars)]
    for _ in range(1, p):
        powers.append(powers[-1] * poly)

    seed = q0.canonical()
    states: list[ModPoly] = [seed]
    index: dict[ModPoly, int] = {seed: 1}
    transitions: list[tuple[tuple[int, ...], ...]] = []

    j = 0
    while j < len(states):
        state = states[j]
        row = []
        for i in range(p):
            product = state * powers[i]
            multiset = []
            for quotient in product.residue_split().values():
                canon = quotient.canonical()
                idx = index.get(canon)
                if idx is None:
                    if len(states) >= max_states:
                        raise LimitError(f"state count exceeded max_states={max_states}")
                    states.append(canon)
                    idx = len(states)
                    index[canon] = idx
                multiset.append(idx)
            row.append(tuple(sorted(multiset)))
        transitions.append(tuple(row))
        j += 1

    return Scheme(
        p=p,
        vars=poly.vars,
        poly=poly,
        states=tuple(states),
        transitions=tuple(transitions),
        base_scalar=tuple(s.coeff_sum() for s in states),
        base_histogram=tuple(s.coeff_histogram() for s in states),
    )


def scheme_to_dict(scheme: Scheme) -> dict:
    return {
        "p": scheme.p,
        "vars": list(scheme.vars),
        "polynomial": str(scheme.poly),
        "q0": str(scheme.states[0]),
        "states": [str(s) for s in scheme.states],
        "transitions": [[list(d) for d in row] for row in scheme.transitions],
        "base_scalar": list(scheme.base_scalar),
        "base_histogram": [list(h) for h in scheme.base_histogram],
    }


def scheme_to_json(scheme: Scheme) -> str:
    """Serialize deterministically; identical schemes give identical bytes."""
    return json.dumps(scheme_to_dict(scheme), indent=2) + "\n"


def scheme_from_dict(data: dict) -> Scheme:
    try:
        p = ensure_prime(data["p"])
        vars = tuple(data["vars"])
        poly = parse_poly(data["polynomial"], vars, p)
        states = tuple(parse_poly(s, vars, p) for s in data["states"])
        transitions = tuple(
            tuple(tuple(d) for d in row) for row in data["transitions"]
        )
        base_scalar = tuple(data["base_scalar"])
        base_histogram = tuple(tuple(h) for h in data["base_histogram"])
        q0 = parse_poly(data["q0"], vars, p)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed scheme data: {exc}") from exc

    m = len(states)
    if m == 0:
        raise ValueError("scheme has no states")
    if q0 != states[0]:
        raise ValueError("q0 does not match the first state")
    if not poly.is_canonical():
        raise ValueError("polynomial is not canonical")
    if len(set(states)) != m:
        raise ValueError("duplicate states")
    for s in states:
        if s.is_zero() or not s.is_canonical():
            raise ValueError(f"state {s} is not canonical and nonzero")
    if len(transitions) != m or len(base_scalar) != m or len(base_histogram) != m:
        raise ValueError("transition or base tables do not match the state count")
    for row in transitions:
        if len(row) != p:
            raise ValueError("each state needs one multiset per digit")
        for multiset in row:
            if list(multiset) != sorted(multiset):
                raise ValueError(f"multiset {multiset} is not sorted")
            for idx in multiset:
                if not isinstance(idx, int) or not 1 <= idx <= m:
                    raise ValueError(f"state index {idx} out of range 1..{m}")
    for j, s in enumerate(states):
        if base_scalar[j] != s.coeff_sum() or not isinstance(base_scalar[j], int):
            raise ValueError(f"base_scalar[{j}] does not match state {s}")
        if base_histogram[j] != s.coeff_histogram() or not all(
            isinstance(c, int) for c in base_histogram[j]
        ):
            raise ValueError(f"base_histogram[{j}] does not match state {s}")

    return Scheme(
        p=p,
        vars=vars,
        poly=poly,
        states=states,
        transitions=transitions,
        base_scalar=base_scalar,
        base_histogram=base_histogram,
    )


def scheme_from_json(text: str) -> Scheme:
    return scheme_from_dict(json.loads(text))


def save_scheme(scheme: Scheme, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(scheme_to_json(scheme))


def load_scheme(path: str) -> Scheme:
    with open(path) as fh:
        return scheme_from_json(fh.read())
