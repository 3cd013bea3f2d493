"""Sparse multivariate polynomials with coefficients modulo a prime.

A polynomial is a mapping from exponent vectors (one integer per variable;
negative exponents are allowed so that Laurent input can be normalized later)
to coefficients stored already reduced into {1, ..., p-1}.  Zero coefficients
are never stored, so "reduce mod p" is a storage invariant rather than a
separate pass, and equality of polynomials is equality of term dictionaries.

  1 + x + x^2 over vars ("x",) mod 2   ->   {(0,): 1, (1,): 1, (2,): 1}

Values are immutable after construction; all operations return new objects.
"""

from __future__ import annotations

from math import isqrt


class ParseError(ValueError):
    """Syntax or validation error in a polynomial expression string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def ensure_prime(p: int) -> int:
    """Validate the modulus: a prime with 2 <= p <= 2**16 (deterministic check)."""
    if not isinstance(p, int) or p < 2 or p > 2**16:
        raise ValueError(f"modulus must be a prime in [2, 65536], got {p!r}")
    for d in range(2, isqrt(p) + 1):
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime (divisible by {d})")
    return p


class ModPoly:
    """Immutable sparse polynomial over Z/p in a fixed ordered variable list."""

    __slots__ = ("p", "vars", "terms", "_key")

    def __init__(self, p: int, vars: tuple[str, ...], terms: dict[tuple[int, ...], int]):
        ensure_prime(p)
        vars = tuple(vars)
        k = len(vars)
        reduced: dict[tuple[int, ...], int] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != k:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {k}")
            c = coeff % p
            if c:
                reduced[exps] = c
        self.p = p
        self.vars = vars
        self.terms = reduced
        self._key = tuple(sorted(reduced.items()))

    @classmethod
    def zero(cls, p: int, vars: tuple[str, ...]) -> ModPoly:
        return cls(p, vars, {})

    @classmethod
    def one(cls, p: int, vars: tuple[str, ...]) -> ModPoly:
        return cls.constant(p, vars, 1)

    @classmethod
    def constant(cls, p: int, vars: tuple[str, ...], c: int) -> ModPoly:
        return cls(p, vars, {(0,) * len(vars): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModPoly):
            return NotImplemented
        return self.p == other.p and self.vars == other.vars and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.p, self.vars, self._key))

    def __repr__(self) -> str:
        return f"ModPoly(p={self.p}, {self})"

    def _check_compatible(self, other: ModPoly) -> None:
        if self.p != other.p:
            raise ValueError(f"mismatched moduli: {self.p} vs {other.p}")
        if self.vars != other.vars:
            raise ValueError(f"mismatched variables: {self.vars} vs {other.vars}")

    def __add__(self, other: ModPoly) -> ModPoly:
        self._check_compatible(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) + c
        return ModPoly(self.p, self.vars, out)

    def __sub__(self, other: ModPoly) -> ModPoly:
        self._check_compatible(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) - c
        return ModPoly(self.p, self.vars, out)

    def __mul__(self, other: ModPoly | int) -> ModPoly:
        if isinstance(other, int):
            return ModPoly(self.p, self.vars, {e: c * other for e, c in self.terms.items()})
        self._check_compatible(other)
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return ModPoly(self.p, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ModPoly:
        """Square-and-multiply power; the empty product for e = 0."""
        if e < 0:
            raise ValueError(f"exponent must be nonnegative, got {e}")
        result = ModPoly.one(self.p, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def degrees(self) -> tuple[int, ...]:
        """Per-variable maximum exponent (the zero polynomial has all zeros)."""
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(e[v] for e in self.terms) for v in range(len(self.vars)))

    def canonical(self) -> ModPoly:
        """Divide out the greatest common monomial.

        Every variable's minimum exponent becomes exactly 0, which also clears
        negative (Laurent) exponents.  Idempotent; coefficients unchanged.
        """
        if not self.terms:
            raise ValueError("the zero polynomial has no canonical representative")
        mins = [min(e[v] for e in self.terms) for v in range(len(self.vars))]
        if all(m == 0 for m in mins):
            return self
        shifted = {tuple(x - m for x, m in zip(e, mins)): c for e, c in self.terms.items()}
        return ModPoly(self.p, self.vars, shifted)

    def is_canonical(self) -> bool:
        if not self.terms:
            return False
        return all(min(e[v] for e in self.terms) == 0 for v in range(len(self.vars)))

    def coeff_sum(self) -> int:
        """Sum of the stored coefficients as plain integers.

        This is the value of the polynomial after reducing coefficients mod p
        and setting every variable to 1; for p = 2 it is the number of
        odd-coefficient monomials (ON cells).
        """
        return sum(self.terms.values())

    def coeff_histogram(self) -> tuple[int, ...]:
        """Count the terms with each nonzero residue: entry i-1 counts coefficient i."""
        counts = [0] * (self.p - 1)
        for c in self.terms.values():
            counts[c - 1] += 1
        return tuple(counts)

    def residue_split(self) -> dict[tuple[int, ...], ModPoly]:
        """Partition terms by exponent residues mod p, dividing exponents by p.

        Each term c*x^e contributes c*x^(e div p) to the class keyed e mod p.
        Classes that would be zero are omitted.  Keys are returned in
        lexicographic order.  Requires nonnegative exponents.
        """
        p = self.p
        classes: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        for exps, c in self.terms.items():
            if any(x < 0 for x in exps):
                raise ValueError(f"negative exponent in {exps}; canonicalize first")
            alpha = tuple(x % p for x in exps)
            quot = tuple(x // p for x in exps)
            classes.setdefault(alpha, {})[quot] = c
        return {
            alpha: ModPoly(p, self.vars, classes[alpha])
            for alpha in sorted(classes)
        }

    def __str__(self) -> str:
        """Canonical expression string: terms in lexicographic exponent order.

        Round-trips through parse_poly; e.g. "1+x+x^2", "2*x", "x^2*y".
        """
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            factors = []
            if c != 1 or all(e == 0 for e in exps):
                factors.append(str(c))
            for name, e in zip(self.vars, exps):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(factors))
        return "+".join(parts)


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := integer | var | var '^' sint | '(' expr ')'
    sint   := '-'? integer

    Implicit multiplication is not allowed ("2x" is an error; write "2*x").
    """

    def __init__(self, text: str, vars: tuple[str, ...], p: int):
        self.text = text
        self.vars = vars
        self.p = p
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def _identifier(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if name not in self.vars:
            raise ParseError(f"unknown variable {name!r}", start)
        return name

    def parse(self) -> ModPoly:
        result = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError("unexpected trailing input", self.pos)
        return result

    def _expr(self) -> ModPoly:
        result = self._term()
        while True:
            op = self._peek()
            if op == "+":
                self.pos += 1
                result = result + self._term()
            elif op == "-":
                self.pos += 1
                result = result - self._term()
            else:
                return result

    def _term(self) -> ModPoly:
        result = self._factor()
        while self._peek() == "*":
            self.pos += 1
            result = result * self._factor()
        return result

    def _factor(self) -> ModPoly:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            self._expect(")")
            return inner
        if ch.isdigit():
            return ModPoly.constant(self.p, self.vars, self._integer())
        if ch.isalpha() or ch == "_":
            name = self._identifier()
            exp = 1
            if self._peek() == "^":
                self.pos += 1
                neg = self._peek() == "-"
                if neg:
                    self.pos += 1
                exp = self._integer()
                if neg:
                    exp = -exp
            exps = tuple(exp if v == name else 0 for v in self.vars)
            return ModPoly(self.p, self.vars, {exps: 1})
        raise ParseError("expected an integer, variable, or '('", self.pos)


def parse_poly(text: str, vars: tuple[str, ...] | list[str], p: int) -> ModPoly:
    """Parse an expression string into a ModPoly with coefficients mod p.

    Negative exponents (Laurent terms) are preserved; canonicalization is a
    separate step.  Raises ParseError with the offending position on bad
    syntax or an undeclared variable.
    """
    ensure_prime(p)
    vars = tuple(vars)
    if len(set(vars)) != len(vars):
        raise ValueError(f"duplicate variable names in {vars}")
    return _Parser(text, vars, p).parse()
