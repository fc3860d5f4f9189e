"""Sparse Laurent polynomials over exact rationals.

Exponent vectors are integer tuples; zero coefficients are never stored and
iteration is in sorted exponent order so every downstream artifact is
deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial


class LaurentPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        object.__setattr__(self, "nvars", nvars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError("exponent arity mismatch")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms",
                           {e: c for e, c in clean.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.items())))

    def __repr__(self):
        parts = [f"{c}*x^{e}" for e, c in self.items()]
        return " + ".join(parts) if parts else "0"

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return LaurentPolynomial(self.nvars, t)

    def __sub__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) - c
        return LaurentPolynomial(self.nvars, t)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial(
                self.nvars, {e: c * Fraction(other) for e, c in self.terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __neg__(self):
        return self * Fraction(-1)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a polynomial are not defined")
        out = LaurentPolynomial(self.nvars, {(0,) * self.nvars: Fraction(1)})
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial(
                self.nvars, {(0,) * self.nvars: Fraction(other)})
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        raise TypeError(type(other))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def support_size(self) -> int:
        return len(self.terms)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def exp_eval(self, u, ctx):
        """Value of sum c_b exp(<b, u>) at a real/complex log-coordinate
        vector u."""
        tot = ctx.mpf(0)
        for e, c in self.terms.items():
            tot = tot + ctx.convert(c) * ctx.exp(
                ctx.fsum(ctx.convert(ei) * ui for ei, ui in zip(e, u)))
        return tot


def pair_constant(f: LaurentPolynomial, g: LaurentPolynomial) -> Fraction:
    """Constant term of f*g without forming the product."""
    if f.nvars != g.nvars:
        raise ValueError("variable count mismatch")
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    tot = Fraction(0)
    for e, c in small.terms.items():
        ne = tuple(-x for x in e)
        d = big.terms.get(ne)
        if d:
            tot += c * d
    return tot


class PowerCache:
    """Incremental powers of a fixed Laurent polynomial with a support-size
    budget; constant terms of high powers come from a half split so only
    powers up to ceil(N/2) are ever materialized."""

    def __init__(self, f: LaurentPolynomial, budget: int = 6_000_000):
        self.f = f
        one = LaurentPolynomial(f.nvars, {(0,) * f.nvars: Fraction(1)})
        self.pows = [one]
        self.budget = budget
        self.spent = 1

    def power(self, k: int) -> LaurentPolynomial:
        while len(self.pows) <= k:
            nxt = self.pows[-1] * self.f
            self.spent += nxt.support_size()
            if self.spent > self.budget:
                raise ResourceBudgetExceeded(len(self.pows) - 1)
            self.pows.append(nxt)
        return self.pows[k]

    def constant_term(self, d: int) -> Fraction:
        a = d // 2
        return pair_constant(self.power(a), self.power(d - a))


class ResourceBudgetExceeded(RuntimeError):
    """Raised when powering exceeds the support budget; carries the largest
    completed power."""

    def __init__(self, completed: int):
        super().__init__(f"support budget exhausted after power {completed}")
        self.completed = completed


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def laurent_to_json_dict(f: LaurentPolynomial) -> dict:
    return {"nvars": f.nvars,
            "terms": [{"exponents": list(e), "coefficient": str(c)}
                      for e, c in f.items()]}


def laurent_from_json_dict(d: dict) -> LaurentPolynomial:
    return LaurentPolynomial(
        d["nvars"],
        {tuple(t["exponents"]): Fraction(t["coefficient"]) for t in d["terms"]})


def laurent_to_json(f: LaurentPolynomial) -> str:
    return json.dumps(laurent_to_json_dict(f), sort_keys=True, indent=2)
