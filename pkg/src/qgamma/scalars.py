"""Exact rational and arbitrary-precision scalar arithmetic shared by all modules.

Conventions used throughout the package:

* ExactRational is `fractions.Fraction` (always reduced, positive denominator).
* BigReal / BigComplex are the ``mpf`` / ``mpc`` values of a *fresh* mpmath
  context created per computation by :func:`working_context`.  Precision is a
  parameter of the computation, never global mutable state; values are
  immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

# 100-digit reference values (standard published digits) used to validate the
# computed constants at construction time.  Two independent derivations of the
# same digits live in the test suite's oracles.
_REFERENCE_100 = {
    "pi": "3.141592653589793238462643383279502884197169399375"
          "105820974944592307816406286208998628034825342117068",
    "gamma": "0.5772156649015328606065120900824024310421593359399"
             "235988057672348848677267776646709369470632917467495",
    "zeta2": "1.644934066848226436472415166646025189218949901206"
             "798437735558229370007470403200873833628900619758706",
    "zeta3": "1.202056903159594285399738161511449990764986292340"
             "498881792271555341838205786313090186455873609335258",
}


def working_context(P: int) -> mpmath.ctx_mp.MPContext:
    """Fresh real/complex context carrying `P` decimal digits.

    Each computation builds its own context; nothing touches mpmath's global
    ``mp`` context.
    """
    if P < 1:
        raise ValueError("precision must be positive")
    ctx = mpmath.ctx_mp.MPContext()
    ctx.dps = P
    return ctx


@dataclass(frozen=True)
class ConstantTable:
    """Certified constants at a fixed working precision.

    Fields hold mpf values from `ctx`; `zeta[k]` covers 2 <= k <= K_max.
    """

    P: int
    K_max: int
    ctx: mpmath.ctx_mp.MPContext = field(repr=False)
    pi: object
    gamma: object
    zeta: dict = field(repr=False)

    def require_zeta(self, k: int):
        if k < 2 or k > self.K_max:
            raise ValueError(f"zeta({k}) outside table range 2..{self.K_max}")
        return self.zeta[k]

    def real(self, x) -> object:
        return self.ctx.mpf(x) if not isinstance(x, Fraction) else self.ctx.convert(x)

    def complex(self, re, im=0) -> object:
        return self.ctx.mpc(self.real(re), self.real(im))


def _agrees_with_reference(ctx, value, digits: str, P: int) -> bool:
    ref = ctx.mpf(digits)
    # 10^(2-P) relative agreement, the advertised contract
    return abs(value - ref) <= abs(ref) * ctx.mpf(10) ** (2 - min(P, 95))


def make_constants(P: int = 50, K_max: int = 64) -> ConstantTable:
    """Build the shared constant table at `P` decimal digits.

    Constants are computed with guard digits, rounded back to `P`, and checked
    against a hard-coded 100-digit reference table; a failure here means the
    arithmetic backend is broken, so it raises rather than warns.
    """
    if P < 15:
        raise ValueError("P < 15 is below the precision floor of every consumer")
    if K_max < 2:
        raise ValueError("K_max must be at least 2")

    work = working_context(P + 15)
    out = working_context(P)

    pi = out.mpf(+work.pi)
    gamma = out.mpf(+work.euler)
    zeta = {}
    for k in range(2, K_max + 1):
        zeta[k] = out.mpf(work.zeta(k))

    for name, val in (("pi", pi), ("gamma", gamma), ("zeta2", zeta[2]),
                      ("zeta3", zeta.get(3))):
        if val is None:
            continue
        if not _agrees_with_reference(out, val, _REFERENCE_100[name], P):
            raise ArithmeticError(f"constant {name} failed reference validation")

    # tail bound: zeta(k) - 1 < 2^(1-k) holds from k = 3 on (at k = 2 the true
    # tail is 0.6449... > 1/2, so k = 2 is checked against the looser 3/4 bound
    # 2^(-k) + 2^(1-k)/(k-1)); also monotone decrease toward 1
    prev = None
    for k in range(2, K_max + 1):
        bound = out.mpf(2) ** (1 - k) if k >= 3 else out.mpf(3) / 4
        if not (zeta[k] - 1) < bound:
            raise ArithmeticError(f"zeta({k}) tail bound violated")
        if prev is not None and not zeta[k] < prev:
            raise ArithmeticError(f"zeta({k}) not monotone")
        prev = zeta[k]

    return ConstantTable(P=P, K_max=K_max, ctx=out, pi=pi, gamma=gamma, zeta=zeta)
