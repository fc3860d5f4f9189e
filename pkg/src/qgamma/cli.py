"""Command-line front end.

Every subcommand emits one deterministic JSON document (or CSV where it is
the natural shape) carrying tool_version, config_echo, a value or verdict,
and error estimates.  Exit codes: 0 = success / check passed, 1 = the
computation ran but a verification failed, 2 = usage error or resource
abort.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from . import exceptional
from .asympt import ExtrapolationConfig, apery_ratio, gamma_I_verdict, \
    kernel_c1, make_grid
from .grassmann import bcfk_j_series, ehx_constant_terms, ehx_mirror, \
    grassmann_spectrum, schubert_ring
from .jfun import j_projective, jseries_to_json, quantum_lefschetz, \
    quantum_period
from .laurent import ResourceBudgetExceeded
from .mirror import PartialPeriodError, conifold_point, \
    constant_term_series, fekete_limit, model_period_series, \
    property_o_report, przyjalkowski_model, toric_mirror_from_rays
from .oscillatory import QuadratureConfig, central_charge_structure_sheaf, \
    laplace_lefschetz_check, oscillatory_integral
from .ring import build_hypersurface_ambient_ring, build_projective_ring, \
    gamma_class, ring_to_json_dict
from .scalars import make_constants

try:
    from importlib.metadata import version as _pkg_version
    TOOL_VERSION = _pkg_version("qgamma")
except Exception:  # pragma: no cover - metadata missing in odd installs
    TOOL_VERSION = "0.1.0"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# space specifications


@dataclass(frozen=True)
class SpaceSpec:
    kind: str                   # projective | product | hypersurface |
                                # grassmannian | toric
    n: int = 0                  # homogeneous coordinates (P, X) / Gr ambient
    d: int = 0                  # hypersurface degree
    r: int = 0                  # Grassmannian rank
    factors: tuple = ()         # coordinate counts of product factors
    path: str = ""              # rays file for toric

    def label(self) -> str:
        if self.kind == "projective":
            return f"P{self.n - 1}"
        if self.kind == "product":
            return "x".join(f"P{m - 1}" for m in self.factors)
        if self.kind == "hypersurface":
            return f"X({self.n},{self.d})"
        if self.kind == "grassmannian":
            return f"Gr({self.r},{self.n})"
        return f"toric:{self.path}"

    def fano_index(self) -> int:
        if self.kind == "projective":
            return self.n
        if self.kind == "product":
            return math.gcd(*self.factors)
        if self.kind == "hypersurface":
            return self.n - self.d
        if self.kind == "grassmannian":
            return self.n
        raise UsageError("no canonical divisibility index for toric rays; "
                         "pass --index")

    def build_ring(self):
        if self.kind == "projective":
            return build_projective_ring(self.n)
        if self.kind == "hypersurface":
            # the constructor takes the ambient projective dimension
            return build_hypersurface_ambient_ring(self.n - 1, self.d)
        if self.kind == "grassmannian":
            return schubert_ring(self.r, self.n)
        raise UsageError(f"no cohomology ring constructor for {self.label()}")

    def mirror(self):
        if self.kind == "projective":
            from .mirror import projective_rays
            return toric_mirror_from_rays(projective_rays(self.n))
        if self.kind == "product":
            from .mirror import projective_rays
            rays = []
            offset = 0
            dim = sum(m - 1 for m in self.factors)
            for m in self.factors:
                for ray in projective_rays(m):
                    padded = [0] * dim
                    for i, x in enumerate(ray):
                        padded[offset + i] = x
                    rays.append(tuple(padded))
                offset += m - 1
            return toric_mirror_from_rays(rays)
        if self.kind == "toric":
            return toric_mirror_from_rays(load_rays(self.path))
        if self.kind == "grassmannian":
            return ehx_mirror(self.r, self.n)
        raise UsageError(f"no direct Laurent mirror for {self.label()}; "
                         "use the lefschetz or conifold command")

    def jseries(self, D: int, P: int):
        """(ring, J-series, extras) for spaces carrying a J-function."""
        if self.kind == "projective":
            J = j_projective(self.n, D)
            return J.ring, J, {}
        if self.kind == "grassmannian":
            J = bcfk_j_series(self.r, self.n, D, P)
            return J.ring, J, {}
        if self.kind == "hypersurface":
            r = self.n - self.d
            DX = -(-D * self.n // r)
            out = quantum_lefschetz(j_projective(self.n, DX), self.d, DY=D)
            return out["JY"].ring, out["JY"], {"c0": out["c0"],
                                               "T0": out["T0"]}
        raise UsageError(f"no J-series construction for {self.label()}")


_P_RE = re.compile(r"^P(\d+)$")
_GR_RE = re.compile(r"^Gr\((\d+),(\d+)\)$")
_X_RE = re.compile(r"^X\((\d+),(\d+)\)$")


def parse_space(text: str) -> SpaceSpec:
    text = text.strip()
    if text.startswith("toric:"):
        return SpaceSpec(kind="toric", path=text[len("toric:"):])
    m = _P_RE.match(text)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise UsageError("projective space needs dimension >= 1")
        return SpaceSpec(kind="projective", n=k + 1)
    m = _GR_RE.match(text)
    if m:
        r, n = int(m.group(1)), int(m.group(2))
        if not 1 <= r < n:
            raise UsageError("Grassmannian needs 1 <= r < n")
        return SpaceSpec(kind="grassmannian", r=r, n=n)
    m = _X_RE.match(text)
    if m:
        n, d = int(m.group(1)), int(m.group(2))
        if n < 3 or not 1 <= d < n:
            raise UsageError("hypersurface needs n >= 3 and 1 <= d < n")
        return SpaceSpec(kind="hypersurface", n=n, d=d)
    if "x" in text:
        factors = []
        for part in text.split("x"):
            m = _P_RE.match(part)
            if not m or int(m.group(1)) < 1:
                raise UsageError(f"unknown space {text!r}")
            factors.append(int(m.group(1)) + 1)
        if len(factors) >= 2:
            return SpaceSpec(kind="product", factors=tuple(factors))
    raise UsageError(f"unknown space {text!r}")


def load_rays(path):
    """Validated primitive integer rays from a JSON array of arrays."""
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"rays file not found: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"rays file is not valid JSON: {e}")
    if not isinstance(data, list) or not data:
        raise UsageError("rays file must hold a nonempty JSON array")
    rays, width = [], None
    for v in data:
        if not isinstance(v, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise UsageError("every ray must be an array of integers")
        if width is None:
            width = len(v)
        if len(v) != width or width == 0:
            raise UsageError("rays must be nonempty and of equal length")
        if math.gcd(*(abs(x) for x in v)) != 1:
            raise UsageError(f"non-primitive ray {v}")
        rays.append(tuple(v))
    return rays


# ---------------------------------------------------------------------------
# rendering


def _render(x, P: int):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if hasattr(x, "_mpf_") or hasattr(x, "_mpc_"):
        return mpmath.nstr(x, P)
    if isinstance(x, dict):
        return {str(k): _render(v, P) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_render(v, P) for v in x]
    return str(x)


def _emit(payload: dict, args) -> None:
    if _want_csv(args):
        raise UsageError("csv output is not available for this command")
    text = json.dumps(_render(payload, args.digits), sort_keys=True,
                      indent=2) + "\n"
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text)


def _emit_csv(text: str, args) -> None:
    if not text.endswith("\n"):
        text += "\n"
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text)


def _payload(args, command: str, **fields) -> dict:
    echo = {}
    for key in ("space", "digits", "order", "tmax", "korder", "quad_tol",
                "tol", "N", "t", "u", "word", "index", "kernel_index",
                "format"):
        if hasattr(args, key) and getattr(args, key) is not None:
            echo[key] = getattr(args, key)
    out = {"tool_version": TOOL_VERSION, "command": command,
           "config_echo": echo}
    out.setdefault("error_estimates", {})
    out.update(fields)
    return out


def _want_csv(args) -> bool:
    return getattr(args, "format", "json") == "csv"


# ---------------------------------------------------------------------------
# subcommands (each returns the exit code)


def cmd_ring(args) -> int:
    spec = parse_space(args.space)
    R = spec.build_ring()
    _emit(_payload(args, "ring", value=ring_to_json_dict(R)), args)
    return 0


def cmd_gamma(args) -> int:
    spec = parse_space(args.space)
    R = spec.build_ring()
    C = make_constants(P=args.digits)
    g = gamma_class(R, C)
    value = {label: c for label, c in zip(R.basis, g.coeffs)}
    _emit(_payload(args, "gamma", value=value), args)
    return 0


def cmd_jseries(args) -> int:
    spec = parse_space(args.space)
    D = args.order if args.order is not None else 20
    _, J, extras = spec.jseries(D, args.digits)
    value = json.loads(jseries_to_json(J, spec.label()))
    value.update({k: v for k, v in extras.items()})
    _emit(_payload(args, "jseries", value=value), args)
    return 0


def cmd_qperiod(args) -> int:
    spec = parse_space(args.space)
    N = args.N if args.N is not None else 10
    if spec.kind == "projective":
        qp = quantum_period(j_projective(spec.n, N))
    elif spec.kind == "hypersurface":
        qp = model_period_series(przyjalkowski_model(spec.n - 1, spec.d), N)
    elif spec.kind == "grassmannian":
        qp = ehx_constant_terms(spec.r, spec.n, N)
    else:
        qp = constant_term_series(spec.mirror(), N)
    if _want_csv(args):
        _emit_csv(qp.to_csv(), args)
        return 0
    rows = [{"d": d, "exact": str(qp.coefficient(d)),
             "float": mpmath.nstr(mpmath.mpf(qp.coefficient(d).numerator)
                                  / qp.coefficient(d).denominator,
                                  args.digits)}
            for d in qp.nonzero_degrees()]
    _emit(_payload(args, "qperiod", value=rows), args)
    return 0


def cmd_conifold(args) -> int:
    spec = parse_space(args.space)
    if spec.kind == "hypersurface":
        f = przyjalkowski_model(spec.n - 1, spec.d)
    else:
        f = spec.mirror()
    res = conifold_point(f, P=args.digits)
    value = {"T0": res.T_con, "location": list(res.x_con),
             "newton_iterations": res.newton_iterations,
             "hessian_positive": res.hessian_positive}
    payload = _payload(args, "conifold", value=value,
                       verdict=bool(res.hessian_positive))
    payload["error_estimates"] = {"gradient_norm": res.gradient_norm}
    _emit(payload, args)
    return 0 if res.hessian_positive else 1


def cmd_spectrum(args) -> int:
    spec = parse_space(args.space)
    if spec.kind == "grassmannian":
        s = grassmann_spectrum(spec.r, spec.n, P=args.digits)
        report = s["property_o"]
        value = {"T": s["T"], "T_formula": s["T_formula"],
                 "eigenvalues": list(s["eigenvalues"]),
                 "maximizers": [list(m) for m in s["maximizers"]],
                 "maximizers_consecutive": s["maximizers_consecutive"],
                 "property_o": report}
    elif spec.kind == "projective":
        marks = list(exceptional.eigenvalue_marks(spec.n, args.digits))
        report = property_o_report(marks, spec.n, P=args.digits)
        value = {"T": report["T"], "eigenvalues": marks,
                 "property_o": report}
    else:
        raise UsageError(f"spectrum needs P<n> or Gr(r,n), got {spec.label()}")
    verdict = bool(report["satisfied"])
    _emit(_payload(args, "spectrum", value=value, verdict=verdict), args)
    return 0 if verdict else 1


def cmd_check_gamma1(args) -> int:
    spec = parse_space(args.space)
    D = args.order if args.order is not None else 600
    R, J, _ = spec.jseries(D, args.digits)
    cfg = ExtrapolationConfig(t_grid=make_grid(args.tmax, args.korder),
                              order=args.korder, precision=args.digits)
    tol = args.tol if args.tol is not None else 1e-4
    verdict = gamma_I_verdict(R, J, cfg, tol)
    payload = _payload(args, "check-gamma1", value=verdict,
                       verdict=bool(verdict["pass"]))
    payload["error_estimates"] = {
        "worst_difference": verdict["worst_difference"],
        "extrapolation": [c["extrapolation_error"]
                          for c in verdict["component_errors"]]}
    _emit(payload, args)
    return 0 if verdict["pass"] else 1


def cmd_apery(args) -> int:
    spec = parse_space(args.space)
    N = args.N if args.N is not None else 20
    D = spec.fano_index() * N
    R, J, _ = spec.jseries(D, args.digits)
    kern = kernel_c1(R)
    if not kern:
        raise UsageError(f"{spec.label()} has no primitive classes to pair")
    idx = args.kernel_index if args.kernel_index is not None else len(kern) - 1
    if not 0 <= idx < len(kern):
        raise UsageError(f"kernel index out of range 0..{len(kern) - 1}")
    alpha = kern[idx]
    res = apery_ratio(J, alpha, N, P=args.digits)
    value = {"alpha": list(alpha.coeffs), "kernel_dimension": len(kern),
             "n": list(res["n"]), "ratios": list(res["ratios"]),
             "accelerated": res["accelerated"], "target": res["target"]}
    payload = _payload(args, "apery", value=value)
    payload["error_estimates"] = {
        "last_gap": abs(res["ratios"][-1] - res["target"])}
    _emit(payload, args)
    return 0


def cmd_oscillatory(args) -> int:
    spec = parse_space(args.space)
    if spec.kind != "projective":
        raise UsageError("oscillatory check is wired for P<n> spaces")
    D = args.order if args.order is not None else 400
    R, J, _ = spec.jseries(D, args.digits)
    C = make_constants(P=args.digits)
    g = gamma_class(R, C)
    with mpmath.workdps(args.digits + 10):
        t = mpmath.mpf(args.t)
        z = 1 / t
    Z = central_charge_structure_sheaf(J, g, t, P=args.digits)
    q = QuadratureConfig(tol=args.quad_tol, precision=args.digits)
    osc = oscillatory_integral(spec.mirror(), z, q)
    rel = abs(Z - osc) / abs(Z)
    tol = args.tol if args.tol is not None else 1e-6
    verdict = bool(rel < tol)
    payload = _payload(args, "oscillatory", verdict=verdict,
                       value={"t": t, "central_charge": Z,
                              "oscillatory_integral": osc,
                              "relative_difference": rel, "tol": tol})
    payload["error_estimates"] = {"relative_difference": rel}
    _emit(payload, args)
    return 0 if verdict else 1


def cmd_lefschetz(args) -> int:
    spec = parse_space(args.space)
    if spec.kind != "hypersurface":
        raise UsageError("lefschetz check needs a hypersurface space X(n,d)")
    D = args.order if args.order is not None else 160
    JX = j_projective(spec.n, D)
    rep = laplace_lefschetz_check(JX, spec.d, mpmath.mpf(args.u),
                                  tol=args.tol, P=args.digits)
    verdict = bool(rep.get("pass", True))
    payload = _payload(args, "lefschetz", verdict=verdict, value=rep)
    payload["error_estimates"] = {"rel_diff": rep["rel_diff"],
                                  "quad_error":
                                      rep["grid_params"]["quad_error"]}
    _emit(payload, args)
    return 0 if verdict else 1


def cmd_gram(args) -> int:
    spec = parse_space(args.space)
    if spec.kind != "projective":
        raise UsageError("gram is wired for the twisting sheaves on P<n>")
    coll = exceptional.beilinson_collection(spec.n)
    g = exceptional.gram_matrix(coll, P=args.digits)
    labels = [E.label for E in coll]
    integral = all(x is not None for row in g["integers"] for x in row)
    if _want_csv(args):
        lines = ["pair," + ",".join(labels)]
        for lab, row in zip(labels, g["integers"]):
            lines.append(lab + "," + ",".join("" if x is None else str(x)
                                              for x in row))
        _emit_csv("\n".join(lines), args)
        return 0 if integral else 1
    payload = _payload(args, "gram", verdict=integral,
                       value={"labels": labels, "integers": g["integers"]})
    payload["error_estimates"] = {"max_residual": g["max_residual"]}
    _emit(payload, args)
    return 0 if integral else 1


_WORD_RE = re.compile(r"^([RL])(\d+)$")


def cmd_mutate(args) -> int:
    spec = parse_space(args.space)
    if spec.kind != "projective":
        raise UsageError("mutate is wired for the twisting sheaves on P<n>")
    basis = exceptional.marked_beilinson_basis(spec.n, args.digits)
    for token in re.split(r"[,\s]+", args.word.strip()):
        if not token:
            continue
        m = _WORD_RE.match(token)
        if not m:
            raise UsageError(f"bad mutation token {token!r}; use R<i> or L<i>")
        i = int(m.group(2))
        if not 1 <= i < len(basis):
            raise UsageError(f"mutation position {i} out of range "
                             f"1..{len(basis) - 1}")
        op = exceptional.right_mutation if m.group(1) == "R" \
            else exceptional.left_mutation
        basis = op(basis, i)
    g = exceptional.gram_matrix(basis)
    integral = all(x is not None for row in g["integers"] for x in row)
    order = exceptional.unitriangular_order(g["integers"]) if integral \
        else None
    verdict = integral and order is not None
    payload = _payload(args, "mutate", verdict=verdict,
                       value={"labels": list(basis.labels),
                              "rows": [list(r) for r in basis.rows],
                              "gram_integers": g["integers"],
                              "resort_order": order})
    payload["error_estimates"] = {"max_residual": g["max_residual"]}
    _emit(payload, args)
    return 0 if verdict else 1


def cmd_fekete(args) -> int:
    spec = parse_space(args.space)
    N = args.N if args.N is not None else 12
    if args.index is not None:
        r = args.index
    else:
        r = spec.fano_index()
    f = spec.mirror()
    rep = fekete_limit(f, r, N, P=args.digits)
    verdict = bool(rep["supermultiplicative"])
    payload = _payload(args, "fekete", verdict=verdict, value=rep)
    _emit(payload, args)
    return 0 if verdict else 1


# ---------------------------------------------------------------------------
# parser and dispatch


_COMMANDS = {
    "ring": cmd_ring, "gamma": cmd_gamma, "jseries": cmd_jseries,
    "qperiod": cmd_qperiod, "conifold": cmd_conifold,
    "spectrum": cmd_spectrum, "check-gamma1": cmd_check_gamma1,
    "apery": cmd_apery, "oscillatory": cmd_oscillatory,
    "lefschetz": cmd_lefschetz, "gram": cmd_gram, "mutate": cmd_mutate,
    "fekete": cmd_fekete,
}

_CONFIG_KEYS = {"space", "digits", "order", "tmax", "korder", "quad_tol",
                "tol", "n", "t", "u", "word", "index", "kernel_index",
                "output", "format", "seed"}
_INT_KEYS = {"digits", "order", "korder", "n", "index", "kernel_index",
             "seed"}
_FLOAT_KEYS = {"tmax", "quad_tol", "tol", "t", "u"}


def _load_config(path: str) -> dict:
    import configparser
    cp = configparser.ConfigParser()
    try:
        cp.read_string("[qgamma]\n" + Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}")
    except configparser.Error as e:
        raise UsageError(f"bad config file: {e}")
    out = {}
    for key, raw in cp["qgamma"].items():
        key = key.replace("-", "_").lower()
        if key == "n":
            key = "N"
        elif key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if key in _INT_KEYS or key == "N":
            out[key] = int(raw)
        elif key in _FLOAT_KEYS:
            out[key] = float(raw)
        else:
            out[key] = raw
    return out


def _build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qgamma",
        description="quantum cohomology asymptotics and mirror checks")
    top.add_argument("--config", help="key = value defaults, "
                                      "overridden by flags")
    sub = top.add_subparsers(dest="command")
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--space", required=True,
                       help="P<n>, Gr(r,n), X(n,d), P1xP1, toric:rays.json")
        p.add_argument("--digits", "-P", type=int, default=50)
        p.add_argument("--order", "-D", type=int, default=None,
                       help="series truncation order")
        p.add_argument("--output", "-o", default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name in ("qperiod", "apery", "fekete"):
            p.add_argument("-N", type=int, default=None)
        if name == "check-gamma1":
            p.add_argument("--tmax", type=float, default=40.0)
            p.add_argument("--korder", "-k", type=int, default=6)
        if name in ("check-gamma1", "oscillatory", "lefschetz"):
            p.add_argument("--tol", type=float, default=None)
        if name == "oscillatory":
            p.add_argument("--t", type=float, default=1.0)
            p.add_argument("--quad-tol", dest="quad_tol", type=float,
                           default=1e-12)
        if name == "lefschetz":
            p.add_argument("--u", type=float, default=0.05)
        if name == "mutate":
            p.add_argument("--word", required=True,
                           help="mutation word, e.g. 'R1 L2 R3'")
        if name == "apery":
            p.add_argument("--kernel-index", dest="kernel_index", type=int,
                           default=None)
        if name == "fekete":
            p.add_argument("--index", type=int, default=None,
                           help="divisibility step for the power sequence")
        if defaults:
            known = {a.dest for a in p._actions}
            usable = {k: v for k, v in defaults.items() if k in known}
            if usable:
                p.set_defaults(**usable)
                for a in p._actions:
                    if a.dest in usable:
                        a.required = False
    return top


def _config_path(argv) -> str | None:
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    return path


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        defaults = None
        path = _config_path(argv)
        if path:
            defaults = _load_config(path)
        parser = _build_parser(defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return 0 if e.code in (0, None) else 2
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        if args.digits < 15:
            raise UsageError("need at least 15 digits")
        for field in ("order", "tmax", "korder", "quad_tol", "N", "t", "u"):
            v = getattr(args, field, None)
            if v is not None and v <= 0:
                raise UsageError(f"--{field} must be positive")
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ResourceBudgetExceeded, PartialPeriodError) as e:
        print(f"resource abort: {e}", file=sys.stderr)
        return 2
    except (ValueError, IndexError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
