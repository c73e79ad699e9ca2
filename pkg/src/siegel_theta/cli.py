"""Command-line front end: ``siegel-theta eval`` and ``siegel-theta check``.

Exit codes: 0 success, 1 a check failed, 2 parse error, 3 domain error,
4 truncation tolerance unreachable in ``--strict`` mode.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import ThetaError, ToleranceUnreachable, WrongGenus
from .theta import Characteristic, SiegelPoint, TruncationSpec

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_TOL = 0, 1, 2, 3, 4

QUANTITIES = (
    "theta",
    "chi_g",
    "delta",
    "g2g3",
    "epstein",
    "kummer_coeffs",
    "G",
    "Delta_2_2",
    "torsion_elliptic",
    "torsion_theta_divisor",
    "torsion_abelian",
)
SUITE_CHOICES = ("g1-identities", "siegel-covariance", "kummer", "degeneration", "torsion", "all")


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


# ---------------------------------------------------------------------------
# literal parsing
# ---------------------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"\s*[+-]?(?:{_NUM})?(?:[ij]|(?:{_NUM}))(?:\s*[+-]\s*(?:{_NUM})?[ij])?\s*")


def parse_complex(text: str, offset: int = 0) -> complex:
    """Parse ``a+bi`` style literals: ``2i``, ``-i``, ``0.4+1.1i``, ``3``, ``1e-3-2j``."""
    m = _COMPLEX.fullmatch(text)
    if not m or not text.strip():
        raise ParseError("malformed complex literal", text, offset)
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise ParseError("malformed complex literal", text, offset) from None


def parse_array(text: str):
    """Parse a nested bracket list of complex literals, or a bare comma list.

    ``"[[2i, 0.1], [0.1, 2i]]"``, ``"1,0,0,0"`` and ``"i"`` are all accepted.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty value", text, 0)
    if not src.startswith("["):
        if "," in src:
            src = f"[{src}]"
        else:
            return parse_complex(src)
    pos = 0

    def node():
        nonlocal pos
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos < len(src) and src[pos] == "[":
            pos += 1
            items = []
            while True:
                items.append(node())
                while pos < len(src) and src[pos].isspace():
                    pos += 1
                if pos >= len(src):
                    raise ParseError("unterminated list", text, pos)
                if src[pos] == ",":
                    pos += 1
                elif src[pos] == "]":
                    pos += 1
                    return items
                else:
                    raise ParseError(f"unexpected {src[pos]!r}", text, pos)
        start = pos
        while pos < len(src) and src[pos] not in ",[]":
            pos += 1
        return parse_complex(src[start:pos], start)

    out = node()
    if src[pos:].strip():
        raise ParseError("trailing characters", text, pos)
    return out


def parse_tau(text: str) -> SiegelPoint:
    value = parse_array(text)
    try:
        arr = np.array(value, dtype=complex)
    except ValueError:
        raise ParseError("ragged matrix", text, 0) from None
    if arr.ndim == 1 and arr.size == 1:
        arr = arr.reshape(1, 1)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ParseError("tau must be a scalar or a square matrix", text, 0)
    return SiegelPoint(arr)


def parse_vector(text: str) -> np.ndarray:
    try:
        return np.atleast_1d(np.array(parse_array(text), dtype=complex))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError("malformed vector", text, 0) from None


# ---------------------------------------------------------------------------
# records and serialization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    command: str
    quantity: str | None
    suite: tuple
    g: int | None
    tau: str | None
    z: str | None
    u: str | None
    char: str | None
    s: str | None
    m: int | None
    tol: float
    cap: int
    strict: bool
    seed: int
    format: str
    output: str | None


def _num(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json(obj, indent=0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f'{inner}"{k}": {_json(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(inner + _json(v, indent + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    s = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def _cell(v):
    if isinstance(v, dict):
        return ";".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, bool):
        return str(v).lower()
    return _num(v) if isinstance(v, float) else v


def render(config: RunConfig, records: list[dict], fmt: str) -> str:
    if fmt == "json":
        cfg = {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(config).items()}
        cfg.pop("output")
        return _json({"version": __version__, "config": cfg, "records": records}) + "\n"
    buf = io.StringIO()
    if records:
        writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _cell(v) for k, v in r.items()})
    return buf.getvalue()


def _record(quantity: str, inputs: dict, value, err) -> dict:
    v = complex(value)
    return {
        "quantity": quantity,
        "inputs": inputs,
        "value_re": float(v.real),
        "value_im": float(v.imag),
        "err": float(err),
    }


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _need(value, name):
    if value is None:
        raise ParseError(f"--{name} is required for this quantity", "", 0)
    return value


def evaluate(cfg: RunConfig) -> list[dict]:
    from . import kummer, modular_g1, siegel, torsion
    from .theta import theta

    spec = TruncationSpec(cfg.tol, cfg.cap, cfg.strict)
    q = cfg.quantity
    inputs = {k: getattr(cfg, k) for k in ("g", "tau", "z", "u", "char", "s", "m") if getattr(cfg, k) is not None}

    if q == "torsion_abelian":
        pt = torsion.PolarizedTorus(cfg.g or 1, m=_need(cfg.m, "m"))
        return [_record(q, inputs, torsion.torsion_abelian(pt), 0.0)]

    tau = parse_tau(_need(cfg.tau, "tau"))
    g = cfg.g or tau.g
    if g != tau.g:
        raise WrongGenus(f"--g {g} does not match tau of genus {tau.g}")
    scalar = complex(tau.tau[0, 0])

    if q == "theta":
        char = Characteristic.half(cfg.char) if cfg.char else Characteristic.zero(g)
        z = parse_vector(cfg.z) if cfg.z else None
        r = theta(char, z, tau, spec)
        return [_record(q, inputs, r.value, r.err)]
    if q == "chi_g":
        r = modular_g1.chi1(scalar, spec) if g == 1 else siegel.chi_g(g, tau, spec)
        return [_record(q, inputs, r.value, r.err)]
    if q == "delta":
        r = modular_g1.delta_product(scalar) if g == 1 else siegel.delta_g_normalized(g, tau, spec).value
        return [_record(q, inputs, r.value, r.err)]
    if q == "g2g3":
        g2, g3 = modular_g1.eisenstein_g2_g3(scalar)
        return [_record("g2", inputs, g2.value, g2.err), _record("g3", inputs, g3.value, g3.err)]
    if q == "epstein":
        r = modular_g1.epstein_zeta(scalar, parse_complex(_need(cfg.s, "s")))
        return [_record(q, inputs, r.value, r.err)]
    if q == "torsion_elliptic":
        d = modular_g1.epstein_zeta_deriv0(scalar)
        val = math.exp(d.value.real)
        return [
            _record(q, inputs, val, val * math.expm1(d.err)),
            _record("kronecker_closed_form", inputs, modular_g1.kronecker_torsion(scalar), 0.0),
        ]
    if q == "torsion_theta_divisor":
        return [_record(q, inputs, torsion.torsion_theta_divisor(g, tau, spec), 0.0)]
    if q == "kummer_coeffs":
        coeffs = kummer.kummer_coeffs(tau, spec)
        return [_record(f"kummer_{n}", inputs, c.value, c.err) for n, c in zip("ABCDE", coeffs)]
    if q in ("G", "Delta_2_2"):
        u = parse_vector(_need(cfg.u, "u"))
        if q == "G":
            r = kummer.dual_form_product(u, tau, spec)
        else:
            r = kummer.discriminant_2_2(u, tau, spec).value
        return [_record(q, inputs, r.value, r.err)]
    raise ParseError(f"unknown quantity {q!r}", q, 0)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="siegel-theta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tau", help='scalar "a+bi" or matrix "[[2i,0.1],[0.1,2i]]"')
        sp.add_argument("--tol", type=float, default=1e-15, help="target absolute truncation error")
        sp.add_argument("--cap", type=int, default=200, help="maximum lattice radius")
        sp.add_argument("--strict", action="store_true", help="fail if the tolerance is unreachable")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")

    ev = sub.add_parser("eval", help="evaluate one quantity")
    ev.add_argument("--quantity", "-q", required=True, choices=QUANTITIES)
    ev.add_argument("--g", type=int)
    ev.add_argument("--z", help="point in C^g, e.g. \"0.1+0.2i,0.3\"")
    ev.add_argument("--u", help="dual coordinates u0,u1,u2,u3")
    ev.add_argument("--char", help="half-integer characteristic bits, e.g. 1100")
    ev.add_argument("--s", help="Epstein zeta argument")
    ev.add_argument("--m", type=int, help="power of the polarization")
    ev.add_argument("--seed", type=int, default=0)
    common(ev)

    ck = sub.add_parser("check", help="run identity suites")
    ck.add_argument("--suite", action="append", choices=SUITE_CHOICES)
    ck.add_argument("--seed", type=int, default=0)
    common(ck)
    return p


def _config(args) -> RunConfig:
    get = lambda k: getattr(args, k, None)  # noqa: E731
    return RunConfig(
        command=args.command,
        quantity=get("quantity"),
        suite=tuple(sorted(set(get("suite") or ["all"]))) if args.command == "check" else (),
        g=get("g"),
        tau=args.tau,
        z=get("z"),
        u=get("u"),
        char=get("char"),
        s=get("s"),
        m=get("m"),
        tol=args.tol,
        cap=args.cap,
        strict=args.strict,
        seed=args.seed,
        format=args.format,
        output=args.output,
    )


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        if cfg.command == "eval":
            records = evaluate(cfg)
            status = EXIT_OK
        else:
            from .checks import run_suites

            tau = parse_tau(cfg.tau) if cfg.tau else None
            cases = run_suites(cfg.suite, seed=cfg.seed, tau=tau)
            records = [c.as_record() for c in cases]
            status = EXIT_OK if all(c.passed for c in cases) else EXIT_FAIL
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ToleranceUnreachable as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOL
    except (ThetaError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(render(cfg, records, cfg.format), cfg.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
