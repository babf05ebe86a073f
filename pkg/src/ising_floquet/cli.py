"""
Command-line driver for sweeps over N.

    ising-floquet --mode evolve --n-qubits 6 --n-max 16
    ising-floquet --mode period --n-qubits 6:100:2
    ising-floquet --config run.json --format json --out run.json

Output is CSV with a '#'-prefixed JSON metadata line, or a single JSON
document. Exit status: 0 ok, 2 configuration error, 3 numerical failure.
"""

import argparse
import ast
import json
import math
import operator
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from .entangle import entanglement_series, rdm1, rdm2
from .exceptions import ConfigError, NumericalStabilityError
from .floquet import ModelParams, build_floquet, deviation_series, evolve, find_period
from .spectral import DEFAULT_BINS, DEFAULT_Q_MAX, DEGENERACY_TOL, spectrum_report
from .symspace import coherent_state, random_symmetric_state

MODES = ("evolve", "period", "deviation", "spectrum", "verify")
FORMATS = ("csv", "json")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3
FLOAT_FMT = "{:.12g}"
DEFAULT_N_MAX = {"evolve": 100, "deviation": 100, "period": 1000, "spectrum": 1, "verify": 20}
VERIFY_TOL = 1e-10


@dataclass
class RunConfig:
    mode: str = ""
    n_qubits: List[int] = field(default_factory=list)
    coupling: float = 0.5
    tau: float = math.pi / 4
    theta0: float = 0.0
    phi0: float = 0.0
    n_max: Optional[int] = None
    tol: float = 1e-9
    cluster_tol: float = DEGENERACY_TOL
    q_max: int = DEFAULT_Q_MAX
    bins: int = DEFAULT_BINS
    seed: int = 0
    workers: Optional[int] = None
    out: Optional[str] = None
    format: str = "csv"
    n_qubits_text: str = ""
    overrides: List[str] = field(default_factory=list)

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if not self.n_qubits:
            raise ConfigError("n_qubits is required and the range must be non-empty")
        if any(n < 1 for n in self.n_qubits):
            raise ConfigError("n_qubits must be positive")
        if self.n_max is None:
            self.n_max = DEFAULT_N_MAX[self.mode]
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.tol <= 0 or self.cluster_tol <= 0:
            raise ConfigError("tolerances must be positive")
        if self.q_max < 1 or self.bins < 1:
            raise ConfigError("q_max and bins must be >= 1")
        if self.mode == "verify" and max(self.n_qubits) > 12:
            raise ConfigError("verify mode uses the 2^N oracle and is limited to N <= 12")
        return self

    def metadata(self):
        meta = asdict(self)
        meta.pop("n_qubits_text")
        meta["n_qubits"] = self.n_qubits_text or ",".join(map(str, self.n_qubits))
        return meta


# ---------------------------------------------------------------- parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def parse_real(text):
    """Real number that may use pi, e.g. 'pi/4', '-3*pi/8', '0.785398'."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in ("pi", "π"):
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        raise ValueError
    try:
        value = ev(ast.parse(str(text).strip().replace("π", "pi"), mode="eval"))
    except (ValueError, SyntaxError, ZeroDivisionError, TypeError):
        raise ConfigError(f"cannot parse real value {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"non-finite value {text!r}")
    return value


def parse_n_qubits(value):
    """'8' -> [8]; '6:12:2' -> [6, 8, 10, 12] (inclusive); '5,7,9' -> [5, 7, 9]."""
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    if isinstance(value, list):
        return [int(x) for x in value]
    text = str(value).strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            if step < 1:
                raise ConfigError("range step must be >= 1")
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse n_qubits {value!r}") from None


def _as_int(key, value):
    try:
        f = parse_real(value)
    except ConfigError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None
    if f != int(f):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return int(f)


_REAL_KEYS = {"coupling", "tau", "theta0", "phi0", "tol", "cluster_tol"}
_INT_KEYS = {"n_max", "q_max", "bins", "seed", "workers"}
_STR_KEYS = {"mode", "out", "format"}
CONFIG_KEYS = _REAL_KEYS | _INT_KEYS | _STR_KEYS | {"n_qubits"}


def _coerce(key, value):
    if key == "n_qubits":
        return parse_n_qubits(value)
    if key in _REAL_KEYS:
        return parse_real(value)
    if key in _INT_KEYS:
        return None if value is None else _as_int(key, value)
    return None if value is None else str(value)


def _normalize_keys(raw):
    out = {}
    for key, value in raw.items():
        k = key.replace("-", "_")
        if k not in CONFIG_KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")
        out[k] = value
    return out


def build_parser():
    p = argparse.ArgumentParser(
        prog="ising-floquet",
        description="Kicked all-to-all Ising Floquet dynamics in the symmetric subspace.",
    )
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--n-qubits", help="N, a list 5,7,9 or an inclusive range a:b[:step]")
    p.add_argument("--coupling", help="Ising strength J (default 1/2)")
    p.add_argument("--tau", help="kick strength tau; accepts pi expressions (default pi/4)")
    p.add_argument("--theta0", help="coherent-state polar angle (default 0)")
    p.add_argument("--phi0", help="coherent-state azimuth (default 0)")
    p.add_argument("--n-max", help="last evolution step / deviation step / period search bound")
    p.add_argument("--tol", help="numerical tolerance (default 1e-9)")
    p.add_argument("--cluster-tol", help="degeneracy clustering gap (default 1e-8)")
    p.add_argument("--q-max", help="largest denominator for rational angles (default 48)")
    p.add_argument("--bins", help="histogram bins over (-pi, pi] (default 16)")
    p.add_argument("--seed", help="RNG seed for verify mode")
    p.add_argument("--workers", help="parallel workers for sweeps over N (default: all cores)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--config", help="flat JSON object with the same keys")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def parse_config(argv=None, text=None):
    """
    Resolve a RunConfig from a JSON config (file via --config, or ``text``)
    and command-line flags. Flags win; overridden keys are recorded.
    """
    parser = build_parser()
    parser.__class__ = _Parser
    args = parser.parse_args([] if argv is None else list(argv))

    file_values = {}
    if args.config is not None:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from None
    if text is not None:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a flat JSON object")
        file_values = _normalize_keys(raw)

    flag_values = {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    cfg = RunConfig()
    for source in (file_values, flag_values):
        for key, value in source.items():
            setattr(cfg, key, _coerce(key, value))
    cfg.overrides = sorted(k for k in flag_values if k in file_values and
                           _coerce(k, flag_values[k]) != _coerce(k, file_values[k]))
    raw_n = flag_values.get("n_qubits", file_values.get("n_qubits", ""))
    cfg.n_qubits_text = raw_n if isinstance(raw_n, str) else json.dumps(raw_n)
    return cfg.validate()


# ---------------------------------------------------------------- modes

def _params(cfg, n):
    return ModelParams(n, cfg.coupling, cfg.tau)


def _evolve_rows(cfg, n):
    op = build_floquet(_params(cfg, n))
    state = coherent_state(n, cfg.theta0, cfg.phi0)
    return [
        {"N": n, "n": r.n, "linear_entropy": r.linear_entropy,
         "von_neumann": r.von_neumann, "concurrence": r.concurrence}
        for r in entanglement_series(op, state, cfg.n_max)
    ]


def _period_rows(cfg, n):
    op = build_floquet(_params(cfg, n))
    period = find_period(op, cfg.n_max, cfg.tol)
    return [{"N": n, "period": "none" if period is None else period}]


def _deviation_rows(cfg, n):
    series = deviation_series(build_floquet(_params(cfg, n)), cfg.n_max)
    return [{"N": n, "n": int(k), "delta": float(d)} for k, d in zip(series.n, series.delta)]


def _spectrum_rows(cfg, n):
    rep = spectrum_report(build_floquet(_params(cfg, n)), cfg.cluster_tol, cfg.q_max, cfg.bins)
    rows = []
    for i, (a, fit) in enumerate(zip(rep.eigenangles, rep.rational_fit)):
        rows.append({"N": n, "kind": "angle", "index": i, "value": float(a), "weight": 1,
                     "fraction": f"{fit.fraction.numerator}/{fit.fraction.denominator}",
                     "residual": fit.residual})
    for i, c in enumerate(rep.clusters):
        rows.append({"N": n, "kind": "cluster", "index": i, "value": c.angle,
                     "weight": c.multiplicity, "fraction": "", "residual": ""})
    for i, count in enumerate(rep.counts):
        rows.append({"N": n, "kind": "histogram", "index": i, "value": float(rep.bin_edges[i]),
                     "weight": int(count), "fraction": "", "residual": ""})
    return rows


def verify_residuals(cfg, n, n_states=20):
    """Max deviations between the Dicke-basis fast path and the 2^N oracle."""
    from . import oracle

    params = _params(cfg, n)
    op = build_floquet(params)
    projected = oracle.projected_operator(lambda a: oracle.apply_floquet(params, a), n)
    rng = np.random.default_rng(cfg.seed + n)
    steps = min(cfg.n_max, 20)
    res = {"operator": float(np.abs(projected - op.matrix).max()),
           "rdm1": 0.0, "rdm2": 0.0, "evolution": 0.0, "leakage": 0.0}
    for _ in range(n_states):
        state = random_symmetric_state(n, rng)
        full = oracle.embed_symmetric(state)
        res["rdm1"] = max(res["rdm1"], float(np.abs(oracle.partial_trace(full, [0]) - rdm1(state)).max()))
        if n >= 2:
            res["rdm2"] = max(res["rdm2"], float(np.abs(oracle.partial_trace(full, [0, 1]) - rdm2(state)).max()))
        fast = evolve(op, state, steps)
        slow = oracle.full_evolve(params, full, steps)
        back, leak = oracle.project_symmetric(slow)
        res["evolution"] = max(res["evolution"], float(np.abs(back.coeffs - fast.coeffs).max()))
        res["leakage"] = max(res["leakage"], leak)
    return res


def _verify_rows(cfg, n):
    return [{"N": n, "check": k, "residual": v, "ok": v < VERIFY_TOL}
            for k, v in verify_residuals(cfg, n).items()]


_RUNNERS = {"evolve": _evolve_rows, "period": _period_rows, "deviation": _deviation_rows,
            "spectrum": _spectrum_rows, "verify": _verify_rows}


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT.format(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        return float(FLOAT_FMT.format(float(v)))
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(cfg, rows):
    meta = cfg.metadata()
    if cfg.format == "json":
        doc = {"metadata": meta, "rows": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
        return json.dumps(doc, indent=1) + "\n"
    lines = ["# " + json.dumps(meta, sort_keys=True)]
    if rows:
        cols = list(rows[0])
        lines.append(",".join(cols))
        lines.extend(",".join(_fmt(r[c]) for c in cols) for r in rows)
    return "\n".join(lines) + "\n"


def run(cfg):
    """Execute a resolved config. Returns (exit status, rows)."""
    runner = _RUNNERS[cfg.mode]
    workers = cfg.workers or os.cpu_count() or 1
    if len(cfg.n_qubits) > 1 and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda n: runner(cfg, n), cfg.n_qubits))
    else:
        chunks = [runner(cfg, n) for n in cfg.n_qubits]
    rows = [r for chunk in chunks for r in chunk]
    text = render(cfg, rows)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = cfg.mode == "verify" and not all(r["ok"] for r in rows)
    return (EXIT_NUMERICAL if failed else EXIT_OK), rows


def _error(kind, message, status):
    sys.stderr.write(json.dumps({"error": kind, "message": message, "status": status}) + "\n")
    return status


def main(argv=None):
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    try:
        status, _ = run(cfg)
    except NumericalStabilityError as exc:
        return _error("numerical", str(exc), EXIT_NUMERICAL)
    except (ValueError, OSError) as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    return status


if __name__ == "__main__":
    sys.exit(main())
