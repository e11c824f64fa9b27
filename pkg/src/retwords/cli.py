"""``retwords`` command line.

Every subcommand reads one source (``--preset NAME`` or ``--config FILE``),
runs one operation and writes a deterministic report.  Exit status is 0 on
success, 1 for domain errors (reported as a JSON object on stdout) and 2
for unusable command lines or configuration files.

Examples::

    retwords returns --preset chacon --word 23
    retwords complexity --preset golden3 --max-n 25
    retwords audit --preset golden3 --max-len 10
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, TextIO

from . import __version__
from .dynamics import DEFAULT_HORIZON, keane_check
from .errors import ConfigError, DomainError, NoOccurrence
from .language import complexity_csv, complexity_table, factors, factors_scan, rotation_factor_test
from .returns import (
    DEFAULT_CAP,
    SCHEMA,
    audit_csv,
    audit_scan,
    induced_partition,
    factor_interval,
    return_words_geometric,
    return_words_scan,
    verify_property_Rk,
)
from .scalar import as_scalar
from .sources import PRESETS, Source, parse_source, preset

OPERATIONS = ("generate", "factors", "complexity", "returns", "audit", "induce", "keane", "factor-test")
_DEFAULT_FORMAT = {"complexity": "csv", "audit": "csv", "generate": "text"}


@dataclass
class ExperimentConfig:
    source: Source
    operation: str
    params: dict[str, Any] = field(default_factory=dict)
    format: str | None = None
    output: str | None = None

    def __post_init__(self):
        if self.operation not in OPERATIONS:
            raise ConfigError(f"unknown operation {self.operation!r}")
        if self.format not in (None, "json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        for key in ("n", "max_n", "max_len", "length"):
            v = self.params.get(key)
            if v is not None and (not isinstance(v, int) or v < 0):
                raise ConfigError(f"{key} must be a nonnegative integer")
        for key in ("budget", "horizon", "cap"):
            v = self.params.get(key)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise ConfigError(f"{key} must be a positive integer")

    def param(self, key: str, default: Any = None) -> Any:
        v = self.params.get(key)
        return default if v is None else v


def default_horizon() -> int:
    env = os.environ.get("RETWORDS_HORIZON")
    if env is None:
        return DEFAULT_HORIZON
    try:
        value = int(env)
    except ValueError:
        raise ConfigError(f"RETWORDS_HORIZON={env!r} is not an integer") from None
    if value < 1:
        raise ConfigError("RETWORDS_HORIZON must be positive")
    return value


# -- operations -------------------------------------------------------------------


def _op_generate(cfg: ExperimentConfig, fmt: str) -> str:
    n = cfg.param("length", 100)
    text = cfg.source.sequence().prefix(n)
    if fmt == "json":
        return _dump({"schema": SCHEMA, "source": cfg.source.to_json(), "prefix": text})
    return text + "\n"


def _op_factors(cfg: ExperimentConfig, fmt: str) -> str:
    n = cfg.param("n", 1)
    method = _method(cfg, ("geometric", "scan"))
    if method == "geometric":
        T, _ = cfg.source.geometric()
        fs = factors(T, n)
    else:
        fs = factors_scan(cfg.source.sequence(), n, cfg.param("budget"))
    words = fs.sorted()
    if fmt == "json":
        return _dump({"schema": SCHEMA, "n": n, "method": fs.source, "count": len(words), "words": words})
    if fmt == "csv":
        return "n,word\n" + "".join(f"{n},{w}\n" for w in words)
    return "".join(w + "\n" for w in words)


def _op_complexity(cfg: ExperimentConfig, fmt: str) -> str:
    max_n = cfg.param("max_n", 10)
    method = _method(cfg, ("geometric", "scan"))
    ns = range(1, max_n + 1)
    if method == "geometric":
        T, _ = cfg.source.geometric()
        rows = complexity_table(T, ns)
    else:
        rows = complexity_table(cfg.source.sequence(), ns, cfg.param("budget"), cfg.param("expected_k"))
    if fmt == "json":
        return _dump({"schema": SCHEMA, "method": method, "rows": rows})
    if fmt == "text":
        return "".join(f"p({r['n']}) = {r['p']}\n" for r in rows)
    return complexity_csv(rows)


def _op_returns(cfg: ExperimentConfig, fmt: str) -> str:
    w = _word(cfg)
    method = _method(cfg, ("geometric", "scan", "both"))
    reports = []
    if method in ("geometric", "both"):
        T, start = cfg.source.geometric()
        reports.append(return_words_geometric(T, w, start, cfg.param("cap")))
    if method in ("scan", "both"):
        expected = cfg.param("expected")
        if expected is None and reports:
            expected = reports[0].count
        reports.append(return_words_scan(cfg.source.sequence(), w, cfg.param("budget"), expected))
    if fmt == "text":
        return "".join(f"{r.method}: {' '.join(r.returns)}\n" for r in reports)
    if len(reports) == 1:
        return _dump(reports[0].to_json())
    geo, scan = reports
    return _dump(
        {
            "schema": SCHEMA,
            "target": w,
            "agree": geo.same_returns(scan),
            "reports": [geo.to_json(), scan.to_json()],
        }
    )


def _op_audit(cfg: ExperimentConfig, fmt: str) -> str:
    max_len = cfg.param("max_len", 5)
    method = _method(cfg, ("both", "scan"))
    if method == "both":
        T, start = cfg.source.geometric()
        rows = verify_property_Rk(
            T, max_len, start, cfg.param("budget"), cfg.param("horizon"), cfg.param("cap")
        )
        expected = T.k
    else:
        expected = cfg.param("expected")
        rows = audit_scan(cfg.source.sequence(), max_len, cfg.param("budget"), expected)
    if fmt == "json":
        agree = [r.agree for r in rows]
        return _dump(
            {
                "schema": SCHEMA,
                "method": method,
                "expected": expected,
                "all_agree": None if None in agree else all(agree),
                "rows": [r.to_json() for r in rows],
            }
        )
    if fmt == "text":
        bad = [r for r in rows if r.agree is False]
        lines = [f"{len(rows)} factors audited, {len(bad)} disagreements"]
        lines += [f"  {r.word}: scan {r.count_scan}, geometric {r.count_geom}" for r in bad]
        return "\n".join(lines) + "\n"
    return audit_csv(rows)


def _op_induce(cfg: ExperimentConfig, fmt: str) -> str:
    w = _word(cfg)
    T, _ = cfg.source.geometric()
    base = factor_interval(T, w)
    if base is None:
        raise NoOccurrence(f"{w!r} is not a factor")
    part = induced_partition(T, base, cfg.param("cap"))
    doc = part.to_json()
    doc["target"] = w
    if fmt == "text":
        lines = [f"I_{w} = {base}"]
        lines += [f"  {p}  r = {r}" for p, r in zip(part.pieces, part.return_times)]
        return "\n".join(lines) + "\n"
    return _dump(doc)


def _op_keane(cfg: ExperimentConfig, fmt: str) -> str:
    T, _ = cfg.source.geometric()
    rep = keane_check(T, cfg.param("horizon"))
    if fmt == "text":
        return f"{rep.verdict.value} (horizon {rep.horizon}) {rep.witness or ''}\n"
    doc = {"schema": SCHEMA, **rep.to_json()}
    return _dump(doc)


def _op_factor_test(cfg: ExperimentConfig, fmt: str) -> str:
    if cfg.source.kind != "rotation":
        raise ConfigError("factor-test needs a rotation source")
    res = rotation_factor_test(cfg.source.obj, _word(cfg))
    if fmt == "text":
        return f"{res.word}: {'factor' if res.is_factor else 'not a factor'}\n"
    return _dump({"schema": SCHEMA, **res.to_json()})


_OPS = {
    "generate": _op_generate,
    "factors": _op_factors,
    "complexity": _op_complexity,
    "returns": _op_returns,
    "audit": _op_audit,
    "induce": _op_induce,
    "keane": _op_keane,
    "factor-test": _op_factor_test,
}


def _method(cfg: ExperimentConfig, allowed: tuple[str, ...]) -> str:
    method = cfg.param("method", "auto")
    if method == "auto":
        return allowed[0] if cfg.source.has_geometry else "scan"
    if method not in allowed:
        raise ConfigError(f"method must be one of {allowed}, got {method!r}")
    return method


def _word(cfg: ExperimentConfig) -> str:
    w = cfg.param("word")
    if not w:
        raise ConfigError("--word is required and must be nonempty")
    return w


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def run(cfg: ExperimentConfig, stream: TextIO | None = None) -> int:
    """Execute one experiment; returns the exit status."""
    stream = stream or sys.stdout
    params = dict(cfg.params)
    params.setdefault("horizon", default_horizon())
    params.setdefault("budget", 100_000)
    params.setdefault("cap", DEFAULT_CAP)
    cfg = ExperimentConfig(cfg.source, cfg.operation, params, cfg.format, cfg.output)
    fmt = cfg.format or _DEFAULT_FORMAT.get(cfg.operation, "json")
    try:
        text = _OPS[cfg.operation](cfg, fmt)
    except DomainError as exc:
        stream.write(_dump({"schema": SCHEMA, "error": exc.code, "message": str(exc)}))
        return 1
    except ValueError as exc:
        # malformed user input reaching the library, e.g. foreign letters in --word
        code = getattr(exc, "code", "invalid-input")
        stream.write(_dump({"schema": SCHEMA, "error": code, "message": str(exc)}))
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)
    return 0


# -- argument parsing -------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--config", metavar="FILE", help="JSON source or experiment file")
    p.add_argument("--horizon", type=int, help="Keane check horizon (env RETWORDS_HORIZON)")
    p.add_argument("--budget", type=int, help="scanned prefix length (default 100000)")
    p.add_argument("--cap", type=int, help="step cap for orbit searches")
    p.add_argument("--format", choices=("json", "csv", "text"))
    p.add_argument("--seedpoint", metavar="X", help="start point x0, e.g. '1/2 sqrt(2) - 1/2'")
    p.add_argument("--output", "-o", metavar="PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="retwords", description="Return words of IET and rotation codings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="operation", required=True)
    common = [_common()]

    p = sub.add_parser("generate", parents=common, help="print a prefix of the word")
    p.add_argument("--length", type=int, help="prefix length (default 100)")

    p = sub.add_parser("factors", parents=common, help="list factors of one length")
    p.add_argument("--n", type=int, help="factor length (default 1)")
    p.add_argument("--method", choices=("auto", "geometric", "scan"), help="default auto")

    p = sub.add_parser("complexity", parents=common, help="complexity p(n) for n = 1..max-n")
    p.add_argument("--max-n", type=int, help="largest n (default 10)")
    p.add_argument("--method", choices=("auto", "geometric", "scan"), help="default auto")
    p.add_argument("--expected-k", type=int, help="compare a scan with n(k-1)+1")

    p = sub.add_parser("returns", parents=common, help="return words over one factor")
    p.add_argument("--word", required=True)
    p.add_argument("--method", choices=("auto", "geometric", "scan", "both"), help="default auto")
    p.add_argument("--expected", type=int, help="return-word count that certifies a scan")

    p = sub.add_parser("audit", parents=common, help="return-word counts over all short factors")
    p.add_argument("--max-len", type=int, help="longest factor audited (default 5)")
    p.add_argument("--method", choices=("auto", "both", "scan"), help="default auto")
    p.add_argument("--expected", type=int, help="expected count for scan-only audits")

    p = sub.add_parser("induce", parents=common, help="first-return partition of I_w")
    p.add_argument("--word", required=True)

    sub.add_parser("keane", parents=common, help="finite-horizon Keane regularity check")

    p = sub.add_parser("factor-test", parents=common, help="arc criterion for rotation codings")
    p.add_argument("--word", required=True)
    return parser


def _load_config(path: str) -> tuple[Source, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "source" in doc:
        return parse_source(doc["source"]), dict(doc.get("params", {}))
    return parse_source(doc), {}


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.preset:
        source, params = preset(args.preset), {}
    else:
        source, params = _load_config(args.config)
    if args.seedpoint is not None:
        try:
            x = as_scalar(args.seedpoint)
        except ValueError as exc:
            raise ConfigError(f"--seedpoint: {exc}") from None
        try:
            source = source.with_start(x)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    for key in ("n", "length", "max_n", "max_len", "word", "method", "expected", "expected_k",
                "budget", "horizon", "cap"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    return ExperimentConfig(source, args.operation, params, args.format, args.output)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except ConfigError as exc:
        sys.stdout.write(_dump({"schema": SCHEMA, "error": exc.code, "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
