"""Command-line entry point.

    gmacdonald compute --rank 2 --degree 2 --weights symbolic --out basis.json
    gmacdonald verify five-term --rank 1 --degree 3 --mode exact
    gmacdonald cache list

Exit codes: 0 success, 1 verified failure, 2 bad arguments, 3 resonant
weights, 4 term budget exceeded, 5 filesystem error.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import os
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__
from .coeff import BudgetExceeded, Coeff, ResonanceError, reset_budget, set_budget

SCHEMA = "v1"
ENV_PREFIX = "GMACDONALD_"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESONANCE, EXIT_BUDGET, EXIT_FS = 0, 1, 2, 3, 4, 5

_RATIONAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_CONFIG_KEYS = {"rank", "degree", "weights", "lambda", "mode", "seed", "jobs", "budget",
                "cache_dir", "out", "format", "no_cache", "timings"}
_DEFAULTS = {"rank": 1, "degree": 2, "weights": "symbolic", "mode": "exact", "jobs": 1,
             "format": "json", "no_cache": False, "timings": False}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument parsing

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags take precedence")
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--format", choices=["json", "table"])
    common.add_argument("--out", help="write the result here instead of stdout")

    work = argparse.ArgumentParser(add_help=False)
    work.add_argument("--rank", type=int)
    work.add_argument("--degree", type=int)
    work.add_argument("--budget", type=int, help="maximum number of terms in one coefficient")
    work.add_argument("--jobs", type=int)

    p = argparse.ArgumentParser(prog="gmacdonald", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common, work], help="build a basis or one expansion")
    c.add_argument("--weights", help="'symbolic' or comma-separated rationals such as 2,1/3")
    c.add_argument("--lambda", dest="lam",
                   help="multipartition, components separated by '|', parts by ',' (e.g. 2,1|1)")
    c.add_argument("--no-cache", dest="no_cache", action="store_const", const=True)

    v = sub.add_parser("verify", parents=[common, work], help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--mode", choices=["exact", "random"])
    v.add_argument("--seed", action="append", help="repeat or comma-separate for several seeds")
    v.add_argument("--timings", action="store_const", const=True,
                   help="include per-case timings in the report")

    k = sub.add_parser("cache", parents=[common], help="inspect or prune the basis cache")
    k.add_argument("action", choices=["list", "clear", "gc"])
    return p


def _read_config(path: str) -> dict:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = val
    return out


def _settle(args: argparse.Namespace) -> argparse.Namespace:
    """Merge flags over config file over environment over defaults."""
    conf = _read_config(args.config) if getattr(args, "config", None) else {}
    if "lambda" in conf:
        conf["lam"] = conf.pop("lambda")
    env = {}
    if os.environ.get(ENV_PREFIX + "CACHE_DIR"):
        env["cache_dir"] = os.environ[ENV_PREFIX + "CACHE_DIR"]
    if os.environ.get(ENV_PREFIX + "JOBS"):
        env["jobs"] = os.environ[ENV_PREFIX + "JOBS"]
    for layer in (conf, env, _DEFAULTS):
        for key, val in layer.items():
            if hasattr(args, key) and getattr(args, key) is None:
                setattr(args, key, val)
    try:
        for key in ("rank", "degree", "jobs", "budget"):
            if getattr(args, key, None) is not None:
                setattr(args, key, int(getattr(args, key)))
        for key in ("no_cache", "timings"):
            if isinstance(getattr(args, key, None), str):
                setattr(args, key, getattr(args, key).lower() in ("1", "true", "yes", "on"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if getattr(args, "cache_dir", None) is None:
        args.cache_dir = str(Path.home() / ".cache" / "gmacdonald")
    if getattr(args, "format", None) not in (None, "json", "table"):
        raise UsageError(f"format must be json or table, got {args.format!r}")
    if getattr(args, "degree", 0) is not None and getattr(args, "degree", 0) < 0:
        raise UsageError("degree must be non-negative")
    if getattr(args, "rank", 1) is not None and getattr(args, "rank", 1) < 1:
        raise UsageError("rank must be positive")
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        raise UsageError("jobs must be positive")
    if getattr(args, "budget", None) is not None and args.budget < 1:
        raise UsageError("budget must be positive")
    return args


def parse_weights(text: str, rank: int):
    """'symbolic' gives u1..ur; otherwise exactly ``rank`` exact rationals."""
    from .operators import WeightVector
    if text.strip().lower() == "symbolic":
        return WeightVector.symbolic(rank)
    items = [s.strip() for s in text.split(",")]
    if len(items) != rank:
        raise UsageError(f"{len(items)} weights given for rank {rank}")
    vals = []
    for s in items:
        if not _RATIONAL.match(s):
            raise UsageError(f"weight {s!r} is not an exact rational (floats are not accepted)")
        f = Fraction(s)
        if f == 0:
            raise UsageError("weights must be nonzero")
        vals.append(Coeff(f))
    return WeightVector(vals)


def parse_lambda(text: str, rank: int):
    from .partitions import MultiPartition
    comps = text.split("|")
    if len(comps) != rank:
        raise UsageError(f"--lambda has {len(comps)} components for rank {rank}")
    try:
        parts = [[int(x) for x in c.split(",") if x.strip()] for c in comps]
        return MultiPartition(parts)
    except ValueError as exc:
        raise UsageError(f"bad --lambda {text!r}: {exc}") from exc


# --------------------------------------------------------------------------
# output and cache

def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def cache_key(doc: dict) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def _emit(args, text: str) -> None:
    if args.out:
        atomic_write(Path(args.out), text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# --------------------------------------------------------------------------
# commands

def _compute_doc(args) -> dict:
    from .gmp import build_gmp
    from .partitions import MultiPartition
    u = parse_weights(args.weights, args.rank)
    if args.lam:
        lam = parse_lambda(args.lam, args.rank)
        if lam.size > args.degree:
            raise UsageError(f"|lambda| = {lam.size} exceeds --degree {args.degree}")
        B = build_gmp(args.rank, u, max(lam.size, 0))
        f = B.element(MultiPartition(lam))
        return {"kind": "element", "rank": args.rank, "degree": lam.size, "lambda": lam.to_json(),
                "weights": [w.to_json() for w in u], "expansion": f.to_json(),
                "text": str(f)}
    B = build_gmp(args.rank, u, args.degree)
    return {"kind": "basis", **B.to_json()}


def _power_text(a: int, part) -> str:
    """p_(2,1,1) in alphabet a -> 'p2[a] p1[a]^2'."""
    out = []
    for k in sorted(set(part), reverse=True):
        m = part.count(k)
        out.append(f"p{k}[{a + 1}]" + (f"^{m}" if m > 1 else ""))
    return " ".join(out)


def _table_compute(doc: dict) -> str:
    from .coeff import Coeff
    from .symfunc import SymFunc
    if doc["kind"] == "element":
        f = SymFunc.from_json(doc["expansion"])
        rows = [f"P_{doc['lambda']} ="]
        for idx in sorted(f.terms, key=lambda i: (sum(map(sum, i)), i)):
            mono = " ".join(_power_text(a, part) for a, part in enumerate(idx) if part) or "1"
            rows.append(f"  {mono:<24} {f.terms[idx]}")
        return "\n".join(rows) + "\n"
    rows = [f"{'lambda':<20} {'mu':<20} coefficient"]
    for e in doc["entries"]:
        for x in e["expansion"]:
            rows.append(f"{json.dumps(e['lambda']):<20} {json.dumps(x['mu']):<20} {Coeff.from_json(x['coeff'])}")
    return "\n".join(rows) + "\n"


def cmd_compute(args) -> int:
    request = {"cmd": "compute", "rank": args.rank, "degree": args.degree, "weights": args.weights.strip(),
               "lambda": args.lam, "version": __version__, "schema": SCHEMA}
    key = cache_key(request)
    entry = Path(args.cache_dir) / f"{key}.json"
    doc = None
    if not args.no_cache and entry.exists():
        try:
            stored = json.loads(entry.read_text())
            if stored.get("schema") == SCHEMA and stored.get("version") == __version__:
                doc = stored["result"]
                _note(f"cache hit {key[:16]}")
        except (OSError, ValueError, KeyError):
            doc = None
    if doc is None:
        doc = {"schema": SCHEMA, "version": __version__, **_compute_doc(args)}
        if not args.no_cache:
            atomic_write(entry, dumps({"schema": SCHEMA, "version": __version__, "request": request,
                                       "result": doc}))
            _note(f"cache store {key[:16]}")
    _emit(args, dumps(doc) if args.format == "json" else _table_compute(doc))
    return EXIT_OK


def _seeds(args) -> list[int]:
    out = []
    for s in args.seed or []:
        for part in str(s).split(","):
            if part.strip():
                try:
                    out.append(int(part))
                except ValueError as exc:
                    raise UsageError(f"seed {part!r} is not an integer") from exc
    return out


def _table_report(rep) -> str:
    rows = [f"suite {rep.suite}  rank {rep.rank}  degree {rep.degree}  mode {rep.mode}"
            + (f"  seeds {','.join(map(str, rep.seeds))}" if rep.seeds else "")]
    for c in rep.cases:
        rows.append(f"{c.status:<5} {c.id}")
    fails = len(rep.failures)
    rows.append(f"{len(rep.cases) - fails} passed, {fails} failed")
    if fails:
        rows.append("first counterexample: " + json.dumps(rep.failures[0].counterexample, sort_keys=True))
    return "\n".join(rows) + "\n"


def cmd_verify(args) -> int:
    from .verify import SuiteSpec, run_suite
    seeds = _seeds(args)
    if args.mode == "random" and not seeds:
        seeds = [0]
    spec = SuiteSpec(args.suite, args.rank, args.degree, args.mode, tuple(seeds), args.budget, args.jobs)
    try:
        spec = spec.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = run_suite(spec)
    doc = {"schema": SCHEMA, **rep.to_json(timings=args.timings)}
    _emit(args, dumps(doc) if args.format == "json" else _table_report(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _entries(cache_dir: Path):
    if not cache_dir.exists():
        return []
    return sorted(p for p in cache_dir.iterdir() if p.suffix == ".json" and not p.name.startswith("."))


def cmd_cache(args) -> int:
    d = Path(args.cache_dir)
    if args.action == "list":
        rows = []
        for p in _entries(d):
            try:
                meta = json.loads(p.read_text())
                req = meta.get("request", {})
                rows.append({"key": p.stem, "version": meta.get("version"), "rank": req.get("rank"),
                             "degree": req.get("degree"), "weights": req.get("weights"),
                             "lambda": req.get("lambda"), "bytes": p.stat().st_size})
            except ValueError:
                rows.append({"key": p.stem, "version": None, "bytes": p.stat().st_size})
        if args.format == "table":
            lines = [f"{'key':<18} {'version':<8} {'rank':>4} {'degree':>6} weights"]
            lines += [f"{r['key'][:16]:<18} {str(r.get('version')):<8} {str(r.get('rank')):>4} "
                      f"{str(r.get('degree')):>6} {r.get('weights')}" for r in rows]
            _emit(args, "\n".join(lines) + "\n")
        else:
            _emit(args, dumps({"schema": SCHEMA, "cache_dir": str(d), "entries": rows}))
        return EXIT_OK
    removed = []
    for p in (list(d.iterdir()) if d.exists() else []):
        if p.is_dir():
            continue
        drop = args.action == "clear" or p.name.startswith(".tmp-")
        if not drop and p.suffix == ".json":
            try:
                meta = json.loads(p.read_text())
                drop = meta.get("version") != __version__ or meta.get("schema") != SCHEMA
            except ValueError:
                drop = True
        if drop:
            p.unlink()
            removed.append(p.name)
    _note(f"removed {len(removed)} entr{'y' if len(removed) == 1 else 'ies'}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    token = None
    try:
        args = _settle(args)
        if getattr(args, "budget", None) is not None:
            token = set_budget(args.budget)
        cmd = {"compute": cmd_compute, "verify": cmd_verify, "cache": cmd_cache}[args.command]
        return cmd(args)
    except UsageError as exc:
        _note(f"gmacdonald: error: {exc}")
        return EXIT_USAGE
    except ResonanceError as exc:
        _note(f"gmacdonald: resonant specialization: {exc}")
        return EXIT_RESONANCE
    except BudgetExceeded as exc:
        _note(f"gmacdonald: {exc}; try --mode random or a larger --budget")
        return EXIT_BUDGET
    except OSError as exc:
        _note(f"gmacdonald: filesystem error: {exc}")
        return EXIT_FS
    finally:
        if token is not None:
            reset_budget(token)


if __name__ == "__main__":
    sys.exit(main())
