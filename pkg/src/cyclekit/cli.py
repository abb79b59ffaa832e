"""Command-line frontend: one JSON document per invocation on stdout, logs on stderr."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Any, Callable, Sequence

from . import __version__
from .connect import connect_avoiding, contact_profile
from .errors import CapacityError, DomainError, NotFound, Unknown
from .expander import (ExpanderCertificate, ExpansionParams, check_expander, extract_bipartite_expander,
                       extract_expander, regime_flags)
from .gadget import (VertexExpansion, chain_adjusters, exact_length_path_oracle, exact_length_route,
                     robust_constants, validate_adjuster)
from .generators import generate
from .graph import Graph
from .io import graph_to_dict, read_graph, to_dot
from .spectrum import (CycleSpectrum, cycle_spectrum_exact, cycle_spectrum_lower, even_interval_report,
                       growth_report, harmonic_sum, hits_sequence, odd_interval_report, odd_runs,
                       parse_sequence, property_P_check, residue_spectrum)
from .subdivision import (construct_balanced_subdivision_expander, find_balanced_subdivision,
                          validate_subdivision)

log = logging.getLogger("cyclekit")

ENV_PREFIX = "CYCLEKIT_"
EXIT_INPUT = 2
EXIT_CAPACITY = 3


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    params: dict[str, Any] = field(default_factory=dict)
    fmt: str = "json"
    seed: int = 0


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


def _verdict(res: Any) -> str:
    if isinstance(res, NotFound):
        return "not_found"
    if isinstance(res, Unknown):
        return "unknown"
    return "found"


def _miss(res: NotFound | Unknown) -> dict[str, Any]:
    out = {"verdict": _verdict(res), "reason": res.reason}
    if isinstance(res, NotFound):
        out["proved"] = res.proved
        if res.info:
            out["info"] = _plain(res.info)
    else:
        out["nodes"] = res.nodes
    return out


def _plain(obj: Any) -> Any:
    """Make results JSON-safe."""
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj


# -- graph input ---------------------------------------------------------------------------


def load_graph(args: argparse.Namespace) -> tuple[Graph, str]:
    if args.input and args.family:
        raise DomainError("give either --input or --family, not both")
    if args.input:
        return read_graph(args.input), args.input
    if args.family:
        fam, *params = args.family
        return generate(fam, *params, seed=args.seed), " ".join(args.family)
    raise DomainError("no graph given: use --input PATH or --family NAME [PARAMS...]")


# -- commands ----------------------------------------------------------------------------


def cmd_spectrum(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    if a.exact or (a.budget is None and G.n <= a.cap):
        S: CycleSpectrum = cycle_spectrum_exact(G, cap=a.cap)
    else:
        S = cycle_spectrum_lower(G, budget=a.budget or 200_000, seed=a.seed)
    out = S.to_dict()
    out["missing_evens"] = even_interval_report(S)["missing"]
    out["odd_runs"] = [list(r) for r in odd_runs(S)]
    out["harmonic_sum"] = harmonic_sum(S)
    out["even_interval"] = even_interval_report(S)
    odd = odd_interval_report(S)
    out["odd_interval"] = None if odd is None else {**odd, "ratio": str(odd["ratio"])}
    if a.sequence:
        seq = parse_sequence(a.sequence)
        out["sequence_hits"] = {"sequence": a.sequence, **hits_sequence(S, seq),
                                "growth": growth_report(seq, max(S.n, 4))}
    if a.residue:
        r = _ints(a.residue)
        if len(r) != 2:
            raise DomainError("--residue wants a,b")
        out["residue"] = {"a": r[0], "b": r[1], "lengths": sorted(residue_spectrum(S, r[0], r[1]))}
    out["verdict"] = "found"
    return out


def _params(a: argparse.Namespace) -> ExpansionParams:
    if a.k is not None:
        return ExpansionParams(a.eps1, a.k)
    if a.d is None:
        raise DomainError("give --k or --d (with --eps2)")
    return ExpansionParams.scaled(a.eps1, a.eps2, a.d)


def cmd_expander_check(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    p = _params(a)
    res = check_expander(G, p, a.mode, budget=a.budget or 10_000, seed=a.seed, cap=a.cap)
    out = {"params": p.to_dict(), "mode": a.mode, "regime_flags": regime_flags(G.n, p)}
    if isinstance(res, ExpanderCertificate):
        out.update(verdict="expander", proved=a.mode == "exhaustive", certificate=res.to_dict())
    else:
        out.update(verdict="witness", witness=res.to_dict())
    return out


def cmd_extract(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    if a.bipartite:
        if a.d is None:
            raise DomainError("--bipartite needs --d")
        ext = extract_bipartite_expander(G, a.eps1, a.eps2, a.d, seed=a.seed, cap=a.cap,
                                         budget=a.budget or 200)
    else:
        ext = extract_expander(G, _params(a), cap=a.cap, budget=a.budget or 200, seed=a.seed)
    out = ext.to_dict()
    out["subgraph"] = graph_to_dict(ext.graph)
    out["verdict"] = "found"
    return out


def cmd_connect(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    A, B, W = _ints(a.A), _ints(a.B), _ints(a.W)
    res = connect_avoiding(G, A, B, W)
    if not res:
        return _miss(res)
    out = {"verdict": "found", "path": list(res.vertices), "length": res.length}
    if a.profile_depth:
        out["contact_profile"] = contact_profile(G, A, W, a.profile_depth).to_dict()
    return out


def cmd_exact_path(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    x, y, ell = a.source, a.target, a.length
    U = _ints(a.avoid)
    out: dict[str, Any] = {"from": x, "to": y, "length": ell, "backend": a.backend}
    cons = orc = None
    if a.backend in ("constructive", "both"):
        try:
            route, cons = exact_length_route(G, U, VertexExpansion.bare(x), VertexExpansion.bare(y), ell,
                                             seed=a.seed)
        except DomainError as exc:
            if "parity" not in str(exc):
                raise
            route, cons = "parity", NotFound("parity", proved=True)
        out["constructive"] = ({"verdict": "found", "route": route, "path": list(cons.vertices)}
                               if cons else {**_miss(cons), "route": route})
    if a.backend in ("oracle", "both"):
        orc = exact_length_path_oracle(G, x, y, ell, budget=a.budget or 2_000_000, avoid=U, cap=a.cap)
        out["oracle"] = {"verdict": "found", "path": list(orc.vertices)} if orc else _miss(orc)
    if a.backend == "both":
        decided = not isinstance(orc, Unknown)
        contradiction = bool(cons) and isinstance(orc, NotFound) and orc.proved
        out["agreement"] = (not contradiction) and (not decided or bool(cons) == bool(orc))
        out["contradiction"] = contradiction
    final = cons if a.backend == "constructive" else orc if a.backend == "oracle" else (cons or orc)
    out["verdict"] = _verdict(final)
    if final:
        out["path"] = list(final.vertices)
    return out


def cmd_adjuster(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    m = a.m if a.m is not None else G.n
    res = chain_adjusters(G, _ints(a.avoid), a.D, m, a.r, seed=a.seed)
    diag = {"diagnostics": robust_constants(G.n, m, a.D)}
    if not res:
        return {**_miss(res), **diag}
    return {"verdict": "found", "adjuster": res.to_dict(), "validation": validate_adjuster(G, res), **diag}


def cmd_tk(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    if a.mode == "search":
        res = find_balanced_subdivision(G, a.k, (a.ell_min, a.ell_max), budget=a.budget or 1_000_000)
    else:
        res = None
        for ell in range(a.ell_min, a.ell_max + 1):
            if ell % 2:
                continue
            res = construct_balanced_subdivision_expander(G, a.k, ell, alpha=a.alpha, seed=a.seed)
            if res:
                break
        if res is None:
            res = NotFound("no_even_ell_in_range", proved=True)
    if not res:
        return _miss(res)
    return {"verdict": "found", "subdivision": res.to_dict(), "validation": validate_subdivision(G, res),
            "_paths": [list(p) for p in res.paths.values()]}


def cmd_property_p(G: Graph, a: argparse.Namespace) -> dict[str, Any]:
    rep = property_P_check(G, a.ell, a.upper, cap=a.cap)
    return {"verdict": "holds" if rep["holds"] else "fails", **rep}


COMMANDS: dict[str, Callable[[Graph, argparse.Namespace], dict[str, Any]]] = {
    "spectrum": cmd_spectrum,
    "expander-check": cmd_expander_check,
    "extract": cmd_extract,
    "connect": cmd_connect,
    "exact-path": cmd_exact_path,
    "adjuster": cmd_adjuster,
    "tk": cmd_tk,
    "property-p": cmd_property_p,
}


# -- sweep -------------------------------------------------------------------------------


def cell_seed(master: int, index: int) -> int:
    return (master * 1_000_003 + index * 7919) % (2 ** 31)


def read_corpus(path: str) -> list[list[str]]:
    """One family spec per line, e.g. ``complete_bipartite 4 4``; ``#`` comments."""
    out = []
    for raw in FsPath(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    if not out:
        raise DomainError(f"{path}: empty corpus")
    return out


def run_sweep(a: argparse.Namespace, parser: argparse.ArgumentParser) -> str:
    corpus = read_corpus(a.corpus) if a.corpus else [shlex.split(s) for s in a.graphs]
    if not corpus:
        raise DomainError("sweep needs --corpus FILE or --graphs")
    commands = [c.strip() for c in a.commands.split(",") if c.strip()]
    for c in commands:
        if c not in COMMANDS:
            raise DomainError(f"unknown sweep command {c!r}")
    cells = [(i * len(commands) + j, g, c) for i, g in enumerate(corpus) for j, c in enumerate(commands)]

    def run_cell(cell: tuple[int, list[str], str]) -> dict[str, Any]:
        idx, fam, command = cell
        seed = cell_seed(a.seed, idx)
        argv = [command, "--family", *fam, "--seed", str(seed), *shlex.split(a.cell_args.get(command, ""))]
        row = {"graph": " ".join(fam), "command": command, "seed": seed}
        try:
            sub = parser.parse_args(argv)
            G, _ = load_graph(sub)
            res = COMMANDS[command](G, sub)
            row["verdict"] = res.get("verdict", "found")
            row["summary"] = _summary(command, res)
        except CapacityError as exc:
            row.update(verdict="capacity", summary=str(exc))
        except (DomainError, SystemExit) as exc:
            row.update(verdict="error", summary=str(exc))
        return row

    with ThreadPoolExecutor(max_workers=max(1, a.workers)) as pool:
        rows = list(pool.map(run_cell, cells))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["graph", "command", "seed", "verdict", "summary"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _summary(command: str, res: dict[str, Any]) -> str:
    if command == "spectrum":
        return " ".join(map(str, res["lengths"]))
    if "path" in res:
        return " ".join(map(str, res["path"]))
    if command == "tk" and "subdivision" in res:
        return f"ell={res['subdivision']['ell']}"
    return res.get("reason", "")


# -- parser ------------------------------------------------------------------------------


def _graph_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="edge-list or JSON graph file")
    p.add_argument("--family", nargs="+", metavar="ARG", help="named family and its parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--cap", type=int, default=24)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")


def _expander_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps1", type=float, default=0.1)
    p.add_argument("--eps2", type=float, default=0.1)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--d", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclekit", description="Cycle lengths, expanders and subdivisions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key=value file mirroring long options")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="cycle-length spectrum and derived reports")
    _graph_opts(p)
    p.add_argument("--exact", action="store_true", help="force the subset DP")
    p.add_argument("--sequence", help="pow2, arith:a,d, geom:a,C or list:x,y,... (optional /even or /odd)")
    p.add_argument("--residue", help="a,b: lengths congruent to a mod b")

    p = sub.add_parser("expander-check", help="certify or refute expansion")
    _graph_opts(p)
    _expander_opts(p)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")

    p = sub.add_parser("extract", help="dense expander subgraph")
    _graph_opts(p)
    _expander_opts(p)
    p.add_argument("--bipartite", action="store_true")

    p = sub.add_parser("connect", help="shortest A-B path avoiding W")
    _graph_opts(p)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--W", default="")
    p.add_argument("--profile-depth", type=int, default=0)

    p = sub.add_parser("exact-path", help="x,y-path of an exact length")
    _graph_opts(p)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--avoid", default="")
    p.add_argument("--backend", choices=("constructive", "oracle", "both"), default="constructive")
    p.set_defaults(cap=40)

    p = sub.add_parser("adjuster", help="capacity-r adjuster")
    _graph_opts(p)
    p.add_argument("--D", type=int, default=1)
    p.add_argument("--m", type=float, default=None)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--avoid", default="")

    p = sub.add_parser("tk", help="balanced clique subdivision")
    _graph_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell-min", type=int, default=1)
    p.add_argument("--ell-max", type=int, default=3)
    p.add_argument("--mode", choices=("search", "construct"), default="search")
    p.add_argument("--alpha", type=float, default=1.2)

    p = sub.add_parser("property-p", help="all parity-compatible path lengths between every pair")
    _graph_opts(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--upper", type=int, required=True)
    p.set_defaults(cap=12)

    p = sub.add_parser("sweep", help="corpus x command matrix as CSV")
    p.add_argument("--corpus", help="file with one family spec per line")
    p.add_argument("--graphs", nargs="*", default=[], help="family specs, each quoted")
    p.add_argument("--commands", default="spectrum")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cell-args", action="append", default=[], metavar="CMD=ARGS",
                   help="extra arguments for one command, e.g. 'tk=--k 3'")
    p.add_argument("--output")
    return parser


def load_config(path: str | None) -> dict[str, str]:
    """``key=value`` lines from the file, then ``CYCLEKIT_KEY`` variables on top."""
    cfg: dict[str, str] = {}
    if path:
        for lineno, raw in enumerate(FsPath(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            cfg[k.strip().replace("-", "_")] = v.strip()
    for k, v in os.environ.items():
        if k.startswith(ENV_PREFIX) and k != ENV_PREFIX + "CONFIG":
            cfg[k[len(ENV_PREFIX):].lower()] = v
    return cfg


def _apply_config(parser: argparse.ArgumentParser, command: str, cfg: dict[str, str]) -> None:
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    known = {act.dest: act for act in sub._actions}
    for k, v in cfg.items():
        act = known.get(k)
        if act is None or k in ("help",):
            continue
        if isinstance(act, argparse._StoreTrueAction):
            sub.set_defaults(**{k: v.lower() in ("1", "true", "yes", "on")})
        elif act.nargs in ("+", "*"):
            sub.set_defaults(**{k: v.split()})
        else:
            sub.set_defaults(**{k: v})  # strings pass through the option's type


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=os.environ.get(ENV_PREFIX + "CONFIG"))
    pre.add_argument("command", nargs="?")
    known, _ = pre.parse_known_args(argv)
    try:
        cfg = load_config(known.config)
    except (OSError, DomainError) as exc:
        print(f"cyclekit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args = parser.parse_args(argv)
    if cfg:
        _apply_config(parser, args.command, cfg)
        args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "sweep":
            cell_args = {}
            for item in args.cell_args:
                cmd, _, rest = item.partition("=")
                cell_args[cmd] = rest
            args.cell_args = cell_args
            text = run_sweep(args, parser)
        else:
            G, source = load_graph(args)
            log.info("loaded %s: n=%d, m=%d", source, G.n, G.edge_count)
            res = COMMANDS[args.command](G, args)
            paths = res.pop("_paths", [])
            if args.format == "dot":
                if "path" in res:
                    paths = [res["path"]]
                text = to_dot(G, paths=paths)
            else:
                report = {"command": args.command, "graph": source, "n": G.n, "edges": G.edge_count,
                          "seed": args.seed, **res}
                text = json.dumps(_plain(report), sort_keys=True) + "\n"
    except CapacityError as exc:
        print(f"cyclekit: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, OSError, UnicodeDecodeError) as exc:
        print(f"cyclekit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "output", None):
        FsPath(args.output).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
