"""Command-line interface: ``jcmap <command> ...``.

Every command that writes files also writes a run manifest
(``<output>.manifest.json``, or ``manifest.json`` inside an output directory)
recording the argument vector, effective parameters, seeds and SHA-256
digests of inputs and outputs. ``jcmap replay <manifest>`` re-runs it.

Options may also come from ``--config FILE`` holding ``key = value`` lines
(keys are long option names, dashes or underscores). Command-line flags
override the file, which overrides built-in defaults.

Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .clustering import ClusterConfig, cluster
from .graph import (
    CitationGraph,
    clean,
    connected_components,
    induced_subgraph,
    largest_component,
    remove_loops,
    symmetrize,
)
from .hierarchy import DecomposeConfig, decompose, tree_to_partition
from .layout import kamada_kawai, vos_layout
from .netstats import network_stats
from .partition import Partition
from .partition_stats import association, default_seeds, intersect, stability
from .synth import PlantedSpec, planted_partition
from .vosio import (
    FormatError,
    export_submatrix_csv,
    ingest_csv,
    parse_clu,
    parse_net,
    parse_vos_map,
    write_clu,
    write_net,
    write_vos_map,
    write_vos_network,
)

log = logging.getLogger("jcmap")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def load_graph(path: str) -> CitationGraph:
    text = _read(path)
    if path.lower().endswith(".csv"):
        g, _ = ingest_csv(text)
        return g
    return parse_net(text)


def _write(path: str | Path, text: str, outputs: list[Path]) -> None:
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True)
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    outputs.append(p)


def _sym(g: CitationGraph):
    return symmetrize(remove_loops(g)[0])


# --- commands -------------------------------------------------------------


def cmd_stats(args, outputs):
    g = load_graph(args.input)
    g, loops = remove_loops(g)
    st = network_stats(g)
    comps = connected_components(g)
    text = st.key_values() if args.kv else st.report()
    if args.kv:
        text += f"loops_removed={loops}\ncomponents={len(comps)}\nlargest_component={len(comps[0]) if comps else 0}\n"
    else:
        text += f"Loops removed           {loops}\nComponents              {len(comps)}\n"
        text += f"Largest component       {len(comps[0]) if comps else 0}\n"
        sizes = [len(c) for c in comps]
        if len(sizes) > 1:
            text += "Component sizes         " + " ".join(map(str, sizes[:20]))
            text += " ...\n" if len(sizes) > 20 else "\n"
    _emit(args, text, outputs)


def cmd_clean(args, outputs):
    g = load_graph(args.input)
    g, report = clean(g, args.min_weight, args.keep_loops)
    _write(args.output, write_net(g), outputs)
    print(
        f"loops removed {report.loops_removed}, arcs removed by threshold "
        f"{report.arcs_removed_by_threshold}, isolated nodes {report.nodes_isolated_after_cleaning}"
    )


def cmd_component(args, outputs):
    g = load_graph(args.input)
    comps = connected_components(g)
    sub, members = largest_component(g)
    _write(args.output, write_net(CitationGraph(sub.labels, sub.arcs)), outputs)
    print(f"largest component {len(members)} of {g.n} nodes ({len(comps)} components)")


def cmd_cluster(args, outputs):
    sym = _sym(load_graph(args.input))
    p, q = cluster(sym, ClusterConfig(args.method, args.seed, args.resolution, args.restarts))
    _write(args.output, write_clu(p), outputs)
    print(
        f"{p.n_clusters} clusters ({p.n_non_singleton()} without singletons), "
        f"{q.method} quality {q.value:.6f}"
    )


def cmd_tree(args, outputs):
    g = load_graph(args.input)
    cfg = DecomposeConfig(
        method=args.method,
        root_seed=args.seed,
        resolution=args.resolution,
        min_size=args.min_size,
        max_depth=args.max_depth,
        singleton_policy=args.singletons,
        largest_component_only=not args.all_components,
    )
    tree = decompose(g, cfg)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "tree.txt", tree.outline(), outputs)
    _write(out / "tree.json", tree.to_json(), outputs)
    members = list(tree.root.members)
    root_g = induced_subgraph(remove_loops(g)[0], members)
    _write(out / "root.net", write_net(CitationGraph(root_g.labels, root_g.arcs)), outputs)
    for depth in range(1, max(tree.height, 1) + 1):
        _write(out / f"level-{depth}.clu", write_clu(tree_to_partition(tree, depth)), outputs)
    print(f"tree of height {tree.height} over {len(members)} nodes written to {out}")


def _load_partition(path: str) -> Partition:
    return parse_clu(_read(path))


def cmd_compare(args, outputs):
    pa, pb = _load_partition(args.clu_a), _load_partition(args.clu_b)
    if args.intersect:
        if not (args.net_a and args.net_b):
            raise UsageError("--intersect needs --net-a and --net-b to match nodes by label")
        la, lb = load_graph(args.net_a).labels, load_graph(args.net_b).labels
        if len(la) != len(pa) or len(lb) != len(pb):
            raise DataError("partition and network sizes differ")
        pa, pb, shared = intersect(pa, list(la), pb, list(lb))
        log.info("comparing on %d shared nodes", len(shared))
    rep = association(pa, pb)
    if args.csv:
        _write(args.csv, rep.to_csv(), outputs)
    _emit(args, rep.table(), outputs)


def cmd_stability(args, outputs):
    sym = _sym(load_graph(args.input))
    seeds = default_seeds(args.seed, args.runs)
    rep = stability(sym, args.method, args.resolution, seeds, threads=args.threads)
    _emit(args, rep.table(), outputs)


def cmd_layout(args, outputs):
    sym = _sym(load_graph(args.input))
    fn = vos_layout if args.method == "vos" else kamada_kawai
    lay = fn(sym, args.seed, args.max_iterations)
    p = _load_partition(args.clu) if args.clu else Partition.single(sym.n)
    _write(args.output, write_vos_map(sym, p, lay), outputs)
    print(f"{lay.method} layout: objective {lay.objective:.6f} after {lay.iterations} iterations")


def cmd_export_map(args, outputs):
    sym = _sym(load_graph(args.input))
    p = parse_clu(_read(args.clu), expected_n=sym.n)
    coords = parse_vos_map(_read(args.coords))
    if coords.ids != tuple(range(1, sym.n + 1)):
        raise DataError("coordinate file ids do not match the network's vertices")
    _write(args.output, write_vos_map(sym, p, coords.coords), outputs)
    if args.network:
        _write(args.network, write_vos_network(sym), outputs)


def _parse_ids(spec: str, g: CitationGraph) -> list[int]:
    if spec.startswith("clu:"):
        path, _, cid = spec[4:].rpartition(":")
        if not path:
            raise UsageError("--ids clu:<file>:<cluster>")
        p = parse_clu(_read(path), expected_n=g.n)
        try:
            return list(p.members(int(cid)))
        except (KeyError, ValueError) as exc:
            raise DataError(str(exc)) from None
    try:
        return [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--ids must be a comma-separated id list or clu:<file>:<cluster>") from None


def cmd_submatrix(args, outputs):
    g = load_graph(args.input)
    ids = _parse_ids(args.ids, g)
    _write(args.output, export_submatrix_csv(g, ids), outputs)


def cmd_synth(args, outputs):
    spec = PlantedSpec(
        args.nodes, args.blocks, args.p_in, args.p_out, (args.weight_min, args.weight_max), args.seed
    )
    g, truth = planted_partition(spec)
    out = Path(args.output)
    _write(out, write_net(g), outputs)
    _write(out.with_suffix(".clu"), write_clu(truth), outputs)
    print(f"{g.n} nodes, {len(g.arcs)} arcs, {truth.n_clusters} planted blocks")


def cmd_replay(args, outputs):
    data = json.loads(_read(args.manifest))
    return data["argv"]


def _emit(args, text: str, outputs):
    if getattr(args, "output", None):
        _write(args.output, text, outputs)
    else:
        sys.stdout.write(text)


# --- parser ---------------------------------------------------------------


def _method(p, choices=("louvain", "vos"), default="louvain"):
    p.add_argument("--method", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jcmap", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"jcmap {__version__}")
    parser.add_argument("--config", help="key = value option file")
    parser.add_argument("--threads", type=int, default=None, help="worker cap (env JCMAP_THREADS)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="descriptive network statistics")
    p.add_argument("input")
    p.add_argument("--kv", action="store_true", help="key=value output")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("clean", help="remove loops and weak arcs")
    p.add_argument("input")
    p.add_argument("--min-weight", type=int, default=1)
    p.add_argument("--keep-loops", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("component", help="extract the largest weakly connected component")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_component)

    p = sub.add_parser("cluster", help="cluster into a .clu partition")
    p.add_argument("input")
    _method(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("tree", help="hierarchical decomposition")
    p.add_argument("input")
    _method(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--min-size", type=int, default=10)
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument("--singletons", choices=("set-aside", "keep"), default="set-aside")
    p.add_argument("--all-components", action="store_true", help="skip largest-component extraction")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("compare", help="Cramer's V between two partitions")
    p.add_argument("clu_a")
    p.add_argument("clu_b")
    p.add_argument("--intersect", action="store_true")
    p.add_argument("--net-a")
    p.add_argument("--net-b")
    p.add_argument("--csv", help="write the contingency matrix as CSV")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stability", help="multi-seed stability")
    p.add_argument("input")
    _method(p)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("layout", help="2-D map coordinates")
    p.add_argument("input")
    _method(p, ("vos", "kk"), "vos")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--clu", help="partition for the cluster column")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("export-map", help="VOSviewer map (and network) files")
    p.add_argument("input")
    p.add_argument("clu")
    p.add_argument("coords", help="map file with x/y columns, e.g. from `layout`")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--network")
    p.set_defaults(func=cmd_export_map)

    p = sub.add_parser("submatrix", help="CSV citation submatrix")
    p.add_argument("input")
    p.add_argument("--ids", required=True, help="1,2,3 or clu:<file>:<cluster>")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_submatrix)

    p = sub.add_parser("synth", help="planted-partition benchmark graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--weight-min", type=int, default=1)
    p.add_argument("--weight-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_replay)
    return parser


def read_config(path: str) -> dict[str, str]:
    values = {}
    for no, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{no}: expected key = value")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in sub_action.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest in cfg:
                raw = cfg[action.dest]
                if isinstance(action, argparse._StoreTrueAction):
                    defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
                else:
                    conv = action.type or str
                    defaults[action.dest] = conv(raw)
                    if action.required:
                        action.required = False
        sp.set_defaults(**defaults)


def _manifest_path(args, outputs: list[Path]) -> Path | None:
    if not outputs:
        return None
    if args.command == "tree":
        return Path(args.output) / "manifest.json"
    return Path(str(outputs[0]) + ".manifest.json")


def _input_paths(args) -> list[str]:
    paths = []
    for key in ("input", "clu_a", "clu_b", "net_a", "net_b", "clu", "coords", "config"):
        value = getattr(args, key, None)
        if value:
            paths.append(value)
    ids = getattr(args, "ids", None)
    if ids and ids.startswith("clu:"):
        paths.append(ids[4:].rpartition(":")[0])
    return paths


def _write_manifest(args, argv: list[str], outputs: list[Path]) -> None:
    path = _manifest_path(args, outputs)
    if path is None:
        return
    params = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = {
        "command": args.command,
        "argv": argv,
        "cwd": os.getcwd(),
        "parameters": params,
        "inputs": {p: _digest(Path(p)) for p in _input_paths(args)},
        "outputs": {str(p): _digest(p) for p in outputs},
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s: %(message)s",
            stream=sys.stderr,
        )
        if args.threads is None:
            args.threads = int(os.environ.get("JCMAP_THREADS", "1") or 1)
        outputs: list[Path] = []
        result = args.func(args, outputs)
        if args.command == "replay":
            manifest_dir = json.loads(_read(args.manifest)).get("cwd")
            here = os.getcwd()
            try:
                if manifest_dir and Path(manifest_dir).is_dir():
                    os.chdir(manifest_dir)
                return run(result)
            finally:
                os.chdir(here)
        _write_manifest(args, argv, outputs)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, DataError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
