"""Command-line front end.

Verbs:
    verify          check a code against a graph, print violations
    exact           minimum identifying code by branch and bound
    construct       certified code for a connected triangle-free graph
    near-construct  certified code via triangle deletion and patching
    family          emit exceptional-family members (graph + code + manifest)
    random          generate a seeded random triangle-free graph
    report          batch bound-compliance table over a directory

Exit codes (outcome class only, never timing):
    0   success (verify: the code identifies; construct: certified)
    1   verify found violations
    2   bound missed, or a report row failed
    3   unreadable input (parse error or missing file)
    4   domain error (disconnected, triangles, twins, bad options, ...)
    5   search budget exhausted before an answer
    70  internal error
"""

from __future__ import annotations

import argparse
import sys
import traceback
from pathlib import Path

from .checks import violations
from .construct import (
    BoundReport,
    Certificate,
    bound_check,
    construct_near_triangle_free,
    construct_triangle_free,
    serialize_certificate,
    triangle_deletion_set,
)
from .errors import (
    BoundMissedError,
    GraphFormatError,
    IdCodeError,
    NotIdentifiableError,
    SearchBudgetError,
    VertexRangeError,
)
from .exact import gamma_id_exact
from .families import (
    FamilyId,
    all_family_ids,
    in_f_delta,
    make_family,
    random_triangle_free,
)
from .graphs import Graph, load_graph, serialize_graph, triangle_witness

EXIT_OK = 0
EXIT_NOT_IDENTIFYING = 1
EXIT_BOUND_MISSED = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4
EXIT_BUDGET = 5
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems on the domain exit code."""

    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _read_code_file(path: str) -> tuple[int, ...]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GraphFormatError(f"cannot read code file {path}: {e}") from e
    out = []
    for tok in text.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise GraphFormatError(
                f"code file {path}: not a vertex id: {tok!r}"
            ) from None
    return tuple(sorted(set(out)))


def _read_edge_list(path: str) -> tuple[tuple[int, int], ...]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise GraphFormatError(f"cannot read edge file {path}: {e}") from e
    edges = []
    for i, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("expected two vertex ids", line=i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"not vertex ids: {line!r}", line=i) from None
        edges.append((min(u, v), max(u, v)))
    return tuple(edges)


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _check_code_range(g: Graph, code: tuple[int, ...]) -> None:
    bad = [c for c in code if c < 0 or c >= g.n]
    if bad:
        raise VertexRangeError(
            f"code vertices out of range 0..{g.n - 1}: {bad}"
        )


def _fmt_bound(rep: BoundReport) -> str:
    word = "holds" if rep.holds else "FAILS"
    return (
        f"bound {rep.bound_den}*{rep.code_size} <= {rep.bound_num}: "
        f"{word} (slack {rep.slack})"
    )


def _applicable_bound(
    g: Graph, code: tuple[int, ...], delta_override: int | None
) -> BoundReport:
    """Bound terms matching what construct or near-construct would certify.

    An explicit delta keeps the plain degree form at that value.
    """
    if delta_override is not None:
        return bound_check(g, code, delta=delta_override)
    delta = g.max_degree()
    if triangle_witness(g) is None:
        if in_f_delta(g, max(delta, 3)) is not None:
            return bound_check(g, code, extra_num=1, delta=max(delta, 3))
        if delta == 2:
            return bound_check(g, code, extra_num=3)
        return bound_check(g, code)
    t = len(triangle_deletion_set(g))
    return bound_check(g, code, extra_num=4 * t * delta + 1)


def _cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    code = _read_code_file(args.code)
    _check_code_range(g, code)
    viols = violations(g, code)
    for v in viols:
        print(v)
    print(_fmt_bound(_applicable_bound(g, code, args.delta)))
    if viols:
        print(f"not identifying: {len(viols)} violations")
        return EXIT_NOT_IDENTIFYING
    print(f"identifying code of size {len(code)}")
    return EXIT_OK


def _cmd_exact(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    res = gamma_id_exact(g)
    print(f"gamma {res.size}")
    print("code " + " ".join(str(c) for c in res.code))
    print(f"nodes {res.nodes_explored}")
    print(f"optimal {'yes' if res.optimal else 'no'}")
    return EXIT_OK if res.optimal else EXIT_BUDGET


def _emit_certificate(cert: Certificate, out: str | None) -> int:
    _write_text(out, serialize_certificate(cert))
    return EXIT_OK if cert.verified else EXIT_BOUND_MISSED


def _cmd_construct(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    cert = construct_triangle_free(g, fallback_threshold=args.fallback)
    return _emit_certificate(cert, args.out)


def _cmd_near_construct(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    deletions = (
        _read_edge_list(args.deletions) if args.deletions is not None else None
    )
    cert = construct_near_triangle_free(
        g, deletions=deletions, fallback_threshold=args.fallback
    )
    return _emit_certificate(cert, args.out)


def _manifest_line(fid: FamilyId, g: Graph, code: tuple[int, ...], gamma: int) -> str:
    return (
        f"{fid}\t{g.n}\t{g.m}\t{gamma}\t" + " ".join(str(c) for c in code)
    )


def _cmd_family(args: argparse.Namespace) -> int:
    if args.tag.lower() == "all":
        tags = list(all_family_ids())
    else:
        tags = [FamilyId.parse(args.tag)]
    manifest: list[str] = []
    for fid in tags:
        entry = make_family(fid)
        if args.slow:
            res = gamma_id_exact(entry.graph)
            if res.size != entry.gamma:
                print(
                    f"{fid}: catalog gamma {entry.gamma} != exact {res.size}",
                    file=sys.stderr,
                )
                return EXIT_INTERNAL
        manifest.append(
            _manifest_line(fid, entry.graph, entry.code, entry.gamma)
        )
        if args.out is not None:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / f"{fid}.graph").write_text(serialize_graph(entry.graph))
            (outdir / f"{fid}.code").write_text(
                " ".join(str(c) for c in entry.code) + "\n"
            )
        else:
            print(f"# {fid}  n={entry.graph.n} gamma={entry.gamma}")
            sys.stdout.write(serialize_graph(entry.graph))
            print("code " + " ".join(str(c) for c in entry.code))
    header = "tag\tn\tm\tgamma\tcode\n"
    if args.out is not None:
        (Path(args.out) / "manifest.tsv").write_text(
            header + "\n".join(manifest) + "\n"
        )
    else:
        sys.stdout.write(header + "\n".join(manifest) + "\n")
    return EXIT_OK


def _cmd_random(args: argparse.Namespace) -> int:
    target = args.edges if args.edges is not None else 3 * args.n // 2
    g = random_triangle_free(args.n, target, seed=args.seed)
    _write_text(args.out, serialize_graph(g))
    return EXIT_OK


_REPORT_COLUMNS = (
    "file",
    "n",
    "m",
    "delta",
    "code_size",
    "bound_num",
    "bound_den",
    "slack",
    "gamma",
    "status",
)


def _cmd_report(args: argparse.Namespace) -> int:
    directory = Path(args.directory)
    files = sorted(directory.glob("*.graph"))
    if not files:
        print(f"no *.graph files under {directory}", file=sys.stderr)
        return EXIT_OK
    rows: list[tuple[str, ...]] = []
    worst = EXIT_OK
    for f in files:
        g = load_graph(str(f))
        size = bound_num = bound_den = slack = None
        status = "ok"
        try:
            if triangle_witness(g) is None:
                cert = construct_triangle_free(g, fallback_threshold=args.fallback)
            else:
                cert = construct_near_triangle_free(
                    g, fallback_threshold=args.fallback
                )
            size = len(cert.code)
            bound_num, bound_den = cert.bound_num, cert.bound_den
            slack = bound_den * size - bound_num
            if not cert.verified:
                status = "unverified"
                worst = EXIT_BOUND_MISSED
        except BoundMissedError as e:
            size = len(e.code)
            bound_num, bound_den = e.bound_num, e.bound_den
            slack = bound_den * size - bound_num
            status = "bound-missed"
            worst = EXIT_BOUND_MISSED
        except IdCodeError as e:
            status = f"error:{type(e).__name__}"
            worst = EXIT_BOUND_MISSED
        gamma: int | None = None
        if g.n <= args.fallback or args.slow:
            try:
                gamma = gamma_id_exact(g).size
            except (NotIdentifiableError, SearchBudgetError):
                gamma = None
        rows.append(
            (
                f.name,
                str(g.n),
                str(g.m),
                str(g.max_degree()),
                "-" if size is None else str(size),
                "-" if bound_num is None else str(bound_num),
                "-" if bound_den is None else str(bound_den),
                "-" if slack is None else str(slack),
                "-" if gamma is None else str(gamma),
                status,
            )
        )
    widths = [
        max(len(_REPORT_COLUMNS[i]), max(len(r[i]) for r in rows))
        for i in range(len(_REPORT_COLUMNS))
    ]
    header = "  ".join(c.ljust(widths[i]) for i, c in enumerate(_REPORT_COLUMNS))
    print(header.rstrip())
    for r in rows:
        print("  ".join(r[i].ljust(widths[i]) for i in range(len(r))).rstrip())
    if args.out is not None:
        text = "\t".join(_REPORT_COLUMNS) + "\n"
        text += "\n".join("\t".join(r) for r in rows) + "\n"
        Path(args.out).write_text(text)
    return worst


def _build_parser() -> _Parser:
    p = _Parser(
        prog="idcodes",
        description="identifying codes: verify, solve, construct, certify",
    )
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    sp = sub.add_parser("verify", parents=[], help="check a code against a graph")
    sp.add_argument("graph", help="graph file")
    sp.add_argument("--code", required=True, help="code file (vertex ids)")
    sp.add_argument(
        "--delta",
        type=int,
        default=None,
        help="degree to use in the bound line (default: max degree)",
    )
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("exact", help="minimum identifying code")
    sp.add_argument("graph", help="graph file")
    sp.set_defaults(func=_cmd_exact)

    sp = sub.add_parser("construct", help="certified triangle-free construction")
    sp.add_argument("graph", help="graph file")
    sp.add_argument("--fallback", type=int, default=16, help="exact-solver size cap")
    sp.add_argument("--out", default=None, help="certificate file (default stdout)")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser(
        "near-construct", help="certified construction via triangle deletion"
    )
    sp.add_argument("graph", help="graph file")
    sp.add_argument(
        "deletions",
        nargs="?",
        default=None,
        help="optional edge list to delete (one 'u v' per line)",
    )
    sp.add_argument("--fallback", type=int, default=16, help="exact-solver size cap")
    sp.add_argument("--out", default=None, help="certificate file (default stdout)")
    sp.set_defaults(func=_cmd_near_construct)

    sp = sub.add_parser("family", help="emit exceptional-family members")
    sp.add_argument("tag", help="member tag (T0..T11, P4, C4, C7, Star(d)) or 'all'")
    sp.add_argument("--out", default=None, help="directory for .graph/.code files")
    sp.add_argument(
        "--slow",
        action="store_true",
        help="confirm each catalog size with the exact solver",
    )
    sp.set_defaults(func=_cmd_family)

    sp = sub.add_parser("random", help="seeded random triangle-free graph")
    sp.add_argument("n", type=int, help="number of vertices")
    sp.add_argument(
        "--edges", type=int, default=None, help="target edge count (default 3n/2)"
    )
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    sp.set_defaults(func=_cmd_random)

    sp = sub.add_parser("report", help="bound-compliance table for a directory")
    sp.add_argument("directory", help="directory scanned for *.graph files")
    sp.add_argument("--fallback", type=int, default=16, help="exact-solver size cap")
    sp.add_argument("--out", default=None, help="also write a TSV to this path")
    sp.add_argument(
        "--slow",
        action="store_true",
        help="compute the exact gamma column for every size",
    )
    sp.set_defaults(func=_cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BoundMissedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND_MISSED
    except SearchBudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (IdCodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Exception:  # pragma: no cover - kept for scriptability
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
