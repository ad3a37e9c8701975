"""Command-line frontend: analyze, export-dot, and verify-batch."""

from __future__ import annotations

import argparse
import os
import sys
import time

from .catalog import (
    GroupSpec,
    build_group,
    parse_group_spec,
    parse_series_spec,
    resolve_catalog,
)
from .export import build_bundle, to_dot, to_json
from .labeling import label_lattice, label_lattice_dual
from .lattice import enumerate_subgroups
from .permgroup import (
    CapExceededError,
    DEFAULT_MAX_ORDER,
    NotSolvableError,
    ParseError,
    SeriesError,
    chief_series,
    is_solvable,
    subgroup_closure,
    validate_series,
)
from .verify import chains_of_complements, descending_chains, run_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_SOLVABLE = 2
EXIT_CAP = 3
EXIT_PARSE = 4


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--group", help="catalog name (C<n>, D<n>, S<n>, A<n>, Q8, V4, E8, SL23)")
    parser.add_argument("--gens", help="generator list in cycle notation")
    parser.add_argument("--degree", type=int, help="degree for --gens")
    parser.add_argument("--series", help="comma-separated subgroup generator lists overriding the canonical chief series")
    parser.add_argument("--dual", action="store_true", help="also compute the dual labeling")
    parser.add_argument("--no-verify", action="store_true", help="skip the verification stage")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "dot"), default="json")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    parser.add_argument("--max-subgroups", type=int, default=4096)
    parser.add_argument("--figures", metavar="DIR",
                        help="render labeled Hasse diagrams as PNGs into DIR")


def _spec_from_args(args) -> GroupSpec:
    if args.group and (args.gens or args.degree):
        raise ParseError("give either --group or --gens/--degree, not both")
    if args.group:
        return resolve_catalog(args.group)
    if args.gens is None or args.degree is None:
        raise ParseError("need --group, or both --gens and --degree")
    return parse_group_spec(f"degree={args.degree}; gens={args.gens}")


def _spec_from_line(line: str) -> GroupSpec:
    return parse_group_spec(line) if "=" in line else resolve_catalog(line)


def _series_from_text(text: str, group, lattice):
    ids = []
    for gens in parse_series_spec(text, group.degree):
        idxs = []
        for p in gens:
            if p.images not in group.index:
                raise SeriesError(f"series generator {p.cycle_string()} is not in the group")
            idxs.append(group.index[p.images])
        ids.append(lattice.index[subgroup_closure(group, idxs).members])
    return validate_series(group, lattice, ids)


def _run_pipeline(spec: GroupSpec, *, max_order: int, max_subgroups: int,
                  series_text: str | None, dual: bool, verify: bool,
                  threads: int):
    group = build_group(spec, max_order)
    if not is_solvable(group):
        raise NotSolvableError("group is not solvable")
    lattice = enumerate_subgroups(group, max_subgroups)
    if series_text:
        series = _series_from_text(series_text, group, lattice)
    else:
        series = chief_series(group, lattice)
    labeled = label_lattice(lattice, series)
    labeled_dual = label_lattice_dual(lattice, series) if dual else None
    verdicts = (run_checks(lattice, series, labeled, labeled_dual,
                           threads=threads) if verify else None)
    return group, lattice, series, labeled, labeled_dual, verdicts


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_figures(args, name, lattice, labeled, labeled_dual):
    if not args.figures:
        return
    from .plot import render_hasse

    os.makedirs(args.figures, exist_ok=True)
    safe = "".join(c if c.isalnum() else "_" for c in name) or "group"
    render_hasse(lattice, labeled,
                 os.path.join(args.figures, f"{safe}_hasse.png"), title=name)
    if labeled_dual is not None:
        render_hasse(lattice, labeled_dual,
                     os.path.join(args.figures, f"{safe}_hasse_dual.png"),
                     title=f"{name} (dual)")


def cmd_analyze(args) -> int:
    spec = _spec_from_args(args)
    name = spec.name or f"degree={spec.degree}"
    group, lattice, series, labeled, labeled_dual, verdicts = _run_pipeline(
        spec, max_order=args.max_order, max_subgroups=args.max_subgroups,
        series_text=args.series, dual=args.dual,
        verify=not args.no_verify, threads=args.threads)
    if args.format == "dot":
        _emit(to_dot(lattice, labeled, labeled_dual), args.out)
    else:
        bundle = build_bundle(name, lattice, series, labeled, labeled_dual,
                              verdicts)
        _emit(to_json(bundle), args.out)
    _render_figures(args, name, lattice, labeled, labeled_dual)
    if verdicts is not None and not all(verdicts.values()):
        return EXIT_FAIL
    return EXIT_OK


def cmd_export_dot(args) -> int:
    spec = _spec_from_args(args)
    name = spec.name or f"degree={spec.degree}"
    group, lattice, series, labeled, labeled_dual, _ = _run_pipeline(
        spec, max_order=args.max_order, max_subgroups=args.max_subgroups,
        series_text=args.series, dual=args.dual, verify=False,
        threads=args.threads)
    _emit(to_dot(lattice, labeled, labeled_dual), args.out)
    _render_figures(args, name, lattice, labeled, labeled_dual)
    return EXIT_OK


_BATCH_COLUMNS = ("group", "order", "subgroups", "k", "mu", "descending",
                  "complements", "el", "el_dual", "ms", "status")


def cmd_verify_batch(args) -> int:
    rows = [list(_BATCH_COLUMNS)]
    all_ok = True
    with open(args.batch_file, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    for line in lines:
        if not line or line.startswith("#"):
            continue
        start = time.perf_counter()
        try:
            spec = _spec_from_line(line)
            name = spec.name or line
            group, lattice, series, labeled, labeled_dual, verdicts = (
                _run_pipeline(spec, max_order=args.max_order,
                              max_subgroups=args.max_subgroups,
                              series_text=None, dual=True, verify=True,
                              threads=args.threads))
            ms = round((time.perf_counter() - start) * 1000)
            ok = all(verdicts.values())
            all_ok = all_ok and ok
            rows.append([name, group.order, len(lattice.nodes), series.k,
                         lattice.moebius[lattice.top],
                         len(descending_chains(labeled)),
                         len(chains_of_complements(lattice, series)),
                         "PASS" if verdicts["el"] else "FAIL",
                         "PASS" if verdicts["el_dual"] else "FAIL",
                         ms, "ok" if ok else "FAIL"])
            _render_figures(args, name, lattice, labeled, labeled_dual)
        except NotSolvableError:
            rows.append([line, "-", "-", "-", "-", "-", "-", "-", "-",
                         round((time.perf_counter() - start) * 1000),
                         "NOT_SOLVABLE"])
            all_ok = False
        except CapExceededError:
            rows.append([line, "-", "-", "-", "-", "-", "-", "-", "-",
                         round((time.perf_counter() - start) * 1000),
                         "CAP_EXCEEDED"])
            all_ok = False
        except (ParseError, SeriesError):
            rows.append([line, "-", "-", "-", "-", "-", "-", "-", "-",
                         round((time.perf_counter() - start) * 1000),
                         "PARSE_ERROR"])
            all_ok = False
    text = "\n".join("\t".join(str(c) for c in row) for row in rows) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sglat",
        description="Chief-series edge labelings of subgroup lattices of "
                    "finite solvable groups, with exhaustive verification.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_an = sub.add_parser("analyze", help="run the full pipeline on one group")
    _add_common(p_an)
    p_an.set_defaults(func=cmd_analyze)
    p_dot = sub.add_parser("export-dot", help="emit the labeled Hasse diagram as DOT")
    _add_common(p_dot)
    p_dot.set_defaults(func=cmd_export_dot)
    p_b = sub.add_parser("verify-batch", help="verify every group listed in a file")
    p_b.add_argument("batch_file", help="one group spec per line; # comments allowed")
    _add_common(p_b)
    p_b.set_defaults(func=cmd_verify_batch)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSolvableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SOLVABLE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
