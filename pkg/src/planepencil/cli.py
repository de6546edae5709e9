"""Command-line front end.

Subcommands: analyze, pencil, resolve, jelonek, verify, corpus.  Maps are
given as two arguments ``P=<poly>`` ``Q=<poly>`` in the x/y grammar.  Exit
codes: 0 all checks pass, 1 a check failed, 2 usage or parse error, 3 a
degree cap or blow-up budget was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .config import ToolkitConfig
from .core.errors import BlowupBudgetExceeded, DegreeCapExceeded, ParseError, ToolkitError
from .corpus import load_corpus_file, standard_corpus
from .harness import run_corpus, run_map
from .report import HarnessReport, emit, to_canonical_json


def _parse_map_argument(args: list[str]) -> tuple[str, str]:
    if len(args) != 2:
        raise ParseError("expected exactly two arguments: P=<poly> Q=<poly>")
    texts = {}
    for a in args:
        key, sep, value = a.partition("=")
        if not sep or key.strip() not in ("P", "Q"):
            raise ParseError(f"argument {a!r} is not of the form P=... or Q=...")
        texts[key.strip()] = value
    if "P" not in texts or "Q" not in texts:
        raise ParseError("both P= and Q= are required")
    return texts["P"], texts["Q"]


def _config_from(ns) -> ToolkitConfig:
    overrides = {}
    if getattr(ns, "samples", None) is not None:
        overrides["n_samples"] = ns.samples
    if getattr(ns, "seed", None) is not None:
        overrides["seed"] = ns.seed
    if getattr(ns, "degree_cap", None) is not None:
        overrides["degree_cap"] = ns.degree_cap
    return ToolkitConfig.from_env(**overrides)


def _single_map_report(ns, name="F"):
    p_text, q_text = _parse_map_argument(ns.map)
    from .core.parse import parse_poly

    parse_poly(p_text, ("x", "y"))  # fail fast with line/column on bad input
    parse_poly(q_text, ("x", "y"))
    config = _config_from(ns)
    return run_map(name, p_text, q_text, config), config


def _exit_code_single(report) -> int:
    if report.cap_exceeded:
        return 3
    if "parse" in report.errors:
        return 2
    if report.any_failure():
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="planepencil",
        description="Exact analysis of plane polynomial maps and their pencils",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_map_command(name, help_text):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("map", nargs=2, metavar=("P=<poly>", "Q=<poly>"))
        c.add_argument("--samples", type=int, default=None)
        c.add_argument("--seed", type=int, default=None)
        c.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")
        return c

    add_map_command("analyze", "full dossier for one map")
    add_map_command("pencil", "pencil profile only")
    r = add_map_command("resolve", "blow-up resolution summary")
    r.add_argument("--dot", type=str, default=None, help="write the dual graph here")
    add_map_command("jelonek", "non-proper value set report")
    add_map_command("verify", "identity checks for one map")

    c = sub.add_parser("corpus", help="run a corpus file (omit FILE for the shipped one)")
    c.add_argument("file", nargs="?", default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")
    c.add_argument("--json-only", action="store_true", help="suppress the summary table")

    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        if ns.command == "corpus":
            entries = (
                standard_corpus() if ns.file is None else load_corpus_file(ns.file)
            )
            config = _config_from(ns)
            report = run_corpus(entries, config, jobs=ns.jobs)
            doc, table = emit(report)
            sys.stdout.write(doc)
            if not ns.json_only:
                sys.stdout.write("\n" + table)
            return report.exit_code()

        report, config = _single_map_report(ns)
        data = report.to_json()
        if ns.command == "analyze":
            sys.stdout.write(to_canonical_json(data))
        elif ns.command == "pencil":
            sys.stdout.write(to_canonical_json(data["pencil"]))
        elif ns.command == "resolve":
            sys.stdout.write(to_canonical_json(data["resolution"]))
            if ns.dot and report.tree is not None:
                from .resolution import dual_graph_dot

                with open(ns.dot, "w", encoding="utf-8") as fh:
                    fh.write(dual_graph_dot(report.tree))
        elif ns.command == "jelonek":
            sys.stdout.write(
                to_canonical_json(
                    {
                        "a_f_components": data["a_f_components"],
                        "a_f_unresolved": data["a_f_unresolved"],
                        "deg_geo": data["deg_geo"],
                        "finite_fibres": data["finite_fibres"],
                        "from_resolution": data["resolution"]["nonproper_from_dicriticals"]
                        if data["resolution"]
                        else None,
                    }
                )
            )
        elif ns.command == "verify":
            sys.stdout.write(
                to_canonical_json(
                    {"checks": data["checks"], "theorem2": data["theorem2"]}
                )
            )
        return _exit_code_single(report)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except (DegreeCapExceeded, BlowupBudgetExceeded) as exc:
        names = getattr(exc, "min_polys", ())
        sys.stderr.write(
            f"cap exceeded: {exc}" + (f" [{'; '.join(names)}]" if names else "") + "\n"
        )
        return 3
    except ToolkitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
