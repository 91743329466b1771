"""Command-line front end.

    miniweave weave SOURCE      one weave pass (preview or final)
    miniweave refsort REF       sort a .ref file into a .sref file
    miniweave check SOURCE      dump every section's raw mini-output
    miniweave corpus DIR        write the HAM example files
    miniweave knights R C       count knight's tours of an R x C board

Exit status: 0 on success, 1 on errors, 2 when only warnings occurred.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .errors import MiniweaveError
from .packer import LayoutConfig
from .pipeline import debug_dump, weave
from .refsort import refsort_text
from .render import HTML, PLAIN, pages_to_text

log = logging.getLogger("miniweave")

OK, ERROR, WARNING = 0, 1, 2
SYSTEM_BUX_ENV = "MINIWEAVE_SYSTEM_BUX"
AUTO_PASSES = 4


def _read_optional(path: Path | None):
    if path is not None and path.is_file():
        return path.read_text(encoding="utf-8")
    return None


def _resolver(base: Path):
    def resolve(name):
        return (base / name).read_text(encoding="utf-8")

    return resolve


class RunConfig:
    """Paths and options for one source file."""

    def __init__(self, args):
        self.source = Path(args.source)
        self.program = args.program_name or self.source.stem
        self.stem = self.source.with_suffix("")
        self.aux = Path(args.aux) if args.aux else self.stem.with_suffix(".aux")
        self.bux = Path(args.bux) if args.bux else self.stem.with_suffix(".bux")
        sysbux = args.system_bux or os.environ.get(SYSTEM_BUX_ENV)
        self.system_bux = Path(sysbux) if sysbux else self.source.parent / "system.bux"
        self.ref = self.stem.with_suffix(".ref")
        self.sref = self.stem.with_suffix(".sref")
        self.mode = HTML if getattr(args, "html", False) else PLAIN
        self.out = self.stem.with_suffix(".html" if self.mode == HTML else ".txt")
        given = {"mini_columns": args.columns, "page_capacity": args.capacity, "width": args.width}
        self.layout = LayoutConfig(**{k: v for k, v in given.items() if v is not None})

    def inputs(self):
        return dict(
            system_bux=_read_optional(self.system_bux),
            aux=_read_optional(self.aux),
            bux=_read_optional(self.bux),
            resolver=_resolver(self.source.parent),
            filename=str(self.source),
            names=(str(self.system_bux), str(self.aux), str(self.bux)),
        )


def _weave_once(rc: RunConfig, text, sref_text):
    result = weave(text, rc.program, cfg=rc.layout, sref_text=sref_text, mode=rc.mode, **rc.inputs())
    rc.aux.write_text(result.aux_text, encoding="utf-8")
    return result


def cmd_weave(args) -> int:
    rc = RunConfig(args)
    text = rc.source.read_text(encoding="utf-8")
    if args.debug_minis:
        sys.stdout.write(debug_dump(text, rc.program, **rc.inputs()))
        return OK
    if args.auto:
        result = None
        for _ in range(AUTO_PASSES):
            result = _weave_once(rc, text, _read_optional(rc.sref))
            if result.final:
                break
            rc.ref.write_text(result.ref_text, encoding="utf-8")
            rc.sref.write_text(refsort_text(result.ref_text, rc.program, str(rc.ref)), encoding="utf-8")
    else:
        result = _weave_once(rc, text, _read_optional(rc.sref))
        if not result.final:
            rc.ref.write_text(result.ref_text, encoding="utf-8")
    rc.out.write_text(pages_to_text(result.pages, rc.mode), encoding="utf-8")
    kind = "final" if result.final else "preview"
    print(f"{rc.out}: {len(result.pages)} spreads ({kind})")
    return WARNING if result.warnings else OK


def cmd_refsort(args) -> int:
    ref = Path(args.ref)
    program = args.program_name or ref.stem
    out = Path(args.output) if args.output else ref.with_suffix(".sref")
    out.write_text(refsort_text(ref.read_text(encoding="utf-8"), program, str(ref)), encoding="utf-8")
    return OK


def cmd_check(args) -> int:
    rc = RunConfig(args)
    sys.stdout.write(debug_dump(rc.source.read_text(encoding="utf-8"), rc.program, **rc.inputs()))
    return OK


def cmd_corpus(args) -> int:
    from .ham.corpus import ham_corpus_files

    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in ham_corpus_files().items():
        (out / name).write_text(text, encoding="utf-8")
        print(out / name)
    return OK


def cmd_knights(args) -> int:
    from .ham import BACKEND, enumerate_hamiltonian_cycles, knight_graph

    print(enumerate_hamiltonian_cycles(knight_graph(args.rows, args.cols), backend=args.backend))
    log.info("backend: %s", args.backend or BACKEND)
    return OK


def _source_options(p):
    p.add_argument("source", help="literate source file (.lw)")
    p.add_argument("--program-name", help="program name used in origins (default: source stem)")
    p.add_argument("--aux", help="aux file to read and write (default: SOURCE.aux)")
    p.add_argument("--bux", help="user meaning file (default: SOURCE.bux)")
    p.add_argument("--system-bux", help=f"global meaning file (default: ${SYSTEM_BUX_ENV} or system.bux)")
    p.add_argument("--columns", type=int, help="mini-index columns")
    p.add_argument("--capacity", type=int, help="lines per spread")
    p.add_argument("--width", type=int, help="page width in characters")


def build_parser():
    parser = argparse.ArgumentParser(prog="miniweave", description="Weave literate programs with mini-indexes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weave", help="weave a source file")
    _source_options(p)
    p.add_argument("--html", action="store_true", help="write HTML instead of plain text")
    p.add_argument("--debug-minis", action="store_true", help="print raw mini-output instead of pages")
    p.add_argument("--auto", action="store_true", help="weave, sort and weave again until final")
    p.set_defaults(func=cmd_weave)

    p = sub.add_parser("refsort", help="sort a .ref file")
    p.add_argument("ref")
    p.add_argument("-o", "--output")
    p.add_argument("--program-name")
    p.set_defaults(func=cmd_refsort)

    p = sub.add_parser("check", help="dump raw mini-output per section")
    _source_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", help="write the HAM example files")
    p.add_argument("directory")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("knights", help="count knight's tours")
    p.add_argument("rows", type=int)
    p.add_argument("cols", type=int)
    p.add_argument("--backend", choices=("python", "cython"))
    p.set_defaults(func=cmd_knights)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (MiniweaveError, ValueError) as exc:
        print(f"miniweave: {exc}", file=sys.stderr)
        return ERROR
    except OSError as exc:
        print(f"miniweave: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
