"""Command-line interface: construct, verify, sieve, tables.

Every command is deterministic.  Files are written atomically; on a
validation failure a JSON error object is printed and the exit status is
nonzero (2 for errors, 1 for checks that ran but failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import designlib, sieve
from .designlib import Design, DesignError, verification_report, report_text
from .permgrp import PermError, group_from_dict, group_to_dict
from .unitary import GeometryError

CONSTRUCTIONS = ("hermitian-unital", "wbs", "table1")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def write_atomic(path, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _construction(args):
    if args.target == "hermitian-unital":
        if args.q is None:
            raise DesignError("hermitian-unital needs --q")
        return designlib.unital_construction(args.q, with_group=bool(args.group_out))
    if args.target == "wbs":
        if args.n is None:
            raise DesignError("wbs needs --n")
        return designlib.wbs_construction(args.n)
    if args.line is None:
        raise DesignError("table1 needs --line")
    return designlib.table1_construction(args.line)


def cmd_construct(args):
    c = _construction(args)
    params = designlib.verify_design(c.design)
    doc = dict(c.design.to_dict(), name=c.name, params=list(params.as_tuple()))
    # render everything before touching the filesystem
    text = _dumps(doc)
    group_text = _dumps(group_to_dict(c.group)) if args.group_out else None
    if args.group_out:
        write_atomic(args.group_out, group_text)
    _emit(text, args.out)
    return 0


def cmd_verify(args):
    design = Design.from_dict(_read_json(args.design))
    group = group_from_dict(_read_json(args.group)) if args.group else None
    report = verification_report(design, group)
    text = report_text(report) if args.format == "text" else _dumps(report)
    _emit(text, args.out)
    return 0 if report["ok"] else 1


def cmd_sieve(args):
    rows = sieve.load_cases(args.cases)
    results = sieve.run_sieve(rows)
    if args.format == "json":
        text = _dumps({"schema": sieve.SCHEMA, "rows": [r.to_dict() for r in results]})
    else:
        text = sieve.report_tsv(results)
    _emit(text, args.out)
    return 0 if all(r.matches for r in results) else 1


def table1_rows():
    out = []
    for row in designlib.TABLE1:
        c = designlib.table1_construction(row.line)
        params = designlib.verify_design(c.design).as_tuple()
        stab = c.group.order() // c.group.degree
        flag = designlib.is_flag_transitive(c.group, c.design)
        out.append({"line": row.line, "params": list(params), "params_paper": list(row.params),
                    "stabilizer_order": stab, "stabilizer_order_paper": row.stabilizer_order,
                    "stabilizer_paper": row.stabilizer, "flag_transitive": flag,
                    "matches": params == row.params and stab == row.stabilizer_order and flag})
    return out


def cmd_tables(args):
    t1 = table1_rows()
    results = sieve.run_sieve(sieve.load_cases(args.cases))
    ok = all(r["matches"] for r in t1) and all(r.matches for r in results)
    if args.format == "json":
        text = _dumps({"schema": sieve.SCHEMA, "table1": t1,
                       "sieve": [r.to_dict() for r in results], "ok": ok})
    else:
        lines = ["line\tparams\tparams_paper\tstab\tstab_paper\tflag_transitive\tmatch"]
        for r in t1:
            lines.append("\t".join(str(x) for x in (
                r["line"], ",".join(map(str, r["params"])), ",".join(map(str, r["params_paper"])),
                r["stabilizer_order"], r["stabilizer_order_paper"],
                str(r["flag_transitive"]).lower(), str(r["matches"]).lower())))
        text = "\n".join(lines) + "\n\n" + sieve.report_tsv(results)
    _emit(text, args.out)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="flagdesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design and write its exchange file")
    p.add_argument("target", choices=CONSTRUCTIONS)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--line", type=int)
    p.add_argument("--out")
    p.add_argument("--group-out", help="also write the acting group")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a design, optionally with a group")
    p.add_argument("--design", required=True)
    p.add_argument("--group")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sieve", help="run the sieve over a case file")
    p.add_argument("--cases", help="case file (default: the shipped tables)")
    p.add_argument("--out")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("tables", help="regenerate the design and sieve table comparisons")
    p.add_argument("--cases")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tables)
    return parser


ERRORS = (DesignError, PermError, GeometryError, sieve.SieveError, OSError,
          json.JSONDecodeError, KeyError, TypeError, ValueError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ERRORS as exc:
        err = {"schema": 1, "error": {"type": type(exc).__name__, "message": str(exc)}}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            err["error"]["witness"] = json.loads(json.dumps(witness, default=str))
        sys.stdout.write(_dumps(err))
        return 2


if __name__ == "__main__":
    sys.exit(main())
