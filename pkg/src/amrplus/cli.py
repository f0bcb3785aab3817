"""Command-line entry point: ``amrplus <subcommand> [options] [FILE ...]``.

Exit status is 0 on success, 1 if any document failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .contexts import normalize, validate
from .drs import ACCOMMODATION_MODES, LexMap, render_box, render_clauses, translate
from .errors import AmrPlusError
from .logic import check_entailment, drs_to_fol
from .penman import format_document, parse_many
from .triples import export_triples, format_triples, read_triples, smatch_score
from .upgrade import upgrade


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _documents(paths, errors):
    """Yield (label, document) for every parseable document; report the rest."""
    for path in paths or ["-"]:
        label = "<stdin>" if path == "-" else path
        try:
            docs = parse_many(_read(path))
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")
            continue
        for doc in docs:
            yield f"{label}:{doc.id}", doc


def _emit_json(obj):
    print(json.dumps(obj, ensure_ascii=False))


def _lexmap(args):
    return LexMap.load(args.lexmap) if args.lexmap else LexMap.default()


def cmd_parse(args, errors):
    for _, doc in _documents(args.files, errors):
        if args.format == "json":
            _emit_json(serialize.document(doc))
        else:
            print(format_document(doc))


def cmd_validate(args, errors):
    n = 0
    for label, doc in _documents(args.files, errors):
        n += 1
        try:
            s = validate(doc)
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")
            continue
        if args.format == "json":
            _emit_json({"id": doc.id, **serialize.structure(s)})
        else:
            print(f"OK {doc.id} root={s.root} contexts={len(s.placement)}")
    print(f"{n} document(s), {len(errors)} error(s)", file=sys.stdout if args.format != "json" else sys.stderr)


def cmd_upgrade(args, errors):
    for label, doc in _documents(args.files, errors):
        try:
            new, notices = upgrade(doc)
            validate(new)
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")
            continue
        print(f"# ::id {doc.id}\n{format_document(new)}\n")
        for notice in notices:
            print(notice.format(doc.id), file=sys.stderr)


def _translated(args, errors):
    lex = _lexmap(args)
    for label, doc in _documents(args.files, errors):
        try:
            yield doc, translate(doc, validate(doc), lex, args.accommodate)
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")


def cmd_drs(args, errors):
    for doc, out in _translated(args, errors):
        if args.format == "json":
            _emit_json({"id": doc.id, **serialize.drs_output(out)})
        elif args.format == "clauses":
            print(f"% {doc.id}\n{render_clauses(out)}")
        else:
            print(f"# {doc.id}\n{render_box(out)}\n")


def cmd_clauses(args, errors):
    args.format = "clauses"
    cmd_drs(args, errors)


def cmd_triples(args, errors):
    for label, doc in _documents(args.files, errors):
        try:
            doc, s = normalize(doc)
            triples = export_triples(doc, s)
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")
            continue
        if args.format == "json":
            _emit_json({"id": doc.id, "triples": [serialize.triple(t) for t in triples]})
        else:
            print(f"# ::id {doc.id}\n{format_triples(triples)}")


def _triple_blocks(text):
    blocks, current = [], []
    for line in text.splitlines() + [""]:
        if line.strip():
            current.append(line)
        elif current:
            block = read_triples("\n".join(current))
            if block:
                blocks.append(block)
            current = []
    return blocks


def cmd_match(args, errors):
    gold = _triple_blocks(_read(args.gold))
    system = _triple_blocks(_read(args.system))
    if len(gold) != len(system):
        errors.append(f"{len(gold)} gold block(s) but {len(system)} system block(s)")
        return
    matched = n_sys = n_gold = 0
    for g, s in zip(gold, system):
        r = smatch_score(s, g, restarts=args.restarts, seed=args.seed)
        matched += r.matched
        n_sys += len(set(s))
        n_gold += len(set(g))
    p = matched / n_sys if n_sys else 0.0
    r = matched / n_gold if n_gold else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    if args.format == "json":
        _emit_json({"matched": matched, "precision": p, "recall": r, "f1": f})
    else:
        print(f"P={p:.4f} R={r:.4f} F1={f:.4f}")


def cmd_entail(args, errors):
    lex = _lexmap(args)
    mode = "global" if args.accommodate == "none" else args.accommodate
    formulas = []
    for path in (args.premise, args.conclusion):
        docs = list(_documents([path], errors))
        if not docs:
            errors.append(f"{path}: no document")
            return
        label, doc = docs[0]
        try:
            out = translate(doc, validate(doc), lex, "local" if mode == "local" else "none")
            formulas.append(drs_to_fol(out, mode))
        except AmrPlusError as e:
            errors.append(f"{label}: {e}")
            return
    try:
        verdict = check_entailment(*formulas, max_domain=args.max_domain)
    except AmrPlusError as e:
        errors.append(str(e))
        return
    if args.format == "json":
        _emit_json(serialize.verdict(verdict))
    else:
        print(verdict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amrplus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexmap", metavar="FILE", help="concept/role mapping file")
    common.add_argument("--accommodate", choices=ACCOMMODATION_MODES, default="none")
    common.add_argument("--format", choices=("box", "clauses", "json"), default="box")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=16)
    common.add_argument("--max-domain", type=int, default=3)

    def add(name, fn, help, files=True):
        p = sub.add_parser(name, parents=[common], help=help)
        if files:
            p.add_argument("files", nargs="*", metavar="FILE")
        p.set_defaults(func=fn)
        return p

    add("parse", cmd_parse, "parse and print canonical AMR+")
    add("validate", cmd_validate, "check context structure")
    add("upgrade", cmd_upgrade, "convert plain AMR to AMR+ (review notices on stderr)")
    add("drs", cmd_drs, "translate to DRS")
    add("clauses", cmd_clauses, "translate to DRS clause format")
    add("triples", cmd_triples, "export evaluation triples")
    m = add("match", cmd_match, "Smatch-style score of two triple files", files=False)
    m.add_argument("gold")
    m.add_argument("system")
    e = add("entail", cmd_entail, "bounded entailment check between two AMR+ files", files=False)
    e.add_argument("premise")
    e.add_argument("conclusion")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    errors: list[str] = []
    try:
        args.func(args, errors)
    except OSError as e:
        errors.append(str(e))
    for msg in errors:
        print(msg, file=sys.stderr)
    return 1 if errors else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
