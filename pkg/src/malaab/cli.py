"""Command line: ``malaab compile|tag|eval``.

Exit codes: 0 ok, 1 usage, 2 resource error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .evaluation import Prediction, concordance, load_corpus, score
from .grammar import GrammarError
from .lexicon import LexiconError
from .pipeline import Pipeline
from .recognizer import to_dict, to_xml_document
from .resources import BundleError, DEFAULT_FILES, compile_bundle, load_bundle, read_sources
from .translator import TranslationError

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3
RESOURCE_ERRORS = (LexiconError, GrammarError, TranslationError, BundleError, ValueError)


class Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _resource_paths(args):
    return {
        "dict_ar": args.dict_ar, "dict_fr": args.dict_fr, "paradigms": args.paradigms,
        "grammar": args.grammar, "translit": args.translit, "months": args.months,
    }


def _load_pipeline(args):
    bundle = args.bundle or os.environ.get("MALAAB_BUNDLE")
    explicit = any(_resource_paths(args).values())
    try:
        if bundle and not explicit:
            data = Path(bundle).read_bytes()
            return Pipeline(load_bundle(data))
        from .resources import build

        paths = _resource_paths(args)
        names = {k: str(paths[k] or DEFAULT_FILES[k]) for k in DEFAULT_FILES}
        return Pipeline(build(read_sources(paths), names))
    except OSError as e:
        raise Failure(EXIT_IO, str(e)) from None
    except RESOURCE_ERRORS as e:
        raise Failure(EXIT_RESOURCE, str(e)) from None


def _write(args, text):
    if args.out:
        tmp = Path(args.out).with_suffix(Path(args.out).suffix + ".tmp")
        try:
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(args.out)
        except OSError as e:
            raise Failure(EXIT_IO, str(e)) from None
    else:
        sys.stdout.write(text)


def cmd_compile(args):
    paths = _resource_paths(args)
    try:
        sources = read_sources(paths)
    except OSError as e:
        raise Failure(EXIT_IO, str(e)) from None
    names = {k: str(paths[k] or DEFAULT_FILES[k]) for k in DEFAULT_FILES}
    try:
        data = compile_bundle(sources, names)
    except RESOURCE_ERRORS as e:
        raise Failure(EXIT_RESOURCE, str(e)) from None
    target = args.out or args.bundle or os.environ.get("MALAAB_BUNDLE") or "malaab.bundle"
    try:
        Path(target).write_bytes(data)
    except OSError as e:
        raise Failure(EXIT_IO, str(e)) from None
    print(f"wrote {target} ({len(data)} bytes)", file=sys.stderr)


def _read_inputs(paths):
    docs = []
    for p in paths:
        path = Path(p)
        try:
            docs.append((path.stem, path.read_text(encoding="utf-8")))
        except OSError as e:
            raise Failure(EXIT_IO, str(e)) from None
    return docs


def _render(fmt, doc, trees, width):
    if fmt == "xml":
        return to_xml_document(trees) if trees else ""
    if fmt == "json":
        return "".join(
            json.dumps({"doc": doc.id, "start": t.span[0], "end": t.span[1], **to_dict(t)},
                       ensure_ascii=False) + "\n"
            for t in trees
        )
    if fmt == "concordance":
        return "".join(row.to_tsv() + "\n" for row in concordance(doc, trees, width))
    # tsv
    return "".join(f"{doc.id}\t{t.span[0]}\t{t.span[1]}\t{t.arabic}\t{t.french}\n" for t in trees)


def _run_all(pipeline, docs):
    def work(item):
        doc_id, text = item
        return pipeline.run(text, doc_id)

    with ThreadPoolExecutor() as pool:
        return list(pool.map(work, docs))


def cmd_tag(args):
    if not args.inputs:
        raise Failure(EXIT_USAGE, "tag: no input files")
    pipeline = _load_pipeline(args)
    docs = _read_inputs(args.inputs)
    try:
        results = _run_all(pipeline, docs)
    except TranslationError as e:
        raise Failure(EXIT_RESOURCE, str(e)) from None
    out = "".join(_render(args.format, doc, trees, args.width) for doc, trees in results)
    _write(args, out)


def cmd_eval(args):
    if not args.gold:
        raise Failure(EXIT_USAGE, "eval: --gold is required")
    gold_path = Path(args.gold)
    if not gold_path.is_file():
        raise Failure(EXIT_IO, f"gold file not found: {gold_path}")
    pipeline = _load_pipeline(args)
    try:
        texts, gold = load_corpus(gold_path.parent) if gold_path.name == "gold.tsv" else _load_custom(gold_path)
    except OSError as e:
        raise Failure(EXIT_IO, str(e)) from None
    except ValueError as e:
        raise Failure(EXIT_RESOURCE, str(e)) from None
    results = _run_all(pipeline, sorted(texts.items()))
    predicted = [
        Prediction(doc.id, t.span[0], t.span[1], t.french or "")
        for doc, trees in results for t in trees
    ]
    report = score(predicted, gold, texts.keys())
    if args.format == "json":
        _write(args, report.to_json() + "\n")
    else:
        _write(args, report.to_text())
        print(report.to_json(), file=sys.stderr)


def _load_custom(gold_path):
    from .evaluation import check_gold, read_gold

    gold = read_gold(gold_path)
    docs = {}
    for doc_id in sorted({g.doc_id for g in gold}):
        docs[doc_id] = (gold_path.parent / f"{doc_id}.txt").read_text(encoding="utf-8")
    check_gold(gold, docs)
    return docs, gold


def build_parser():
    parser = argparse.ArgumentParser(prog="malaab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dict-ar", dest="dict_ar")
    common.add_argument("--dict-fr", dest="dict_fr")
    common.add_argument("--paradigms")
    common.add_argument("--grammar")
    common.add_argument("--translit")
    common.add_argument("--months")
    common.add_argument("--bundle", help="compiled bundle (default: $MALAAB_BUNDLE)")
    common.add_argument("--out", help="output file (default: stdout)")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("compile", parents=[common], help="validate resources and write a bundle")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("tag", parents=[common], help="recognize and translate venue names")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--format", choices=("xml", "json", "concordance", "tsv"), default="tsv")
    p.add_argument("--width", type=int, default=5, help="concordance context, in tokens")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", parents=[common], help="score against a gold corpus")
    p.add_argument("--gold")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except Failure as e:
        print(f"malaab: {e}", file=sys.stderr)
        return e.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
