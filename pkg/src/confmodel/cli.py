"""Command-line front end: extract, generate, roundtrip, check, stats, dump-tree.

Exit codes: 0 success, 1 validation or round-trip failure, 2 usage or I/O
error.  Only the payload goes to stdout (or ``--output``); diagnostics go to
stderr as ``file:line:column: message`` where a position is known.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .extractor import aggregate_stats, extract_multi, model_stats
from .generator import GenerationError, generate, roundtrip_check
from .lexer import VENDORS
from .mapping import MappingError, MappingTable, load_mapping
from .metamodel import (DeviceModel, ModelFormatError, builtin_metamodel, model_from_dict,
                        model_to_dict, serialize_model, validate_model)
from .parser import dump_tree, parse_text

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _diag(path: str, exc: BaseException) -> str:
    text = str(exc)
    # positioned errors already start with "line:column:"
    sep = ":" if getattr(exc, "line", None) is not None else ": "
    return f"{path}{sep}{text}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"{path}: cannot read: {exc}") from None


def _table(args) -> Optional[MappingTable]:
    if not args.mapping:
        return None
    try:
        return load_mapping(args.mapping, args.vendor)
    except OSError as exc:
        raise UsageError(f"{args.mapping}: cannot read: {exc}") from None
    except MappingError as exc:
        raise UsageError(str(exc)) from None


def load_models(path: str) -> List[Tuple[str, DeviceModel]]:
    """A single model document, or a bundle ``{"devices": [{"name", "model"}]}``."""
    text = _read(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    mm = builtin_metamodel()
    try:
        if isinstance(doc, dict) and "devices" in doc:
            if not isinstance(doc["devices"], list):
                raise ModelFormatError("'devices' must be an array", path="$.devices")
            return [(d.get("name", f"device{i + 1}"), model_from_dict(d.get("model"), mm))
                    for i, d in enumerate(doc["devices"])]
        return [(Path(path).stem, model_from_dict(doc, mm))]
    except (ModelFormatError, AttributeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(args, payload: str):
    if args.output:
        try:
            Path(args.output).write_text(payload, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"{args.output}: cannot write: {exc}") from None
    else:
        sys.stdout.write(payload)


def cmd_extract(args) -> int:
    results = extract_multi([(p, args.vendor) for p in args.inputs], _table(args))
    status = EXIT_OK
    for r in results:
        if not r.ok:
            print(_diag(r.path, r.error), file=sys.stderr)
            status = EXIT_USAGE if isinstance(r.error, OSError) else EXIT_FAIL
    good = [r for r in results if r.ok]
    if len(args.inputs) == 1:
        if good:
            _emit(args, serialize_model(good[0].model))
    else:
        bundle = {"devices": [{"name": r.name, "model": model_to_dict(r.model)} for r in good]}
        _emit(args, json.dumps(bundle, indent=2, ensure_ascii=False) + "\n")
    return status


def cmd_generate(args) -> int:
    (name, model), *rest = load_models(args.model)
    if rest:
        raise UsageError(f"{args.model}: generate takes a single model, not a bundle")
    try:
        script = generate(model)
    except GenerationError as exc:
        print(f"{args.model}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(args, script.text())
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    table = _table(args)
    texts = [(p, _read(p)) for p in args.inputs]

    def run(item):
        path, text = item
        try:
            return path, roundtrip_check(text, args.vendor, table), None
        except ValueError as exc:
            return path, None, exc

    with ThreadPoolExecutor() as pool:
        outcomes = list(pool.map(run, texts))
    status, lines = EXIT_OK, []
    for path, result, exc in outcomes:
        if exc is not None:
            print(_diag(path, exc), file=sys.stderr)
            status, verdict = EXIT_FAIL, "ERROR"
        elif result.equal:
            verdict = "OK"
        else:
            for d in result.diff:
                print(f"{path}: {d}", file=sys.stderr)
            status, verdict = EXIT_FAIL, "DIFF"
        lines.append(verdict if len(texts) == 1 else f"{path}: {verdict}")
    _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_check(args) -> int:
    mm = builtin_metamodel()
    status, lines = EXIT_OK, []
    for name, model in load_models(args.model):
        violations = validate_model(model, mm)
        for v in violations:
            print(f"{args.model}: {name}: {v}", file=sys.stderr)
        if violations:
            status = EXIT_FAIL
        lines.append(f"{name}: {'OK' if not violations else 'INVALID'}")
    _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_stats(args) -> int:
    models = load_models(args.model)
    if len(models) == 1 and not args.per_device:
        out = model_stats(models[0][1])
    else:
        out = aggregate_stats([m for _, m in models])
        if args.per_device:
            out = {"aggregate": out, "devices": {n: model_stats(m) for n, m in models}}
    _emit(args, json.dumps(out, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_dump_tree(args) -> int:
    status, chunks = EXIT_OK, []
    for path in args.inputs:
        try:
            tree = parse_text(_read(path), args.vendor)
        except ValueError as exc:
            print(_diag(path, exc), file=sys.stderr)
            status = EXIT_FAIL
            continue
        chunks.append(dump_tree(tree))
    _emit(args, "".join(chunks))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="confmodel",
                             description="Network device configuration <-> model round trips")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def config_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--vendor", required=True, choices=VENDORS)
        p.add_argument("--mapping", help="TSV mapping table overriding the built-in one")
        p.add_argument("-o", "--output")
        p.add_argument("inputs", nargs="+", metavar="CONFIG")
        p.set_defaults(func=func)
        return p

    def model_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output")
        p.add_argument("model", metavar="MODEL_JSON")
        p.set_defaults(func=func)
        return p

    config_cmd("extract", cmd_extract, "configuration -> model JSON")
    config_cmd("roundtrip", cmd_roundtrip, "extract, generate, re-extract and compare")
    dt = config_cmd("dump-tree", cmd_dump_tree, "print the parse tree")
    dt.set_defaults(mapping=None)
    model_cmd("generate", cmd_generate, "model JSON -> command script")
    model_cmd("check", cmd_check, "validate a model or bundle against the metamodel")
    st = model_cmd("stats", cmd_stats, "slot and item-kind counts")
    st.add_argument("--per-device", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"confmodel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"confmodel: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
