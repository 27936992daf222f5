"""Command-line interface: ``uzstem stem|batch|trace|dump-fsm|validate-lexicon|eval``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import ConfigError, EmptyInput, LexiconError, AutomatonError, UzstemError
from .fsm import compile_ltr, export_dot, format_table, reverse
from .lexicon import load_lexicon, validate_counts
from .resources import load_resources, resolve
from .stemmer import MainFsm, StemResult, Terminal, stem
from .text import normalize_text

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2

_LOAD_ERRORS = (LexiconError, AutomatonError, ConfigError)


@dataclass(frozen=True)
class BatchRecord:
    input_token: str
    stem: str
    morphemes: str
    path_id: int | None

    def tsv(self) -> str:
        path = "" if self.path_id is None else str(self.path_id)
        return "\t".join((self.input_token, self.stem, self.morphemes, path))


@dataclass
class EvalReport:
    total: int = 0
    exact_stem_matches: int = 0
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return self.exact_stem_matches / self.total if self.total else 0.0


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lexicon", help="Suffixes.xml to use")
    parser.add_argument("--topology-dir", help="directory with *.fsm class topologies")
    parser.add_argument("--paths", help="analysis path configuration file")
    parser.add_argument("--json", action="store_true", help="JSON output")
    parser.add_argument("--min-stem-len", type=int, default=2, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _common(common)
    parser = argparse.ArgumentParser(prog="uzstem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stem", parents=[common], help="stem one word")
    p.add_argument("word")
    p.add_argument("--segments", action="store_true", help="print slash-joined segmentation")
    p.add_argument("--candidates", action="store_true", help="include losing analyses in JSON")

    p = sub.add_parser("batch", parents=[common], help="stem a file, one token per line")
    p.add_argument("input")
    p.add_argument("output", nargs="?", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="exit 1 if any token failed")

    p = sub.add_parser("trace", parents=[common], help="show every path step by step")
    p.add_argument("word")

    p = sub.add_parser("dump-fsm", parents=[common], help="print a class automaton")
    p.add_argument("fsm_class", metavar="CLASS")
    p.add_argument("stage", choices=["ltr", "nfa", "dfa"])
    p.add_argument("format", nargs="?", default="table", choices=["table", "dot"])

    p = sub.add_parser("validate-lexicon", parents=[common], help="schema and count check")
    p.add_argument("path", nargs="?")
    p.add_argument("--strict-counts", action="store_true")

    p = sub.add_parser("eval", parents=[common], help="accuracy against a gold file")
    p.add_argument("gold")
    p.add_argument("--min-accuracy", type=float)
    p.add_argument("--show", type=int, default=10, metavar="N", help="mismatches to list")
    return parser


def _load(args):
    return load_resources(args.lexicon, args.topology_dir, args.paths, min_stem_len=args.min_stem_len)


def _err(msg: str) -> None:
    print(f"uzstem: {msg}", file=sys.stderr)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_stem(args, out) -> int:
    main = _load(args).main
    try:
        result = stem(args.word, main, keep_candidates=args.candidates)
    except EmptyInput:
        _err("empty input")
        return EXIT_INPUT
    if args.json:
        data = result.to_dict()
        if args.candidates:
            data["candidates"] = [c.to_dict() for c in result.candidates]
        print(json.dumps(data, ensure_ascii=False), file=out)
    elif args.segments:
        print(result.segmentation, file=out)
    else:
        print(result.stem, file=out)
    return EXIT_OK


def _batch_one(token: str, main: MainFsm) -> tuple[BatchRecord, StemResult | None]:
    try:
        result = stem(token, main)
    except UzstemError:
        return BatchRecord(token, "", "", None), None
    return BatchRecord(token, result.stem, result.segmentation, result.path_id), result


def cmd_batch(args, out) -> int:
    main = _load(args).main
    try:
        lines = Path(args.input).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        _err(f"{args.input}: cannot read input: {exc}")
        return EXIT_CONFIG
    tokens = [line.strip() for line in lines]

    def work(token: str):
        return None if not token else _batch_one(token, main)

    workers = max(1, args.workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, tokens, chunksize=256))
    else:
        rows = [work(t) for t in tokens]

    failures = 0
    target = out if args.output == "-" else open(args.output, "w", encoding="utf-8", newline="\n")
    try:
        for row in rows:
            if row is None:
                target.write("\n")
                continue
            record, result = row
            if result is None:
                failures += 1
            if args.json:
                data = result.to_dict() if result else {"word": record.input_token, "stem": ""}
                data["token"] = record.input_token
                target.write(json.dumps(data, ensure_ascii=False) + "\n")
            else:
                target.write(record.tsv() + "\n")
    finally:
        if target is not out:
            target.close()
    if failures:
        _err(f"{failures} token(s) failed")
    return EXIT_INPUT if args.strict and failures else EXIT_OK


def _class_names(res) -> dict[int, str]:
    return {fid: info.name for fid, info in res.lexicon.classes.items()}


def trace_lines(result: StemResult, names: dict[int, str], main: MainFsm) -> list[str]:
    spec = main.path(result.path_id)
    chain = [names.get(f, str(f)) for f in spec.stripper_sequence] + [spec.terminal_output.value]
    hint = f" ({spec.word_class_hint})" if spec.word_class_hint else ""
    lines = [f"path {spec.path_id}{hint}: " + " → ".join(chain)]
    word = result.word
    stem_end = len(word) - sum(len(m.surface) for m in result.suffixes)
    if not result.morphemes:
        lines.append("  (no steps)")
    for m in result.morphemes:
        if m.is_prefix:
            before, after = word[:stem_end], word[m.span[1]:stem_end]
            lines.append(f"  [{names.get(m.fsm_id, m.fsm_id)}] “{before}” (prefix {m.surface}-) → “{after}”")
        else:
            before, after = word[: m.span[1]], word[: m.span[0]]
            lines.append(
                f"  [{names.get(m.fsm_id, m.fsm_id)}] “{before}”({m.source_state} – {m.suff_id} → "
                f"{m.target_state}) → “{after}”  {m.surface}"
            )
    lines.append(f"  result: {result.segmentation}  ({len(result.morphemes)} morphemes)")
    return lines


def cmd_trace(args, out) -> int:
    res = _load(args)
    try:
        winner = stem(args.word, res.main, keep_candidates=True)
    except EmptyInput:
        _err("empty input")
        return EXIT_INPUT
    names = _class_names(res)
    results = sorted((winner,) + winner.candidates, key=lambda r: r.path_id)
    if args.json:
        print(json.dumps([r.to_dict() for r in results], ensure_ascii=False), file=out)
        return EXIT_OK
    print(f"word: {winner.word}", file=out)
    for result in results:
        for line in trace_lines(result, names, res.main):
            print(line, file=out)
    hint = f" ({winner.word_class_hint})" if winner.word_class_hint else ""
    print(f"winner: path {winner.path_id}{hint}: {winner.segmentation}", file=out)
    return EXIT_OK


def cmd_dump_fsm(args, out) -> int:
    try:
        fsm_id = int(args.fsm_class)
    except ValueError:
        _err(f"class must be an integer, got {args.fsm_class!r}")
        return EXIT_CONFIG
    res = _load(args)
    ltr = res.topologies.get(fsm_id)
    if ltr is None:
        _err(f"no topology shipped for class {fsm_id}")
        return EXIT_CONFIG
    machine = {"ltr": lambda: ltr, "nfa": lambda: reverse(ltr), "dfa": lambda: compile_ltr(ltr)}[
        args.stage
    ]()
    text = export_dot(machine) if args.format == "dot" else format_table(machine)
    out.write(text)
    return EXIT_OK


def cmd_validate_lexicon(args, out) -> int:
    path = Path(args.path) if args.path else resolve(args.lexicon)[0]
    try:
        lexicon = load_lexicon(path)
    except LexiconError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    report = validate_counts(lexicon)
    if args.json:
        rows = [
            {"fsm_id": r.fsm_id, "name": r.name, "expected": r.expected, "actual": r.actual, "match": r.match}
            for r in report.rows
        ]
        print(json.dumps({"file": str(path), "classes": rows}, ensure_ascii=False), file=out)
    else:
        print(f"{path}: schema OK, {len(lexicon.entries)} entries", file=out)
        print(f"{'class':>5}  {'name':<36} {'affixes':>9} {'allomorphs':>11}  status", file=out)
        for r in report.rows:
            status = "OK" if r.match else "MISMATCH"
            affixes = f"{r.actual[0]}/{r.expected[0]}"
            allomorphs = f"{r.actual[1]}/{r.expected[1]}"
            print(f"{r.fsm_id:>5}  {r.name:<36} {affixes:>9} {allomorphs:>11}  {status}", file=out)
        act, exp = report.actual_total, report.expected_total
        print(f"{'':>5}  {'Total':<36} {f'{act[0]}/{exp[0]}':>9} {f'{act[1]}/{exp[1]}':>11}", file=out)
    if not report.all_match:
        bad = [str(r.fsm_id) for r in report.rows if not r.match]
        _err(f"count mismatch in class(es) {', '.join(bad)}" + ("" if args.strict_counts else " (warning)"))
        if args.strict_counts:
            return EXIT_INPUT
    return EXIT_OK


def read_gold(path: str | Path) -> list[tuple[int, str, str]]:
    rows = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ValueError(f"{path}:{lineno}: expected 'token<TAB>stem'")
        rows.append((lineno, parts[0].strip(), parts[1].strip()))
    return rows


def evaluate(gold: list[tuple[int, str, str]], main: MainFsm) -> EvalReport:
    report = EvalReport()
    for _, token, expected in gold:
        report.total += 1
        try:
            actual = stem(token, main).stem
        except UzstemError:
            actual = ""
        if actual == normalize_text(expected):
            report.exact_stem_matches += 1
        else:
            report.mismatches.append((token, expected, actual))
    return report


def cmd_eval(args, out) -> int:
    main = _load(args).main
    try:
        gold = read_gold(args.gold)
    except OSError as exc:
        _err(f"{args.gold}: {exc}")
        return EXIT_CONFIG
    except ValueError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    if not gold:
        _err(f"{args.gold}: nothing to evaluate")
        return EXIT_CONFIG
    report = evaluate(gold, main)
    if args.json:
        print(
            json.dumps(
                {
                    "total": report.total,
                    "exact_stem_matches": report.exact_stem_matches,
                    "accuracy": report.accuracy,
                    "mismatches": report.mismatches[: args.show],
                },
                ensure_ascii=False,
            ),
            file=out,
        )
    else:
        print(f"accuracy: {report.accuracy:.4f} ({report.exact_stem_matches}/{report.total})", file=out)
        for token, expected, actual in report.mismatches[: args.show]:
            print(f"  {token}\texpected={expected}\tactual={actual}", file=out)
    if args.min_accuracy is not None and report.accuracy < args.min_accuracy:
        return EXIT_INPUT
    return EXIT_OK


COMMANDS = {
    "stem": cmd_stem,
    "batch": cmd_batch,
    "trace": cmd_trace,
    "dump-fsm": cmd_dump_fsm,
    "validate-lexicon": cmd_validate_lexicon,
    "eval": cmd_eval,
}


def main(argv=None, out=None) -> int:
    if out is None:
        out = sys.stdout
        if hasattr(out, "reconfigure"):
            out.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    if args.min_stem_len < 1:
        _err("--min-stem-len must be positive")
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args, out)
    except _LOAD_ERRORS as exc:
        _err(str(exc))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
