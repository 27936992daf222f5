"""Right-to-left affix stripping over the compiled class automata.

A word is pushed through every configured analysis path.  A path is an
ordered list of class strippers, outermost class first, followed by a
terminal step (prefix stripping, or the pronoun / number class).  The
analysis that strips the most morphemes wins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping, Sequence

from .exceptions import ConfigError, UnknownPath
from .fsm import Dfa, LtrFsm, build_ltr, compile_ltr
from .lexicon import AffixEntry, Allomorph, Lexicon
from .text import NormalizedWord, is_strippable, letter_count, normalize

__all__ = [
    "ClassStripper",
    "MainFsm",
    "Morpheme",
    "PathConfig",
    "PathSpec",
    "StemResult",
    "Terminal",
    "Verdict",
    "check_exceptions",
    "compile_main_fsm",
    "compile_stripper",
    "normalize",
    "parse_path_config",
    "register_post_hook",
    "run_path",
    "stem",
    "strip_class",
    "strip_prefixes",
]

DEFAULT_MIN_STEM_LEN = 2


class Verdict(enum.Enum):
    CUT = "cut"
    PASS = "pass"
    DEFAULT = "default"


class Terminal(enum.Enum):
    PREFIXES = "Prefixes"
    PRONOUNS = "Pronouns"
    NUMBERS = "Numbers"


# class names the terminals resolve to
_TERMINAL_CLASS = {
    Terminal.PREFIXES: "Prefixes",
    Terminal.PRONOUNS: "Pronouns",
    Terminal.NUMBERS: "Number",
}


@dataclass(frozen=True)
class Morpheme:
    fsm_id: int
    suff_id: int
    surface: str
    generic_name: str
    span: tuple[int, int]
    source_state: str = ""
    target_state: str = ""
    is_prefix: bool = False


@dataclass(frozen=True)
class ClassStripper:
    fsm_id: int
    dfa: Dfa
    entries: Mapping[int, AffixEntry]
    min_stem_len: int = DEFAULT_MIN_STEM_LEN

    def __post_init__(self):
        missing = sorted(self.dfa.labels - set(self.entries))
        if missing:
            raise ConfigError(f"class {self.fsm_id}: automaton labels {missing} have no lexicon entry")
        if self.min_stem_len < 1:
            raise ConfigError(f"class {self.fsm_id}: min_stem_len must be positive")


@dataclass(frozen=True)
class PathSpec:
    path_id: int
    stripper_sequence: tuple[int, ...]
    terminal_output: Terminal
    word_class_hint: str = ""


@dataclass(frozen=True)
class StemResult:
    word: str
    stem: str
    morphemes: tuple[Morpheme, ...]
    path_id: int
    pos_trace: tuple[str, ...] = ()
    word_class_hint: str = ""
    candidates: tuple["StemResult", ...] = ()

    @property
    def suffixes(self) -> list[Morpheme]:
        return [m for m in self.morphemes if not m.is_prefix]

    @property
    def prefixes(self) -> list[Morpheme]:
        return sorted((m for m in self.morphemes if m.is_prefix), key=lambda m: m.span)

    @property
    def stripped_chars(self) -> int:
        return sum(len(m.surface) for m in self.morphemes)

    def segments(self) -> list[str]:
        """Prefixes, stem and suffixes in reading order."""
        return (
            [m.surface for m in self.prefixes]
            + [self.stem]
            + [m.surface for m in reversed(self.suffixes)]
        )

    @property
    def segmentation(self) -> str:
        return "/".join(self.segments())

    def reconstruct(self) -> str:
        return "".join(self.segments())

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "stem": self.stem,
            "segmentation": self.segmentation,
            "morphemes": [
                {
                    "fsm_id": m.fsm_id,
                    "suff_id": m.suff_id,
                    "surface": m.surface,
                    "generic_name": m.generic_name,
                    "span": list(m.span),
                    "prefix": m.is_prefix,
                }
                for m in self.morphemes
            ],
            "path_id": self.path_id,
            "word_class": self.word_class_hint,
            "pos_trace": list(self.pos_trace),
        }


# --------------------------------------------------------------------------
# Single class
# --------------------------------------------------------------------------


def check_exceptions(word_before_cut: str, allomorph: Allomorph) -> Verdict:
    """``exception_pass`` blocks the cut, ``exception_cut`` forces it."""
    if word_before_cut in allomorph.exception_pass:
        return Verdict.PASS
    if word_before_cut in allomorph.exception_cut:
        return Verdict.CUT
    return Verdict.DEFAULT


def _cuttable(residue: str, allomorph: Allomorph, min_stem_len: int) -> bool:
    surface = allomorph.surface
    if len(surface) >= len(residue) or not residue.endswith(surface):
        return False
    verdict = check_exceptions(residue, allomorph)
    if verdict is Verdict.PASS:
        return False
    if verdict is Verdict.CUT:
        return True
    return letter_count(residue[: -len(surface)]) >= min_stem_len


def strip_class(word: str, stripper: ClassStripper) -> tuple[str, list[Morpheme]]:
    """Strip suffixes of one class from the end of ``word``.

    At each DFA state the longest matching allomorph among the outgoing
    labels is cut (ties go to the lower suffix id) and its transition is
    followed.  No backtracking.  If the walk ends in a non-accepting state
    the cuts after the last accepting state are undone.
    """
    dfa = stripper.dfa
    state = dfa.initial
    residue = word
    stripped: list[Morpheme] = []
    keep = (residue, 0)
    while True:
        best = None
        for label, target in dfa.outgoing(state):
            entry = stripper.entries[label]
            for allomorph in entry.allomorphs:
                if not _cuttable(residue, allomorph, stripper.min_stem_len):
                    continue
                rank = (-len(allomorph.surface), label)
                if best is None or rank < best[0]:
                    best = (rank, entry, allomorph, target)
        if best is None:
            break
        _, entry, allomorph, target = best
        end = len(residue)
        residue = residue[: -len(allomorph.surface)]
        stripped.append(
            Morpheme(
                fsm_id=entry.fsm_id,
                suff_id=entry.suff_id,
                surface=allomorph.surface,
                generic_name=entry.generic_name,
                span=(len(residue), end),
                source_state=state,
                target_state=target,
            )
        )
        state = target
        if state in dfa.accepting:
            keep = (residue, len(stripped))
    residue, count = keep
    return residue, stripped[:count]


def strip_prefixes(
    word: str, prefix_entries: Iterable[AffixEntry], min_stem_len: int = DEFAULT_MIN_STEM_LEN
) -> tuple[str, list[Morpheme]]:
    """Remove at most one prefix, the longest one that leaves a long enough stem."""
    best = None
    for entry in prefix_entries:
        for allomorph in entry.allomorphs:
            surface = allomorph.surface
            if len(surface) >= len(word) or not word.startswith(surface):
                continue
            verdict = check_exceptions(word, allomorph)
            if verdict is Verdict.PASS:
                continue
            if verdict is Verdict.DEFAULT and letter_count(word[len(surface):]) < min_stem_len:
                continue
            rank = (-len(surface), entry.suff_id)
            if best is None or rank < best[0]:
                best = (rank, entry, surface)
    if best is None:
        return word, []
    _, entry, surface = best
    morpheme = Morpheme(
        fsm_id=entry.fsm_id,
        suff_id=entry.suff_id,
        surface=surface,
        generic_name=entry.generic_name,
        span=(0, len(surface)),
        is_prefix=True,
    )
    return word[len(surface):], [morpheme]


# --------------------------------------------------------------------------
# Configuration
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PathConfig:
    paths: tuple[PathSpec, ...]
    min_stem_len: Mapping[int, int] = field(default_factory=dict)
    hooks: tuple[str, ...] = ()


def _resolve_class(lexicon: Lexicon, name: str, where: str) -> int:
    try:
        return lexicon.class_by_name(name).fsm_id
    except KeyError:
        raise ConfigError(f"{where}: unknown affix class {name!r}") from None


def parse_path_config(text: str, lexicon: Lexicon, source: str = "<paths>") -> PathConfig:
    """Parse ``path`` / ``hint`` / ``min-stem-len`` / ``hook`` records."""
    paths: dict[int, PathSpec] = {}
    hints: dict[int, str] = {}
    min_len: dict[int, int] = {}
    hooks: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "path":
            id_text, _, body = rest.partition(" ")
            if "->" not in body:
                raise ConfigError(f"{where}: expected 'path ID CLASS, ... -> TERMINAL'")
            seq_text, _, terminal_text = body.rpartition("->")
            try:
                path_id = int(id_text)
                terminal = Terminal(terminal_text.strip())
            except ValueError:
                raise ConfigError(f"{where}: bad path id or terminal in {raw.strip()!r}") from None
            names = [n.strip() for n in seq_text.split(",") if n.strip()]
            if not names:
                raise ConfigError(f"{where}: path {path_id} has no classes")
            if path_id in paths:
                raise ConfigError(f"{where}: path {path_id} defined twice")
            sequence = tuple(_resolve_class(lexicon, n, where) for n in names)
            paths[path_id] = PathSpec(path_id, sequence, terminal)
        elif keyword == "hint":
            id_text, _, hint = rest.partition(" ")
            try:
                hints[int(id_text)] = hint.strip()
            except ValueError:
                raise ConfigError(f"{where}: bad path id {id_text!r}") from None
        elif keyword == "min-stem-len":
            name, _, value = rest.rpartition(" ")
            try:
                n = int(value)
            except ValueError:
                raise ConfigError(f"{where}: bad length {value!r}") from None
            if n < 1:
                raise ConfigError(f"{where}: length must be positive")
            min_len[_resolve_class(lexicon, name, where)] = n
        elif keyword == "hook":
            if rest and rest != "none":
                hooks.append(rest)
        else:
            raise ConfigError(f"{where}: unknown record {keyword!r}")
    if not paths:
        raise ConfigError(f"{source}: no paths defined")
    for path_id in hints:
        if path_id not in paths:
            raise ConfigError(f"{source}: hint for undefined path {path_id}")
    specs = tuple(
        replace(spec, word_class_hint=hints.get(pid, "")) for pid, spec in sorted(paths.items())
    )
    return PathConfig(paths=specs, min_stem_len=min_len, hooks=tuple(hooks))


PostHook = Callable[[StemResult], StemResult]
POST_HOOKS: dict[str, PostHook] = {}


def register_post_hook(name: str) -> Callable[[PostHook], PostHook]:
    """Register a function applied to the winning analysis when named in config."""

    def decorator(func: PostHook) -> PostHook:
        POST_HOOKS[name] = func
        return func

    return decorator


@dataclass(frozen=True)
class MainFsm:
    """Compiled class strippers plus the analysis paths; immutable."""

    strippers: Mapping[int, ClassStripper]
    paths: tuple[PathSpec, ...]
    prefix_entries: tuple[AffixEntry, ...] = ()
    prefix_min_stem_len: int = DEFAULT_MIN_STEM_LEN
    terminals: Mapping[Terminal, int] = field(default_factory=dict)
    hooks: tuple[str, ...] = ()

    def path(self, path_id: int) -> PathSpec:
        for spec in self.paths:
            if spec.path_id == path_id:
                return spec
        raise UnknownPath(f"no path with id {path_id}")


def compile_stripper(
    lexicon: Lexicon, ltr: LtrFsm, min_stem_len: int = DEFAULT_MIN_STEM_LEN
) -> ClassStripper:
    entries = lexicon.class_entries(ltr.fsm_id)
    # re-validate labels against the class inventory
    build_ltr(ltr.state_count, ltr.transitions, ltr.epsilon_edges, labels=entries, fsm_id=ltr.fsm_id)
    return ClassStripper(
        fsm_id=ltr.fsm_id, dfa=compile_ltr(ltr), entries=entries, min_stem_len=min_stem_len
    )


def compile_main_fsm(
    lexicon: Lexicon,
    topologies: Mapping[int, LtrFsm],
    config: PathConfig,
    min_stem_len: int = DEFAULT_MIN_STEM_LEN,
) -> MainFsm:
    terminals = {
        t: _resolve_class(lexicon, name, "terminal")
        for t, name in _TERMINAL_CLASS.items()
        if t is not Terminal.PREFIXES
    }
    needed: set[int] = set()
    for spec in config.paths:
        needed.update(spec.stripper_sequence)
        if spec.terminal_output is not Terminal.PREFIXES:
            needed.add(terminals[spec.terminal_output])
    strippers = {}
    for fsm_id in sorted(needed):
        if fsm_id not in topologies:
            raise ConfigError(f"class {fsm_id} is used by a path but has no topology")
        strippers[fsm_id] = compile_stripper(
            lexicon, topologies[fsm_id], config.min_stem_len.get(fsm_id, min_stem_len)
        )
    for name in config.hooks:
        if name not in POST_HOOKS:
            raise ConfigError(f"unknown post hook {name!r}")
    prefix_id = _resolve_class(lexicon, _TERMINAL_CLASS[Terminal.PREFIXES], "terminal")
    prefix_entries = tuple(lexicon.class_entries(prefix_id).values())
    return MainFsm(
        strippers=strippers,
        paths=tuple(sorted(config.paths, key=lambda p: p.path_id)),
        prefix_entries=prefix_entries,
        prefix_min_stem_len=config.min_stem_len.get(prefix_id, min_stem_len),
        terminals=terminals,
        hooks=config.hooks,
    )


# --------------------------------------------------------------------------
# Paths and selection
# --------------------------------------------------------------------------


def _pos_trace(morphemes: Sequence[Morpheme], main: MainFsm) -> tuple[str, ...]:
    trace = []
    for m in morphemes:
        if m.is_prefix:
            entry = next(e for e in main.prefix_entries if e.suff_id == m.suff_id)
        else:
            entry = main.strippers[m.fsm_id].entries[m.suff_id]
        if entry.old_pos or entry.new_pos:
            trace.append(f"{entry.old_pos or '?'}→{entry.new_pos or '?'}")
    return tuple(trace)


def _word_text(word: NormalizedWord | str) -> str:
    return word.text if isinstance(word, NormalizedWord) else word


def run_path(word: NormalizedWord | str, path: PathSpec, main: MainFsm) -> StemResult:
    """Push ``word`` through one analysis path."""
    text = _word_text(word)
    strippers = main.strippers
    for fsm_id in path.stripper_sequence:
        if fsm_id not in strippers:
            raise UnknownPath(f"path {path.path_id}: class {fsm_id} is not compiled")
    residue = text
    morphemes: list[Morpheme] = []
    if is_strippable(text):
        for fsm_id in path.stripper_sequence:
            residue, stripped = strip_class(residue, strippers[fsm_id])
            morphemes.extend(stripped)
        if path.terminal_output is Terminal.PREFIXES:
            residue, stripped = strip_prefixes(residue, main.prefix_entries, main.prefix_min_stem_len)
        else:
            fsm_id = main.terminals.get(path.terminal_output)
            if fsm_id not in strippers:
                raise UnknownPath(
                    f"path {path.path_id}: terminal {path.terminal_output.value} is not compiled"
                )
            residue, stripped = strip_class(residue, strippers[fsm_id])
        morphemes.extend(stripped)
    return StemResult(
        word=text,
        stem=residue,
        morphemes=tuple(morphemes),
        path_id=path.path_id,
        pos_trace=_pos_trace(morphemes, main),
        word_class_hint=path.word_class_hint,
    )


def _rank(result: StemResult) -> tuple[int, int, int]:
    return (len(result.morphemes), result.stripped_chars, -result.path_id)


def stem(raw: str, main: MainFsm, keep_candidates: bool = False) -> StemResult:
    """Stem one token: run every path, keep the one stripping most morphemes.

    Ties go to more stripped characters, then to the lower path id.
    """
    word = normalize(raw)
    results = [run_path(word, spec, main) for spec in main.paths]
    winner = max(results, key=_rank)
    if keep_candidates:
        losers = tuple(r for r in results if r is not winner)
        winner = replace(winner, candidates=losers)
    for name in main.hooks:
        winner = POST_HOOKS[name](winner)
    return winner
