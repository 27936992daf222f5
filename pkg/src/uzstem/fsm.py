"""Morphotactic automata: left-to-right graph, reversed NFA, stripping DFA.

Transition labels are affix ids (``suff_id``) of a single class, not
characters.  A class is described left to right, outward from the stem:
state 1 is the stem, state 0 is the end of the word.  Reversing that graph
gives a nondeterministic machine that reads affixes right to left, and the
subset construction turns it into the deterministic stripper.
"""

from __future__ import annotations

import string
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .exceptions import AutomatonError, DanglingState, TopologyFormatError, UnknownLabel

INITIAL = 1
FINAL = 0
EPSILON = "ε"

Edge = tuple[int, int, int]
EpsEdge = tuple[int, int]


@dataclass(frozen=True)
class LtrFsm:
    state_count: int
    transitions: tuple[Edge, ...]
    epsilon_edges: tuple[EpsEdge, ...] = ()
    fsm_id: int | None = None
    initial: int = INITIAL
    final: int = FINAL

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(label for _, label, _ in self.transitions)

    def as_nfa(self) -> Nfa:
        """The same machine read left to right (no reversal)."""
        return Nfa(
            transitions=self.transitions,
            epsilon_edges=self.epsilon_edges,
            initial=frozenset({self.initial}),
            finals=frozenset({self.final}),
            states=frozenset(range(self.state_count)),
        )

    def accepts(self, labels: Sequence[int]) -> bool:
        return self.as_nfa().accepts(labels)


@dataclass(frozen=True)
class Nfa:
    transitions: tuple[Edge, ...]
    epsilon_edges: tuple[EpsEdge, ...]
    initial: frozenset[int]
    finals: frozenset[int]
    states: frozenset[int] = frozenset()
    fsm_id: int | None = None

    def __post_init__(self):
        if not self.states:
            found = set(self.initial) | set(self.finals)
            for a, _, b in self.transitions:
                found.update((a, b))
            for a, b in self.epsilon_edges:
                found.update((a, b))
            object.__setattr__(self, "states", frozenset(found))

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(label for _, label, _ in self.transitions)

    def move(self, states: Iterable[int], label: int) -> frozenset[int]:
        sources = set(states)
        return frozenset(b for a, lab, b in self.transitions if lab == label and a in sources)

    def accepts(self, labels: Sequence[int]) -> bool:
        current = epsilon_closure(self, self.initial)
        for label in labels:
            current = epsilon_closure(self, self.move(current, label))
            if not current:
                return False
        return bool(current & self.finals)


@dataclass(frozen=True)
class Dfa:
    """Deterministic stripper; each state remembers its NFA state set."""

    states: tuple[tuple[str, frozenset[int]], ...]
    transitions: Mapping[tuple[str, int], str]
    initial: str
    accepting: frozenset[str]
    move_sets: Mapping[tuple[str, int], frozenset[int]] = field(default_factory=dict)
    fsm_id: int | None = None

    @property
    def state_names(self) -> list[str]:
        return [name for name, _ in self.states]

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(label for _, label in self.transitions)

    def nfa_set(self, name: str) -> frozenset[int]:
        for state, subset in self.states:
            if state == name:
                return subset
        raise KeyError(name)

    def outgoing(self, name: str) -> list[tuple[int, str]]:
        return sorted(
            (label, target) for (state, label), target in self.transitions.items() if state == name
        )

    def target(self, name: str, label: int) -> str | None:
        return self.transitions.get((name, label))

    def accepts(self, labels: Sequence[int]) -> bool:
        state = self.initial
        for label in labels:
            state = self.transitions.get((state, label))
            if state is None:
                return False
        return state in self.accepting

    def as_nfa(self) -> Nfa:
        """Reinterpret this DFA as an NFA over integer states (in state order)."""
        index = {name: i for i, (name, _) in enumerate(self.states)}
        return Nfa(
            transitions=tuple(
                sorted((index[s], label, index[t]) for (s, label), t in self.transitions.items())
            ),
            epsilon_edges=(),
            initial=frozenset({index[self.initial]}),
            finals=frozenset(index[name] for name in self.accepting),
            states=frozenset(index.values()),
            fsm_id=self.fsm_id,
        )


Machine = Union[LtrFsm, Nfa, Dfa]


# --------------------------------------------------------------------------
# Construction stages
# --------------------------------------------------------------------------


def build_ltr(
    state_count: int,
    edges: Iterable[Edge],
    epsilon_edges: Iterable[EpsEdge] = (),
    labels: Iterable[int] | None = None,
    fsm_id: int | None = None,
) -> LtrFsm:
    """Validate a left-to-right topology.

    ``labels`` is the set of suffix ids available in the class; when given,
    every edge label must belong to it.  Every state must lie on some path
    from the stem state 1 to the end state 0.
    """
    edges = tuple(sorted(set(edges)))
    epsilon_edges = tuple(sorted(set(epsilon_edges)))
    if state_count < 2:
        raise AutomatonError(f"need at least states 0 and 1, got state_count={state_count}")
    for a, b in [(a, b) for a, _, b in edges] + list(epsilon_edges):
        for s in (a, b):
            if not 0 <= s < state_count:
                raise AutomatonError(f"state {s} out of range 0..{state_count - 1}")
    allowed = None if labels is None else frozenset(labels)
    for a, label, b in edges:
        if allowed is not None and label not in allowed:
            raise UnknownLabel(f"edge ({a}, {label}, {b}): suffix id {label} is not in the class")
        if a == FINAL:
            raise AutomatonError(f"edge ({a}, {label}, {b}): final state 0 has outgoing label")

    succ: dict[int, set[int]] = defaultdict(set)
    pred: dict[int, set[int]] = defaultdict(set)
    for a, _, b in edges:
        succ[a].add(b)
        pred[b].add(a)
    for a, b in epsilon_edges:
        succ[a].add(b)
        pred[b].add(a)
    forward = _reach({INITIAL}, succ)
    backward = _reach({FINAL}, pred)
    dangling = sorted(set(range(state_count)) - (forward & backward))
    if dangling:
        raise DanglingState(
            f"states {dangling} are not on any path from state {INITIAL} to state {FINAL}"
        )
    return LtrFsm(state_count=state_count, transitions=edges, epsilon_edges=epsilon_edges, fsm_id=fsm_id)


def _reach(start: set[int], graph: Mapping[int, set[int]]) -> set[int]:
    seen = set(start)
    stack = list(start)
    while stack:
        for nxt in graph.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def reverse(ltr: LtrFsm) -> Nfa:
    """Flip every edge so the machine reads affixes from the word end inward."""
    return Nfa(
        transitions=tuple(sorted((b, label, a) for a, label, b in ltr.transitions)),
        epsilon_edges=tuple(sorted((b, a) for a, b in ltr.epsilon_edges)),
        initial=frozenset({ltr.final}),
        finals=frozenset({ltr.initial}),
        states=frozenset(range(ltr.state_count)),
        fsm_id=ltr.fsm_id,
    )


def epsilon_closure(nfa: Nfa, states: Iterable[int]) -> frozenset[int]:
    succ: dict[int, list[int]] = defaultdict(list)
    for a, b in nfa.epsilon_edges:
        succ[a].append(b)
    seen = set(states)
    stack = list(seen)
    while stack:
        for nxt in succ.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def state_name(index: int) -> str:
    """A, B, ..., Z, AA, AB, ..."""
    letters = string.ascii_uppercase
    name = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        name = letters[rem] + name
    return name


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction with ε-closure after every move.

    States are discovered breadth-first from the initial closure, labels in
    ascending order, and named A, B, C, ... in that order.  The empty subset
    is never created: a missing transition simply means "no move".
    """
    labels = sorted(nfa.labels)
    by_source: dict[tuple[int, int], list[int]] = defaultdict(list)
    for a, label, b in nfa.transitions:
        by_source[(a, label)].append(b)

    start = epsilon_closure(nfa, nfa.initial)
    names: dict[frozenset[int], str] = {start: state_name(0)}
    order = [start]
    transitions: dict[tuple[str, int], str] = {}
    move_sets: dict[tuple[str, int], frozenset[int]] = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for label in labels:
            moved = frozenset(b for s in subset for b in by_source.get((s, label), ()))
            if not moved:
                continue
            target = epsilon_closure(nfa, moved)
            if target not in names:
                names[target] = state_name(len(order))
                order.append(target)
                queue.append(target)
            transitions[(names[subset], label)] = names[target]
            move_sets[(names[subset], label)] = moved

    return Dfa(
        states=tuple((names[s], s) for s in order),
        transitions=transitions,
        initial=names[start],
        accepting=frozenset(names[s] for s in order if s & nfa.finals),
        move_sets=move_sets,
        fsm_id=nfa.fsm_id,
    )


def compile_ltr(ltr: LtrFsm) -> Dfa:
    return determinize(reverse(ltr))


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def compress_labels(labels: Iterable[int]) -> str:
    """Render label ids the way affix tables do: ``1-5``, ``9,10,17``."""
    values = sorted(set(labels))
    parts: list[str] = []
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] == values[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{values[i]}-{values[j]}")
        else:
            parts.extend(str(v) for v in values[i : j + 1])
        i = j + 1
    return ",".join(parts)


def format_set(states: Iterable[int]) -> str:
    return "{" + ",".join(str(s) for s in sorted(states)) + "}"


def _edge_groups(machine: Machine) -> list[tuple[str, str, str]]:
    grouped: dict[tuple[str, str], set[int]] = defaultdict(set)
    eps: set[tuple[str, str]] = set()
    if isinstance(machine, Dfa):
        for (src, label), dst in machine.transitions.items():
            grouped[(src, dst)].add(label)
    else:
        for a, label, b in machine.transitions:
            grouped[(str(a), str(b))].add(label)
        eps = {(str(a), str(b)) for a, b in machine.epsilon_edges}
    rows = [(src, dst, compress_labels(lbls)) for (src, dst), lbls in grouped.items()]
    rows += [(src, dst, EPSILON) for src, dst in eps]
    return sorted(rows, key=_edge_sort_key)


def _edge_sort_key(row: tuple[str, str, str]):
    src, dst, label = row
    return (_node_key(src), _node_key(dst), label)


def _node_key(name: str):
    return (0, int(name), "") if name.isdigit() else (1, len(name), name)


def _nodes(machine: Machine) -> tuple[list[str], set[str], set[str]]:
    if isinstance(machine, Dfa):
        return machine.state_names, {machine.initial}, set(machine.accepting)
    if isinstance(machine, LtrFsm):
        nodes = [str(s) for s in range(machine.state_count)]
        return nodes, {str(machine.initial)}, {str(machine.final)}
    nodes = sorted((str(s) for s in machine.states), key=_node_key)
    return nodes, {str(s) for s in machine.initial}, {str(s) for s in machine.finals}


def export_dot(machine: Machine, title: str | None = None) -> str:
    """GraphViz digraph; accepting states are drawn as double circles."""
    nodes, initial, accepting = _nodes(machine)
    if title is None:
        kind = {LtrFsm: "ltr", Nfa: "nfa", Dfa: "dfa"}[type(machine)]
        title = kind if machine.fsm_id is None else f"class {machine.fsm_id} {kind}"
    lines = [f'digraph "{title}" {{', "  rankdir=LR;", "  node [shape=circle];"]
    for n, name in enumerate(sorted(initial, key=_node_key)):
        lines.append(f"  __start{n} [shape=point];")
        lines.append(f"  __start{n} -> {name};")
    for name in nodes:
        shape = "doublecircle" if name in accepting else "circle"
        if isinstance(machine, Dfa):
            label = f"{name}={format_set(machine.nfa_set(name))}"
            lines.append(f'  {name} [shape={shape}, label="{label}"];')
        else:
            lines.append(f"  {name} [shape={shape}];")
    for src, dst, label in _edge_groups(machine):
        lines.append(f'  {src} -> {dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_table(machine: Machine) -> str:
    """Plain-text transition table.

    For a DFA each row reads ``A={0,1,2}  "1-5" : T={1,7} → B``, i.e. the
    state with its NFA set, a group of labels, the raw move set and the
    target state.
    """
    lines: list[str] = []
    if isinstance(machine, Dfa):
        for name, subset in machine.states:
            head = f"{name}={format_set(subset)}"
            groups: dict[tuple[str, frozenset[int]], list[int]] = defaultdict(list)
            for label, target in machine.outgoing(name):
                moved = machine.move_sets.get((name, label), frozenset())
                groups[(target, moved)].append(label)
            flag = " *" if name in machine.accepting else ""
            if not groups:
                lines.append(f"{head}{flag}  (no transitions)")
            rows = sorted(groups.items(), key=lambda kv: min(kv[1]))
            for (target, moved), labels in rows:
                move = f" : T={format_set(moved)}" if moved else ""
                lines.append(f'{head}{flag}  "{compress_labels(labels)}"{move} → {target}')
        return "\n".join(lines) + "\n"
    nodes, initial, accepting = _nodes(machine)
    lines.append(f"initial {' '.join(sorted(initial, key=_node_key))}")
    lines.append(f"final {' '.join(sorted(accepting, key=_node_key))}")
    for src, dst, label in _edge_groups(machine):
        lines.append(f"{src} {label} → {dst}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Topology files
# --------------------------------------------------------------------------


def parse_topology(text: str, labels: Iterable[int] | None = None, source: str = "<topology>") -> LtrFsm:
    """Read ``class N states M`` / ``edge FROM SUFF_ID TO`` / ``eps FROM TO`` lines."""
    fsm_id = state_count = None
    edges: list[Edge] = []
    eps: list[EpsEdge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "class" and len(parts) == 4 and parts[2] == "states":
                if fsm_id is not None:
                    raise TopologyFormatError(f"{source}:{lineno}: duplicate header")
                fsm_id, state_count = int(parts[1]), int(parts[3])
            elif parts[0] == "edge" and len(parts) == 4:
                edges.append((int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "eps" and len(parts) == 3:
                eps.append((int(parts[1]), int(parts[2])))
            else:
                raise TopologyFormatError(f"{source}:{lineno}: cannot parse {raw.strip()!r}")
        except ValueError:
            raise TopologyFormatError(f"{source}:{lineno}: expected integers in {raw.strip()!r}")
    if fsm_id is None:
        raise TopologyFormatError(f"{source}: missing 'class N states M' header")
    try:
        return build_ltr(state_count, edges, eps, labels=labels, fsm_id=fsm_id)
    except AutomatonError as exc:
        raise type(exc)(f"{source}: {exc}") from exc


def serialize_topology(ltr: LtrFsm) -> str:
    lines = [f"class {ltr.fsm_id if ltr.fsm_id is not None else 0} states {ltr.state_count}"]
    lines += [f"eps {a} {b}" for a, b in sorted(ltr.epsilon_edges)]
    lines += [f"edge {a} {label} {b}" for a, label, b in sorted(ltr.transitions)]
    return "\n".join(lines) + "\n"


def load_topologies(directory: str | Path) -> dict[int, LtrFsm]:
    """Load every ``*.fsm`` file of a directory, keyed by class id."""
    directory = Path(directory)
    if not directory.is_dir():
        raise TopologyFormatError(f"{directory}: topology directory not found")
    machines: dict[int, LtrFsm] = {}
    for path in sorted(directory.glob("*.fsm")):
        ltr = parse_topology(path.read_text(encoding="utf-8"), source=str(path))
        if ltr.fsm_id in machines:
            raise TopologyFormatError(f"{path}: class {ltr.fsm_id} defined twice")
        machines[ltr.fsm_id] = ltr
    return machines
