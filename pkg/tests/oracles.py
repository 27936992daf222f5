"""Reference implementations the library is checked against.

Each one takes a different route from the code under test: plain recursion
for affix expansion, depth-first path search over the left-to-right graph
for automaton acceptance.
"""

import random

from uzstem.exceptions import DanglingState
from uzstem.fsm import build_ltr
from uzstem.lexicon import PLACEHOLDERS


def expansion_oracle(name: str) -> set[str]:
    name = name.strip("-")

    def walk(s: str) -> set[str]:
        if not s:
            return {""}
        if s[0] == "(":
            close = s.index(")")
            inner = walk(s[1:close]) | {""}
            return {a + b for a in inner for b in walk(s[close + 1 :])}
        heads = set(PLACEHOLDERS.get(s[0], (s[0],)))
        return {h + t for h in heads for t in walk(s[1:])}

    return walk(name)


def random_generic(rng: random.Random) -> str:
    letters = "abdeilmnorstuvxyz"
    caps = "".join(PLACEHOLDERS)
    parts = []
    for _ in range(rng.randint(1, 5)):
        r = rng.random()
        if r < 0.3:
            parts.append(rng.choice(caps))
        elif r < 0.5:
            inner = "".join(rng.choice(letters + caps) for _ in range(rng.randint(1, 2)))
            parts.append(f"({inner})")
        else:
            parts.append(rng.choice(letters))
    if all(p.startswith("(") for p in parts):
        parts.append(rng.choice(letters))
    return "-" + "".join(parts)


def ltr_path_oracle(ltr, rtl_labels) -> bool:
    """Is there a 1 -> 0 path in the left-to-right graph spelling the labels
    in reading order (the stripping sequence reversed)?"""
    word = list(reversed(rtl_labels))
    out = {}
    for a, label, b in ltr.transitions:
        out.setdefault(a, []).append((label, b))
    for a, b in ltr.epsilon_edges:
        out.setdefault(a, []).append((None, b))
    seen = set()

    def dfs(state, i):
        if (state, i) in seen:
            return False
        seen.add((state, i))
        if i == len(word) and state == ltr.final:
            return True
        for label, nxt in out.get(state, ()):
            if label is None and dfs(nxt, i):
                return True
            if label is not None and i < len(word) and label == word[i] and dfs(nxt, i + 1):
                return True
        return False

    return dfs(ltr.initial, 0)


def random_topology(rng: random.Random, n_labels: int = 4, max_states: int = 6):
    while True:
        n = rng.randint(2, max_states)
        edges = {
            (rng.randrange(1, n), rng.randint(1, n_labels), rng.randrange(n))
            for _ in range(rng.randint(1, 3 * n))
        }
        eps = {(rng.randrange(1, n), rng.randrange(n)) for _ in range(rng.randint(0, n))}
        eps = {(a, b) for a, b in eps if a != b}
        try:
            return build_ltr(n, edges, eps)
        except DanglingState:
            continue
