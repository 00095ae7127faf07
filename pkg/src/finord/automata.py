"""Complete DFAs over bit-vector alphabets, one bit per named track.

A word of length n over {0,1}^w encodes an n-atom order together with one
subset of its positions per track: letter bit j (value ``(letter >> j) & 1``)
says whether position i belongs to the set named ``tracks[j]``.  Boolean
combinations, track projection, minimization, equivalence, unary
concatenation, and lasso extraction are provided; every operation returns a
complete automaton and respects a configurable state cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .model import ResourceLimitError
from .upsets import UPSet

DEFAULT_STATE_CAP = 10 ** 5
STATE_CAP_ENV = "FINORD_STATE_CAP"


def effective_state_cap(cap: int | None = None) -> int:
    """The explicit cap if given, else the environment override, else the
    default."""
    if cap is not None:
        return cap
    raw = os.environ.get(STATE_CAP_ENV)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{STATE_CAP_ENV} must be an integer") from exc
        if value < 1:
            raise ValueError(f"{STATE_CAP_ENV} must be positive")
        return value
    return DEFAULT_STATE_CAP


@dataclass(frozen=True)
class Dfa:
    """Immutable complete DFA.  ``transitions[s][letter]`` is the successor
    of state s; the alphabet has exactly ``2 ** len(tracks)`` letters."""
    tracks: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    initial: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tracks", tuple(self.tracks))
        object.__setattr__(self, "transitions",
                           tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if list(self.tracks) != sorted(set(self.tracks)):
            raise ValueError("tracks must be strictly sorted names")
        n = len(self.transitions)
        if n == 0:
            raise ValueError("at least one state required")
        size = 1 << len(self.tracks)
        for row in self.transitions:
            if len(row) != size:
                raise ValueError("transition rows must cover the alphabet")
            for target in row:
                if not 0 <= target < n:
                    raise ValueError("transition target out of range")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if not all(0 <= s < n for s in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def width(self) -> int:
        return len(self.tracks)

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: int) -> int:
        return self.transitions[state][letter]

    def accepts(self, word) -> bool:
        state = self.initial
        for letter in word:
            if not 0 <= letter < (1 << self.width):
                raise ValueError(f"letter {letter} outside alphabet")
            state = self.transitions[state][letter]
        return state in self.accepting


def cylindrify(a: Dfa, tracks) -> Dfa:
    """The same language made indifferent to additional tracks."""
    tracks = tuple(tracks)
    if list(tracks) != sorted(set(tracks)):
        raise ValueError("tracks must be strictly sorted names")
    if not set(a.tracks) <= set(tracks):
        raise ValueError("new track list must contain the old tracks")
    if tracks == a.tracks:
        return a
    positions = [tracks.index(t) for t in a.tracks]
    width = len(tracks)
    lookup = [0] * (1 << width)
    for letter in range(1 << width):
        old = 0
        for j, pos in enumerate(positions):
            old |= ((letter >> pos) & 1) << j
        lookup[letter] = old
    rows = tuple(tuple(row[lookup[letter]] for letter in range(1 << width))
                 for row in a.transitions)
    return Dfa(tracks, rows, a.accepting, a.initial)


def _product_reachable(a: Dfa, b: Dfa, cap: int):
    """BFS over the synchronous product; returns (pairs in discovery order,
    index map, transition rows)."""
    if a.tracks != b.tracks:
        raise ValueError("product requires identical track lists")
    size = 1 << a.width
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    frontier = 0
    while frontier < len(order):
        s, t = order[frontier]
        frontier += 1
        row = []
        for letter in range(size):
            nxt = (a.transitions[s][letter], b.transitions[t][letter])
            at = index.get(nxt)
            if at is None:
                at = len(order)
                if at >= cap:
                    raise ResourceLimitError(
                        f"product exceeds state cap {cap}")
                index[nxt] = at
                order.append(nxt)
            row.append(at)
        rows.append(tuple(row))
    return order, rows


def combine(a: Dfa, b: Dfa, op: str, *, cap: int | None = None) -> Dfa:
    """Language intersection ("and") or union ("or"), over the unified
    track list, minimized."""
    if op not in ("and", "or"):
        raise ValueError('op must be "and" or "or"')
    cap = effective_state_cap(cap)
    tracks = tuple(sorted(set(a.tracks) | set(b.tracks)))
    a2, b2 = cylindrify(a, tracks), cylindrify(b, tracks)
    order, rows = _product_reachable(a2, b2, cap)
    keep = (all if op == "and" else any)
    accepting = frozenset(i for i, (s, t) in enumerate(order)
                          if keep((s in a2.accepting, t in b2.accepting)))
    return minimize(Dfa(tracks, tuple(rows), accepting, 0))


def complement(a: Dfa) -> Dfa:
    """Accepting-set flip; sound because automata are complete."""
    return Dfa(a.tracks, a.transitions,
               frozenset(range(a.n_states)) - a.accepting, a.initial)


def project(a: Dfa, track: str, *, cap: int | None = None) -> Dfa:
    """Erase one track existentially: accept a word when some assignment of
    the erased bits is accepted; subset construction, then minimized."""
    if track not in a.tracks:
        raise ValueError(f"no track named {track}")
    cap = effective_state_cap(cap)
    pos = a.tracks.index(track)
    rest = tuple(t for t in a.tracks if t != track)
    width = len(rest)
    lifts = []
    for letter in range(1 << width):
        low = letter & ((1 << pos) - 1)
        high = (letter >> pos) << (pos + 1)
        base = high | low
        lifts.append((base, base | (1 << pos)))
    start = frozenset([a.initial])
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    frontier = 0
    while frontier < len(order):
        subset = order[frontier]
        frontier += 1
        row = []
        for letter in range(1 << width):
            zero, one = lifts[letter]
            nxt = frozenset(a.transitions[s][zero] for s in subset) \
                | frozenset(a.transitions[s][one] for s in subset)
            at = index.get(nxt)
            if at is None:
                at = len(order)
                if at >= cap:
                    raise ResourceLimitError(
                        f"projection exceeds state cap {cap}")
                index[nxt] = at
                order.append(nxt)
            row.append(at)
        rows.append(tuple(row))
    accepting = frozenset(i for i, subset in enumerate(order)
                          if subset & a.accepting)
    return minimize(Dfa(rest, tuple(rows), accepting, 0))


def minimize(a: Dfa) -> Dfa:
    """Language-minimal DFA with states renumbered in breadth-first
    discovery order (letters ascending), so equal languages over equal
    tracks yield structurally equal automata."""
    size = 1 << a.width
    # reachable pruning
    reach = [a.initial]
    seen = {a.initial}
    for s in reach:
        for letter in range(size):
            t = a.transitions[s][letter]
            if t not in seen:
                seen.add(t)
                reach.append(t)
    # Moore partition refinement
    cls = {s: (1 if s in a.accepting else 0) for s in reach}
    while True:
        signatures: dict[tuple, int] = {}
        nxt = {}
        for s in reach:
            sig = (cls[s],) + tuple(cls[a.transitions[s][letter]]
                                    for letter in range(size))
            at = signatures.get(sig)
            if at is None:
                at = len(signatures)
                signatures[sig] = at
            nxt[s] = at
        if len(signatures) == len(set(cls.values())):
            cls = nxt
            break
        cls = nxt
    # canonical renumbering by BFS over classes
    rep: dict[int, int] = {}
    for s in reach:
        rep.setdefault(cls[s], s)
    renum = {cls[a.initial]: 0}
    order = [cls[a.initial]]
    for c in order:
        s = rep[c]
        for letter in range(size):
            t = cls[a.transitions[s][letter]]
            if t not in renum:
                renum[t] = len(order)
                order.append(t)
    rows = tuple(tuple(renum[cls[a.transitions[rep[c]][letter]]]
                       for letter in range(size))
                 for c in order)
    accepting = frozenset(renum[cls[s]] for s in reach if s in a.accepting)
    return Dfa(a.tracks, rows, accepting, 0)


def equivalent(a: Dfa, b: Dfa, *, cap: int | None = None) -> bool:
    """Language equality via emptiness of the symmetric difference, checked
    on the reachable product."""
    cap = effective_state_cap(cap)
    tracks = tuple(sorted(set(a.tracks) | set(b.tracks)))
    a2, b2 = cylindrify(a, tracks), cylindrify(b, tracks)
    order, _rows = _product_reachable(a2, b2, cap)
    return all((s in a2.accepting) == (t in b2.accepting)
               for s, t in order)


def concat(a: Dfa, b: Dfa, *, cap: int | None = None) -> Dfa:
    """Concatenation of two sentence (zero-track) languages; on unary
    alphabets this realizes addition of accepted lengths."""
    if a.width != 0 or b.width != 0:
        raise ValueError("concatenation is defined for zero-track automata")
    cap = effective_state_cap(cap)
    # NFA over states (0, s) from a and (1, t) from b; entering an accepting
    # a-state spawns b's initial state.
    def close(states: frozenset) -> frozenset:
        if any(side == 0 and s in a.accepting for side, s in states):
            return states | {(1, b.initial)}
        return states

    start = close(frozenset([(0, a.initial)]))
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    frontier = 0
    while frontier < len(order):
        subset = order[frontier]
        frontier += 1
        moved = frozenset((side, (a if side == 0 else b).transitions[s][0])
                          for side, s in subset)
        nxt = close(moved)
        at = index.get(nxt)
        if at is None:
            at = len(order)
            if at >= cap:
                raise ResourceLimitError(
                    f"concatenation exceeds state cap {cap}")
            index[nxt] = at
            order.append(nxt)
        rows.append((at,))
    accepting = frozenset(i for i, subset in enumerate(order)
                          if any(side == 1 and s in b.accepting
                                 for side, s in subset))
    return minimize(Dfa((), tuple(rows), accepting, 0))


def lasso_spectrum(a: Dfa) -> UPSet:
    """Accepted lengths of a sentence automaton, as a canonical ultimately
    periodic set: walk the unary chain until a state repeats; the prefix
    gives the finite part, the cycle the residues."""
    if a.width != 0:
        raise ValueError("lasso extraction needs a zero-track automaton")
    seen: dict[int, int] = {}
    chain: list[int] = []
    state = a.initial
    while state not in seen:
        seen[state] = len(chain)
        chain.append(state)
        state = a.transitions[state][0]
    tail = seen[state]
    cycle = len(chain) - tail
    init = frozenset(i for i in range(tail) if chain[i] in a.accepting)
    residues = frozenset(i % cycle for i in range(tail, tail + cycle)
                         if chain[i] in a.accepting)
    return UPSet(threshold=tail, period=cycle, init=init,
                 residues=residues).canonicalize()


def to_dot(a: Dfa) -> str:
    """Graphviz text: doublecircle = accepting; edge labels are bit
    patterns, leftmost character = first track, '·' = don't care; the empty
    pattern of a zero-track automaton prints as '()'."""
    lines = ["digraph dfa {", "  rankdir=LR;"]
    if a.tracks:
        lines.append(f"  // tracks: {', '.join(a.tracks)}")
    lines.append("  __start [shape=point];")
    lines.append(f"  __start -> q{a.initial};")
    for s in range(a.n_states):
        shape = "doublecircle" if s in a.accepting else "circle"
        lines.append(f"  q{s} [shape={shape}];")
    for s in range(a.n_states):
        by_target: dict[int, list[int]] = {}
        for letter, t in enumerate(a.transitions[s]):
            by_target.setdefault(t, []).append(letter)
        for t in sorted(by_target):
            patterns = _cube_cover(set(by_target[t]), a.width)
            label = ",".join(patterns) if a.width else "()"
            lines.append(f'  q{s} -> q{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cube_cover(letters: set[int], width: int) -> list[str]:
    """Greedy cover of a letter set by subcubes, each printed as a bit
    pattern with '·' at don't-care positions."""
    remaining = set(letters)
    patterns = []
    for seed in sorted(letters):
        if seed not in remaining:
            continue
        care = (1 << width) - 1
        value = seed
        for b in range(width):
            bit = 1 << b
            if not care & bit:
                continue
            members = _cube_members(care & ~bit, value & ~bit, width)
            if all(m in letters for m in members):
                care &= ~bit
                value &= ~bit
        remaining -= set(_cube_members(care, value, width))
        patterns.append("".join(
            "·" if not care & (1 << j) else str((value >> j) & 1)
            for j in range(width)))
    return patterns


def _cube_members(care: int, value: int, width: int) -> list[int]:
    free = [j for j in range(width) if not care & (1 << j)]
    members = []
    for filling in range(1 << len(free)):
        letter = value
        for i, j in enumerate(free):
            letter |= ((filling >> i) & 1) << j
        members.append(letter)
    return members
