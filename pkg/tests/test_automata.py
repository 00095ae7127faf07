"""DFA kernel: Boolean ops, projection, minimization, lasso extraction."""

import random

import pytest

from finord import (Dfa, ResourceLimitError, UPSet, combine, complement,
                    concat, cylindrify, equivalent, lasso_spectrum, minimize,
                    project, to_dot, unary_dfa)
from finord.automata import _cube_cover


def all_x():
    """One track; accepts words whose X-bit is set at every position."""
    return Dfa(("X",), ((1, 0), (1, 1)), frozenset([0]))


def some_x():
    """One track; accepts words with at least one X-bit."""
    return Dfa(("X",), ((0, 1), (1, 1)), frozenset([1]))


def _random_dfa(rng, tracks):
    size = 1 << len(tracks)
    n = rng.randrange(1, 5)
    rows = tuple(tuple(rng.randrange(n) for _ in range(size))
                 for _ in range(n))
    accepting = frozenset(s for s in range(n) if rng.random() < 0.5)
    return Dfa(tracks, rows, accepting, rng.randrange(n))


def _words(width, upto):
    yield []
    stack = [[]]
    while stack:
        w = stack.pop()
        if len(w) == upto:
            continue
        for letter in range(1 << width):
            nxt = w + [letter]
            yield nxt
            stack.append(nxt)


def test_validation():
    with pytest.raises(ValueError):
        Dfa(("Y", "X"), ((0, 0, 0, 0),), frozenset())     # unsorted tracks
    with pytest.raises(ValueError):
        Dfa(("X",), ((0,),), frozenset())                  # row too short
    with pytest.raises(ValueError):
        Dfa(("X",), ((0, 2), (0, 1)), frozenset())         # bad target
    with pytest.raises(ValueError):
        Dfa((), ((0,),), frozenset([1]))                   # bad accepting
    with pytest.raises(ValueError):
        Dfa((), (), frozenset())                           # no states


def test_accepts_and_combine():
    both = combine(all_x(), some_x(), "and")
    assert both.accepts([1])
    assert not both.accepts([])
    assert not both.accepts([0, 1])
    either = combine(all_x(), some_x(), "or")
    assert either.accepts([]) and either.accepts([0, 1])
    with pytest.raises(ValueError):
        combine(all_x(), some_x(), "xor")


def test_complement_and_de_morgan_on_random_dfas():
    rng = random.Random(13)
    for _ in range(40):
        tracks = ((), ("X",), ("X", "Y"))[rng.randrange(3)]
        a = _random_dfa(rng, tracks)
        b = _random_dfa(rng, tracks)
        assert equivalent(complement(complement(a)), a)
        lhs = complement(combine(a, b, "and"))
        rhs = combine(complement(a), complement(b), "or")
        assert equivalent(lhs, rhs)
        assert equivalent(a, minimize(a))


def test_minimize_idempotent_and_canonical():
    rng = random.Random(17)
    for _ in range(40):
        a = _random_dfa(rng, ("X",))
        m = minimize(a)
        assert minimize(m) == m
    # same language built two ways gives structurally equal automata
    e1 = minimize(combine(all_x(), some_x(), "or"))
    e2 = minimize(complement(combine(complement(some_x()),
                                     complement(all_x()), "and")))
    assert e1 == e2


def test_minimize_collapses_redundant_all_accepting():
    red = Dfa((), ((1,), (2,), (3,), (0,)), frozenset([0, 1, 2, 3]))
    assert minimize(red).n_states == 1


def test_cylindrify_preserves_language():
    wide = cylindrify(all_x(), ("X", "Y"))
    assert wide.tracks == ("X", "Y")
    for word in _words(2, 4):
        shrunk = [letter & 1 for letter in word]
        assert wide.accepts(word) == all_x().accepts(shrunk)
    with pytest.raises(ValueError):
        cylindrify(all_x(), ("Y",))


def test_project_examples():
    anylen = project(all_x(), "X")
    assert anylen.tracks == ()
    assert anylen.accepts([]) and anylen.accepts([0, 0, 0])
    # exists X agreeing with Y pointwise: trivially true
    eq_xy = Dfa(("X", "Y"), ((0, 1, 1, 0), (1, 1, 1, 1)), frozenset([0]))
    ex_x = project(eq_xy, "X")
    assert ex_x.tracks == ("Y",)
    assert equivalent(ex_x, Dfa(("Y",), ((0, 0),), frozenset([0])))
    with pytest.raises(ValueError):
        project(all_x(), "Z")


def test_projection_vs_word_oracle():
    rng = random.Random(23)
    for _ in range(25):
        a = _random_dfa(rng, ("X", "Y"))
        p = project(a, "Y")
        for word in _words(1, 4):
            n = len(word)
            want = any(a.accepts([word[i] | (((combo >> i) & 1) << 1)
                                  for i in range(n)])
                       for combo in range(1 << n))
            assert p.accepts(word) == want


def test_equivalent():
    assert equivalent(all_x(), all_x())
    assert not equivalent(all_x(), some_x())
    # different tracks are unified first
    top1 = Dfa((), ((0,),), frozenset([0]))
    top2 = Dfa(("X",), ((0, 0),), frozenset([0]))
    assert equivalent(top1, top2)


def test_lasso_roundtrip_on_random_upsets():
    rng = random.Random(29)
    for _ in range(150):
        n = rng.randrange(0, 5)
        d = rng.randrange(1, 6)
        s = UPSet(n, d,
                  frozenset(x for x in range(n) if rng.random() < 0.5),
                  frozenset(r for r in range(d) if rng.random() < 0.5)
                  ).canonicalize()
        assert lasso_spectrum(unary_dfa(s)) == s
        # membership agrees with direct acceptance well past the lasso
        dfa = unary_dfa(s)
        for k in range(n + 3 * d + 2):
            assert dfa.accepts([0] * k) == s.member(k)


def test_lasso_requires_sentence_automaton():
    with pytest.raises(ValueError):
        lasso_spectrum(all_x())


def test_concat_adds_lengths():
    rng = random.Random(31)
    for _ in range(40):
        def rnd():
            n = rng.randrange(0, 4)
            d = rng.randrange(1, 5)
            return UPSet(n, d,
                         frozenset(x for x in range(n) if rng.random() < 0.5),
                         frozenset(r for r in range(d) if rng.random() < 0.5)
                         ).canonicalize()
        a, b = rnd(), rnd()
        got = lasso_spectrum(concat(unary_dfa(a), unary_dfa(b)))
        bound = a.threshold + b.threshold + 4 * a.period * b.period + 2
        want = {x + y for x in a.members_upto(bound) for y in b.members_upto(bound)}
        assert [k for k in range(bound) if got.member(k)] == \
            sorted(x for x in want if x < bound)
    with pytest.raises(ValueError):
        concat(all_x(), unary_dfa(UPSet.naturals()))


def test_state_cap():
    with pytest.raises(ResourceLimitError):
        combine(all_x(), some_x(), "and", cap=1)
    with pytest.raises(ResourceLimitError):
        project(all_x(), "X", cap=1)


def test_state_cap_env_override(monkeypatch):
    monkeypatch.setenv("FINORD_STATE_CAP", "1")
    with pytest.raises(ResourceLimitError):
        combine(all_x(), some_x(), "and")
    monkeypatch.setenv("FINORD_STATE_CAP", "zero")
    with pytest.raises(ValueError):
        combine(all_x(), some_x(), "and")


def test_to_dot_shape():
    dot = to_dot(minimize(some_x()))
    assert dot.startswith("digraph")
    assert "doublecircle" in dot
    assert "rankdir=LR" in dot
    assert '"()"' in to_dot(unary_dfa(UPSet.naturals()))


def test_cube_cover():
    assert _cube_cover({0, 1}, 2) == ["·0"]
    assert _cube_cover({0, 1, 2, 3}, 2) == ["··"]
    assert _cube_cover({0, 3}, 2) == ["00", "11"]
    assert _cube_cover({1, 3}, 2) == ["1·"]
    assert _cube_cover({5}, 3) == ["101"]
