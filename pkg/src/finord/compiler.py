"""Translate formulas to word automata, and read off sentence spectra.

A word of length n over {0,1}^w stands for the n-atom order together with
one subset of positions per track.  Compilation is structural: atomic
formulas get small hand-built automata, connectives map to the Boolean
automaton operations, and a set quantifier projects its variable's track
away (universal quantification via double complement).  For a sentence the
result has no tracks, and its accepted lengths — extracted from the unary
transition lasso — are exactly the model sizes satisfying the sentence.
"""

from __future__ import annotations

from . import automata as au
from .automata import Dfa, effective_state_cap
from .formula.nodes import (And, At, Bot, Eq, ExistsSet, Exle, FalseF,
                            ForallSet, Formula, Iff, Implies, Not, Or,
                            SetVar, Subset, Term, TrueF, check_sorts,
                            fresh_names, is_sentence, rebuild, subformulas,
                            substitute_term, terms_of)
from .formula.sugar import desugar, is_desugared
from .upsets import UPSet

_ATOMIC = (Eq, Subset, Exle, At)


def base_automaton(atomic: Formula) -> Dfa:
    """Minimal complete DFA for one relational atomic formula over set
    variables and the empty-set constant."""
    if not isinstance(atomic, _ATOMIC):
        raise ValueError(f"unsupported atomic form: {atomic!r}")
    terms = terms_of(atomic)
    for t in terms:
        if not isinstance(t, (SetVar, Bot)):
            raise ValueError(f"unsupported term in atomic formula: {t!r}")
    tracks = tuple(sorted({t.name for t in terms if isinstance(t, SetVar)}))

    def bit(term: Term):
        if isinstance(term, Bot):
            return lambda letter: 0
        j = tracks.index(term.name)
        return lambda letter: (letter >> j) & 1

    size = 1 << len(tracks)
    if isinstance(atomic, At):
        x = bit(atomic.arg)
        # 0 = no member yet, 1 = exactly one (accept), 2 = too many
        rows = (tuple(1 if x(l) else 0 for l in range(size)),
                tuple(2 if x(l) else 1 for l in range(size)),
                tuple(2 for _ in range(size)))
        return au.minimize(Dfa(tracks, rows, frozenset([1])))
    if isinstance(atomic, Exle):
        x, y = bit(atomic.left), bit(atomic.right)
        # 0 = left side still empty, 1 = left member seen, 2 = accept;
        # a shared position never accepts (the underlying order is strict)
        rows = (tuple(1 if x(l) else 0 for l in range(size)),
                tuple(2 if y(l) else 1 for l in range(size)),
                tuple(2 for _ in range(size)))
        return au.minimize(Dfa(tracks, rows, frozenset([2])))
    x, y = bit(atomic.left), bit(atomic.right)
    if isinstance(atomic, Eq):
        ok = [x(l) == y(l) for l in range(size)]
    else:  # Subset
        ok = [x(l) <= y(l) for l in range(size)]
    rows = (tuple(0 if ok[l] else 1 for l in range(size)),
            tuple(1 for _ in range(size)))
    return au.minimize(Dfa(tracks, rows, frozenset([0])))


def compile(f: Formula, *, cap: int | None = None) -> Dfa:
    """Automaton whose words over the free variables' tracks are exactly
    the satisfying assignments; requires a desugared, well-sorted input."""
    check_sorts(f)
    if not is_desugared(f):
        raise ValueError("compile requires a desugared formula")
    cap = effective_state_cap(cap)
    key = (f, cap)
    cached = _COMPILE_CACHE.get(key)
    if cached is None:
        cached = _compile(_alpha_rename(f), cap)
        _COMPILE_CACHE[key] = cached
    return cached


def spectrum(f: Formula, *, cap: int | None = None) -> UPSet:
    """The canonical ultimately periodic set of model sizes satisfying the
    sentence f (surface sugar allowed)."""
    if not is_sentence(f):
        raise ValueError("spectrum requires a sentence")
    cap = effective_state_cap(cap)
    key = (f, cap)
    cached = _SPECTRUM_CACHE.get(key)
    if cached is None:
        cached = au.lasso_spectrum(compile(desugar(f), cap=cap))
        _SPECTRUM_CACHE[key] = cached
    return cached


_COMPILE_CACHE: dict = {}
_SPECTRUM_CACHE: dict = {}


def clear_caches() -> None:
    """Drop memoized compilation results (for cold timing runs)."""
    _COMPILE_CACHE.clear()
    _SPECTRUM_CACHE.clear()


def _compile(f: Formula, cap: int) -> Dfa:
    if isinstance(f, TrueF):
        return Dfa((), ((0,),), frozenset([0]))
    if isinstance(f, FalseF):
        return Dfa((), ((0,),), frozenset())
    if isinstance(f, _ATOMIC):
        return base_automaton(f)
    if isinstance(f, Not):
        return au.complement(_compile(f.body, cap))
    if isinstance(f, And):
        return au.combine(_compile(f.left, cap), _compile(f.right, cap),
                          "and", cap=cap)
    if isinstance(f, Or):
        return au.combine(_compile(f.left, cap), _compile(f.right, cap),
                          "or", cap=cap)
    if isinstance(f, Implies):
        return au.combine(au.complement(_compile(f.left, cap)),
                          _compile(f.right, cap), "or", cap=cap)
    if isinstance(f, Iff):
        a = _compile(f.left, cap)
        b = _compile(f.right, cap)
        both = au.combine(a, b, "and", cap=cap)
        neither = au.combine(au.complement(a), au.complement(b), "and",
                             cap=cap)
        return au.combine(both, neither, "or", cap=cap)
    if isinstance(f, ExistsSet):
        body = _compile(f.body, cap)
        if f.var in body.tracks:
            return au.project(body, f.var, cap=cap)
        return body
    if isinstance(f, ForallSet):
        body = au.complement(_compile(f.body, cap))
        if f.var in body.tracks:
            body = au.project(body, f.var, cap=cap)
        return au.complement(body)
    raise ValueError(f"cannot compile node {type(f).__name__}")


def _alpha_rename(f: Formula) -> Formula:
    """Give every bound set variable a unique fresh name so that one track
    per variable is unambiguous."""
    fresh = fresh_names(f, upper=True)

    def go(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, (ExistsSet, ForallSet)):
            name = next(fresh)
            body = go(g.body, {**env, g.var: name})
            return type(g)(name, body)
        kids = subformulas(g)
        if kids:
            return rebuild(g, tuple(go(k, env) for k in kids))
        for old, new in env.items():
            g = substitute_term(g, SetVar(old), SetVar(new))
        return g

    return go(f, {})
