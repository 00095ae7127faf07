"""Elimination of surface sugar, and relativization of sentences.

Desugaring removes everything atom-sorted: membership X(x) becomes
at(x) & x sub X, an atom binder becomes a set binder over a fresh
uppercase name guarded by at(.), and each min/max occurrence inside an
atomic formula is replaced by a fresh guarded witness (an atom with no
atom strictly below, respectively above, it) scoped at that atomic
formula.  Fresh names come from a deterministic counter that skips every
identifier of the input.
"""

from __future__ import annotations

from .nodes import (And, At, AtomVar, Eq, Exle, ExistsAtom, ExistsSet,
                    ForallAtom, ForallSet, Formula, Iff, Implies, MAX, MIN,
                    MaxAtom, Mem, MinAtom, Not, SetVar, Subset,
                    all_identifiers, fresh_names, is_sentence, rebuild,
                    subformulas, substitute_term, terms_of)


def is_desugared(f: Formula) -> bool:
    if isinstance(f, (Mem, ExistsAtom, ForallAtom)):
        return False
    if any(isinstance(t, (MinAtom, MaxAtom)) for t in terms_of(f)):
        return False
    return all(is_desugared(g) for g in subformulas(f))


def desugar(f: Formula) -> Formula:
    fresh = fresh_names(f, upper=True)
    return _desugar(f, fresh)


def _desugar(f: Formula, fresh) -> Formula:
    if isinstance(f, ExistsAtom):
        body = _desugar(f.body, fresh)
        v = SetVar(next(fresh))
        body = substitute_term(body, AtomVar(f.var), v)
        return ExistsSet(v.name, And(At(v), body))
    if isinstance(f, ForallAtom):
        body = _desugar(f.body, fresh)
        v = SetVar(next(fresh))
        body = substitute_term(body, AtomVar(f.var), v)
        return ForallSet(v.name, Implies(At(v), body))
    kids = subformulas(f)
    if kids:
        return rebuild(f, tuple(_desugar(g, fresh) for g in kids))
    return _desugar_atomic(f, fresh)


def _desugar_atomic(f: Formula, fresh) -> Formula:
    if isinstance(f, Mem):
        f = And(At(f.atom), Subset(f.atom, f.container))
        return _desugar(f, fresh)
    terms = terms_of(f)
    if any(isinstance(t, MinAtom) for t in terms):
        v = SetVar(next(fresh))
        core = substitute_term(f, MIN, v)
        return ExistsSet(v.name, And(_endpoint_guard(v, fresh, smallest=True),
                                     _desugar_atomic(core, fresh)))
    if any(isinstance(t, MaxAtom) for t in terms):
        v = SetVar(next(fresh))
        core = substitute_term(f, MAX, v)
        return ExistsSet(v.name, And(_endpoint_guard(v, fresh, smallest=False),
                                     _desugar_atomic(core, fresh)))
    return f


def _endpoint_guard(v: SetVar, fresh, smallest: bool) -> Formula:
    w = SetVar(next(fresh))
    below = Exle(w, v) if smallest else Exle(v, w)
    return And(At(v), Not(ExistsSet(w.name, And(At(w), below))))


def relativize(f: Formula, var: str, mode: str) -> Formula:
    """Restrict a sentence to a substructure.

    mode "element": the sentence evaluated inside the downward-closed world
    of subsets of the set variable ``var`` (which must not occur in f, and
    f must be a desugared sentence).

    mode "below_atom": the sentence evaluated on the strict predecessors of
    the atom variable ``var``; the result has that variable free.
    """
    if mode == "element":
        return relativize_to_element(f, var)
    if mode == "below_atom":
        return relativize_below_atom(f, var)
    raise ValueError(f"unknown relativization mode: {mode!r}")


def relativize_to_element(f: Formula, var: str) -> Formula:
    if not is_sentence(f):
        raise ValueError("relativization needs a sentence")
    if not is_desugared(f):
        raise ValueError("relativization needs desugared input")
    bound = SetVar(var)
    return _rel(f, bound)


def _rel(f: Formula, bound: SetVar) -> Formula:
    if isinstance(f, ExistsSet):
        if f.var == bound.name:
            raise ValueError(f"relativization variable {bound.name!r} occurs in the sentence")
        return ExistsSet(f.var, And(Subset(SetVar(f.var), bound), _rel(f.body, bound)))
    if isinstance(f, ForallSet):
        if f.var == bound.name:
            raise ValueError(f"relativization variable {bound.name!r} occurs in the sentence")
        return ForallSet(f.var, Implies(Subset(SetVar(f.var), bound), _rel(f.body, bound)))
    kids = subformulas(f)
    if kids:
        return rebuild(f, tuple(_rel(g, bound) for g in kids))
    return f


def relativize_below_atom(f: Formula, var: str) -> Formula:
    if not is_sentence(f):
        raise ValueError("relativization needs a sentence")
    if not is_desugared(f):
        raise ValueError("relativization needs desugared input")
    x = AtomVar(var)
    used = set(all_identifiers(f)) | {var}
    w = next(f"X{i}" for i in range(len(used) + 1) if f"X{i}" not in used)
    z = next(f"x{i}" for i in range(len(used) + 1) if f"x{i}" not in used)
    world = SetVar(w)
    zb = AtomVar(z)
    footprint = ForallAtom(z, Iff(Mem(zb, world),
                                  And(Exle(zb, x), Not(Eq(zb, x)))))
    return ExistsSet(w, And(footprint, relativize_to_element(f, w)))
