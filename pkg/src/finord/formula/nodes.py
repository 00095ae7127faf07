"""AST for the two-sorted surface language over ordered set structures.

Terms are set variables (uppercase initial), atom variables (lowercase
initial), the empty element ``bot``, and the sugar constants ``min``/``max``.
Formulas combine the relations =, sub (inclusion), << (some atom of the left
strictly precedes some atom of the right), at(.) (atomhood), and membership
sugar X(x), under the usual connectives and the four quantifier kinds.

Variable sort is determined by the casing of the first character, and the
constructors enforce it, so binding is by bare name without ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass


def _check_ident(name: str) -> None:
    if not name or not (name[0].isalpha()) or not name.replace("_", "").isalnum():
        raise ValueError(f"bad identifier: {name!r}")


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class SetVar(Term):
    name: str

    def __post_init__(self) -> None:
        _check_ident(self.name)
        if not self.name[0].isupper():
            raise ValueError(f"set variable must start uppercase: {self.name!r}")


@dataclass(frozen=True)
class AtomVar(Term):
    name: str

    def __post_init__(self) -> None:
        _check_ident(self.name)
        if not self.name[0].islower():
            raise ValueError(f"atom variable must start lowercase: {self.name!r}")


@dataclass(frozen=True)
class Bot(Term):
    pass


@dataclass(frozen=True)
class MinAtom(Term):
    pass


@dataclass(frozen=True)
class MaxAtom(Term):
    pass


BOT = Bot()
MIN = MinAtom()
MAX = MaxAtom()


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Subset(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Exle(Formula):
    """Some atom of ``left`` lies strictly before some atom of ``right``."""
    left: Term
    right: Term


@dataclass(frozen=True)
class At(Formula):
    arg: Term


@dataclass(frozen=True)
class Mem(Formula):
    """X(x): the atom denoted by ``atom`` belongs to the set ``container``."""
    atom: Term
    container: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ExistsSet(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_ident(self.var)
        if not self.var[0].isupper():
            raise ValueError(f"ex2 binds an uppercase name: {self.var!r}")


@dataclass(frozen=True)
class ForallSet(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_ident(self.var)
        if not self.var[0].isupper():
            raise ValueError(f"all2 binds an uppercase name: {self.var!r}")


@dataclass(frozen=True)
class ExistsAtom(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_ident(self.var)
        if not self.var[0].islower():
            raise ValueError(f"ex1 binds a lowercase name: {self.var!r}")


@dataclass(frozen=True)
class ForallAtom(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_ident(self.var)
        if not self.var[0].islower():
            raise ValueError(f"all1 binds a lowercase name: {self.var!r}")


_ATOMIC = (Eq, Subset, Exle)
_BINARY = (And, Or, Implies, Iff)
_QUANT = (ExistsSet, ForallSet, ExistsAtom, ForallAtom)


def terms_of(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, _ATOMIC):
        return (f.left, f.right)
    if isinstance(f, At):
        return (f.arg,)
    if isinstance(f, Mem):
        return (f.atom, f.container)
    return ()


def subformulas(f: Formula) -> tuple[Formula, ...]:
    """Immediate children."""
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, _QUANT):
        return (f.body,)
    return ()


def rebuild(f: Formula, children: tuple[Formula, ...]) -> Formula:
    if isinstance(f, Not):
        return Not(children[0])
    if isinstance(f, _BINARY):
        return type(f)(children[0], children[1])
    if isinstance(f, _QUANT):
        return type(f)(f.var, children[0])
    return f


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, _QUANT):
        return free_vars(f.body) - {f.var}
    names: set[str] = set()
    for t in terms_of(f):
        if isinstance(t, (SetVar, AtomVar)):
            names.add(t.name)
    for g in subformulas(f):
        names |= free_vars(g)
    return frozenset(names)


def free_set_vars(f: Formula) -> frozenset[str]:
    return frozenset(n for n in free_vars(f) if n[0].isupper())


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def all_identifiers(f: Formula) -> frozenset[str]:
    """Every variable name occurring anywhere, binders included."""
    names: set[str] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, _QUANT):
            names.add(g.var)
        for t in terms_of(g):
            if isinstance(t, (SetVar, AtomVar)):
                names.add(t.name)
        for h in subformulas(g):
            walk(h)

    walk(f)
    return frozenset(names)


def fresh_names(f: Formula, upper: bool = True):
    """Deterministic generator of names unused anywhere in f."""
    used = set(all_identifiers(f))
    stem = "X" if upper else "x"
    i = 0
    while True:
        cand = f"{stem}{i}"
        i += 1
        if cand not in used:
            used.add(cand)
            yield cand


def substitute_term(f: Formula, old: Term, new: Term) -> Formula:
    """Replace every occurrence of the term ``old`` by ``new``.

    Purely textual on terms; the caller is responsible for avoiding capture
    and for stopping at binders that rebind the name.
    """
    if isinstance(f, _QUANT):
        if isinstance(old, (SetVar, AtomVar)) and old.name == f.var:
            return f
        return type(f)(f.var, substitute_term(f.body, old, new))
    if isinstance(f, _ATOMIC):
        return type(f)(_sub(f.left, old, new), _sub(f.right, old, new))
    if isinstance(f, At):
        return At(_sub(f.arg, old, new))
    if isinstance(f, Mem):
        return Mem(_sub(f.atom, old, new), _sub(f.container, old, new))
    kids = subformulas(f)
    if kids:
        return rebuild(f, tuple(substitute_term(g, old, new) for g in kids))
    return f


def _sub(t: Term, old: Term, new: Term) -> Term:
    return new if t == old else t


def quantifier_depths(f: Formula) -> tuple[int, int]:
    """(max nesting of set binders, max nesting of atom binders)."""
    s = a = 0
    for g in subformulas(f):
        gs, ga = quantifier_depths(g)
        s, a = max(s, gs), max(a, ga)
    if isinstance(f, (ExistsSet, ForallSet)):
        s += 1
    if isinstance(f, (ExistsAtom, ForallAtom)):
        a += 1
    return s, a


def sort_errors(f: Formula) -> list[str]:
    """Violations of the sorting discipline; empty when well-sorted.

    Constructor checks already pin casing, so what remains is where each
    sort may appear: membership needs an atom-sorted element of a
    set-sorted container, and the atom-order sugar relates atom-sorted
    terms.
    """
    errs: list[str] = []

    def walk(g: Formula) -> None:
        if isinstance(g, Mem):
            if not isinstance(g.atom, (AtomVar, MinAtom, MaxAtom)):
                errs.append(f"membership needs an atom-sorted element: {g}")
            if not isinstance(g.container, (SetVar, Bot)):
                errs.append(f"membership needs a set-sorted container: {g}")
        for h in subformulas(g):
            walk(h)

    walk(f)
    return errs


def check_sorts(f: Formula) -> None:
    errs = sort_errors(f)
    if errs:
        raise ValueError("; ".join(errs))
