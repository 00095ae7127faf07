"""Limit points of the finite orders: residue tables, their arithmetic,
and three-valued decision of sentences at a point.

A completed model is either a finite size (``Fin(n)``) or an infinite point
described by a residue function (``Inf(spec)``): a coherent choice of
``r(p, j) mod p^j`` per prime power, stored at the maximal power per prime.
``ZeroShift(c)`` is the everywhere-defined function ``d ↦ c mod d``; partial
tables describe families of points, and questions they cannot settle come
back ``UNDETERMINED`` rather than defaulting.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .compiler import spectrum
from .formula.nodes import Formula, Not
from .upsets import UPSet, to_normal_form


class Undetermined:
    """Singleton third truth value for questions a partial table leaves
    open; refuses boolean coercion so it can never silently count as an
    answer."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undetermined"

    def __bool__(self) -> bool:
        raise TypeError("Undetermined does not coerce to a boolean")


UNDETERMINED = Undetermined()


class ResidueSpec:
    """Base of the two residue-function descriptions."""


@dataclass(frozen=True)
class Table(ResidueSpec):
    """Finite residue choices, one ``prime_power -> residue`` entry per
    prime (the maximal stored power)."""
    entries: tuple[tuple[int, int], ...]

    def __init__(self, entries=()):
        if hasattr(entries, "items"):
            pairs = tuple(entries.items())
        else:
            pairs = tuple(tuple(e) for e in entries)
        for pair in pairs:
            if len(pair) != 2 or not all(isinstance(x, int) for x in pair):
                raise ValueError(f"table entry must be (prime power, residue): {pair!r}")
        object.__setattr__(self, "entries", tuple(sorted(pairs)))


@dataclass(frozen=True)
class ZeroShift(ResidueSpec):
    """The total residue function of the natural number c: d ↦ c mod d."""
    c: int

    def __post_init__(self):
        if not isinstance(self.c, int) or self.c < 0:
            raise ValueError("shift must be a natural number")


class TypePoint:
    """Base of the two completion descriptions."""


@dataclass(frozen=True)
class Fin(TypePoint):
    """The theory of the n-atom model."""
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("size must be a natural number")


@dataclass(frozen=True)
class Inf(TypePoint):
    """An infinite completion (or family of them) fixed by a residue
    function; satisfies every lower size bound."""
    spec: ResidueSpec

    def __post_init__(self):
        if not isinstance(self.spec, ResidueSpec):
            raise ValueError("Inf needs a ResidueSpec")


def _prime_power(k: int) -> tuple[int, int] | None:
    """(p, j) with k = p**j, or None if k is not a prime power."""
    if k < 2:
        return None
    p = None
    m = k
    for q in range(2, k + 1):
        if q * q > m:
            p = m if p is None else p
            break
        if m % q == 0:
            p = q
            break
    while m % p == 0:
        m //= p
    if m != 1:
        return None
    j = 0
    while k > 1:
        k //= p
        j += 1
    return p, j


def _factorize(d: int) -> dict[int, int]:
    out: dict[int, int] = {}
    m = d
    q = 2
    while q * q <= m:
        while m % q == 0:
            out[q] = out.get(q, 0) + 1
            m //= q
        q += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def validate(spec: ResidueSpec) -> list[str]:
    """Invariant violations as human-readable strings; empty means ok."""
    if isinstance(spec, ZeroShift):
        return []
    if not isinstance(spec, Table):
        return [f"unknown spec variant {type(spec).__name__}"]
    problems = []
    primes_seen: set[int] = set()
    for key, value in spec.entries:
        pp = _prime_power(key)
        if pp is None:
            problems.append(f"key {key} is not a prime power")
            continue
        p, _j = pp
        if p in primes_seen:
            problems.append(f"prime {p} stored more than once")
        primes_seen.add(p)
        if not 0 <= value < key:
            problems.append(f"residue {value} not reduced modulo {key}")
    return problems


def _checked(spec: ResidueSpec) -> ResidueSpec:
    problems = validate(spec)
    if problems:
        raise ValueError("invalid residue table: " + "; ".join(problems))
    return spec


def crt_solve(congruences) -> int:
    """The unique x below the product of the (pairwise coprime) moduli with
    x ≡ residue (mod modulus) for every pair."""
    x, modulus = 0, 1
    for m, r in congruences:
        if not (isinstance(m, int) and isinstance(r, int)) or m < 1:
            raise ValueError(f"bad congruence ({m}, {r})")
        if gcd(modulus, m) != 1:
            raise ValueError(f"moduli are not pairwise coprime at {m}")
        r %= m
        # lift: x + modulus * t ≡ r (mod m)
        t = ((r - x) * pow(modulus, -1, m)) % m if m > 1 else 0
        x += modulus * t
        modulus *= m
    return x


def residue_extend(spec: ResidueSpec, d: int):
    """The induced residue mod d (< d), UNDETERMINED when a table lacks the
    needed prime-power coverage."""
    if not isinstance(d, int) or d <= 1:
        raise ValueError("modulus must exceed 1")
    _checked(spec)
    if isinstance(spec, ZeroShift):
        return spec.c % d
    stored = {}
    for key, value in spec.entries:
        p, j = _prime_power(key)
        stored[p] = (j, value)
    congruences = []
    for p, e in _factorize(d).items():
        if p not in stored:
            return UNDETERMINED
        j, value = stored[p]
        if j < e:
            return UNDETERMINED
        congruences.append((p ** e, value % p ** e))
    return crt_solve(congruences)


def rep(v: int, d: int) -> int:
    """Residue-class representative in {1..d}: 0 is spoken for by d."""
    v %= d
    return d if v == 0 else v


def point_models(point: TypePoint, f: Formula, *, cap: int | None = None):
    """Does the completed model satisfy the sentence — True, False, or
    UNDETERMINED (partial tables only)."""
    s = spectrum(f, cap=cap)
    if isinstance(point, Fin):
        return s.member(point.n)
    if not isinstance(point, Inf):
        raise ValueError(f"unknown point variant {type(point).__name__}")
    nf = to_normal_form(s)
    if nf.period == 1:
        return 1 in nf.classes
    v = residue_extend(point.spec, nf.period)
    if v is UNDETERMINED:
        return UNDETERMINED
    return rep(v, nf.period) in nf.classes


def _shift(spec: ResidueSpec, m: int) -> ResidueSpec:
    if isinstance(spec, ZeroShift):
        return ZeroShift(spec.c + m)
    return Table(tuple((key, (value + m) % key) for key, value in spec.entries))


def point_mul(p: TypePoint, q: TypePoint) -> TypePoint:
    """The concatenation product of completions: sizes add; an infinite
    side absorbs a finite one as a shift; two tables add residue-wise at
    each prime's common power level."""
    if isinstance(p, Fin) and isinstance(q, Fin):
        return Fin(p.n + q.n)
    if isinstance(p, Fin):
        return Inf(_shift(_checked(q.spec), p.n))
    if isinstance(q, Fin):
        return Inf(_shift(_checked(p.spec), q.n))
    s, t = _checked(p.spec), _checked(q.spec)
    if isinstance(s, ZeroShift) and isinstance(t, ZeroShift):
        return Inf(ZeroShift(s.c + t.c))
    if isinstance(s, ZeroShift):
        return Inf(_shift(t, s.c))
    if isinstance(t, ZeroShift):
        return Inf(_shift(s, t.c))
    left = {_prime_power(key)[0]: (_prime_power(key)[1], value)
            for key, value in s.entries}
    entries = []
    for key, value in t.entries:
        prime, level = _prime_power(key)
        if prime not in left:
            continue
        other_level, other_value = left[prime]
        k = prime ** min(level, other_level)
        entries.append((k, (value + other_value) % k))
    return Inf(Table(tuple(entries)))


def pseudofinite_valid(f: Formula, *, cap: int | None = None) -> bool:
    """True when the sentence holds in every finite model (spectrum = ℕ)."""
    return spectrum(f, cap=cap) == UPSet(0, 1, frozenset(), frozenset([0]))


def satisfiable_witness(f: Formula, *, cap: int | None = None) -> int | None:
    """Least finite model size satisfying the sentence, None if there is
    none (equivalently: the negation holds in every finite model)."""
    s = spectrum(f, cap=cap)
    for n in range(s.threshold + s.period):
        if s.member(n):
            return n
    return None


def format_point(point: TypePoint) -> str:
    """One-line point serialization: fin:<n>, inf:zero+<c>, or
    inf:<p>^<j>=<r>;... (ascending primes, maximal powers)."""
    if isinstance(point, Fin):
        return f"fin:{point.n}"
    if isinstance(point, Inf):
        spec = point.spec
        if isinstance(spec, ZeroShift):
            return f"inf:zero+{spec.c}"
        if isinstance(spec, Table):
            _checked(spec)
            parts = []
            for key, value in sorted(spec.entries,
                                     key=lambda e: _prime_power(e[0])[0]):
                p, j = _prime_power(key)
                parts.append(f"{p}^{j}={value}")
            return "inf:" + ";".join(parts)
    raise ValueError(f"cannot serialize {point!r}")


def parse_point(text: str) -> TypePoint:
    """Inverse of format_point (exact roundtrip)."""
    body = text.strip()
    if body.startswith("fin:"):
        return Fin(_nat(body[4:]))
    if not body.startswith("inf:"):
        raise ValueError(f"not a point serialization: {text!r}")
    rest = body[4:]
    if rest.startswith("zero+"):
        return Inf(ZeroShift(_nat(rest[5:])))
    entries = []
    if rest:
        for part in rest.split(";"):
            head, eq, value = part.partition("=")
            base, caret, exponent = head.partition("^")
            if not eq or not caret or not value:
                raise ValueError(f"malformed table entry: {part!r}")
            p, j = _nat(base), _nat(exponent)
            entries.append((p ** j, _nat(value)))
    point = Inf(Table(tuple(entries)))
    if format_point(point) != body:
        raise ValueError(f"not in canonical point form: {text!r}")
    return point


def _nat(text: str) -> int:
    if not text.isdigit():
        raise ValueError(f"expected a natural number, got {text!r}")
    return int(text)
