"""Abelianized Fox calculus and the Magnus representation of Torelli classes.

The free derivative is taken with coefficients pushed down to the
group ring of the abelianization, i.e. Laurent polynomials in
t1..t{2g}: d(x_j)/d(x_i) = delta_ij and d(uv) = du + ab(u) dv.  For a
mapping class acting trivially on homology the matrix of derivatives
of generator images is multiplicative, which is the representation
exercised here.  Only this abelianized version is implemented; full
group-ring coefficients are never needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GenusMismatch, PreconditionError
from .jfilt import enumerate_curve_specs, in_Mk
from .mcg import commutator_auto


class LaurentPoly:
    """Integer Laurent polynomial in t1..t{2g}, sparse and immutable."""

    __slots__ = ("genus", "terms")

    def __init__(self, genus, terms=None):
        self.genus = genus
        clean = {}
        for exps, c in (terms or {}).items():
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, genus):
        return cls(genus)

    @classmethod
    def const(cls, genus, c):
        return cls(genus, {(0,) * (2 * genus): c})

    @classmethod
    def one(cls, genus):
        return cls.const(genus, 1)

    @classmethod
    def monomial(cls, genus, exps, coeff=1):
        return cls(genus, {tuple(exps): coeff})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * (2 * self.genus): 1}

    def _check(self, other):
        if self.genus != other.genus:
            raise GenusMismatch("polynomials of different genus")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.genus, terms)

    def __neg__(self):
        return LaurentPoly(self.genus, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.genus, terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.genus == other.genus and self.terms == other.terms

    def __hash__(self):
        return hash((self.genus, tuple(sorted(self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = " ".join(
                f"t{i+1}^{e}" if e != 1 else f"t{i+1}"
                for i, e in enumerate(exps)
                if e
            )
            body = mono if mono else "1"
            chunks.append(f"{'+' if c > 0 else '-'} {abs(c)}*{body}")
        out = " ".join(chunks)
        return out[2:] if out.startswith("+ ") else out

    def as_json(self):
        return [
            {"exponents": list(e), "coeff": str(c)}
            for e, c in sorted(self.terms.items())
        ]


def abelianized(w):
    """Exponent vector of a word in the abelianization."""
    v = [0] * (2 * w.genus)
    for ell in w.letters:
        v[abs(ell) - 1] += 1 if ell > 0 else -1
    return tuple(v)


def fox_derivative(w, i):
    """Abelianized free derivative of w with respect to x_i."""
    genus = w.genus
    terms = {}
    prefix = [0] * (2 * genus)
    for ell in w.letters:
        j = abs(ell)
        if ell > 0:
            if j == i:
                key = tuple(prefix)
                terms[key] = terms.get(key, 0) + 1
            prefix[j - 1] += 1
        else:
            prefix[j - 1] -= 1
            if j == i:
                key = tuple(prefix)
                terms[key] = terms.get(key, 0) - 1
    return LaurentPoly(genus, terms)


# -- matrices ----------------------------------------------------------


def magnus_rep(f):
    """Matrix (d f(x_j) / d x_i)_{ij} for a homologically trivial class.

    Multiplicative on such classes because no coefficient twisting
    occurs; non-Torelli input is rejected.
    """
    if not in_Mk(f, 1):
        raise PreconditionError(
            "the Magnus representation is defined on homologically "
            "trivial classes only"
        )
    n = 2 * f.genus
    return tuple(
        tuple(fox_derivative(f.images[j], i + 1) for j in range(n))
        for i in range(n)
    )


def rep_identity(genus):
    n = 2 * genus
    return tuple(
        tuple(
            LaurentPoly.one(genus) if i == j else LaurentPoly.zero(genus)
            for j in range(n)
        )
        for i in range(n)
    )


def rep_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def rep_equal(a, b):
    return all(p == q for ra, rb in zip(a, b) for p, q in zip(ra, rb))


def rep_as_json(m):
    return [[entry.as_json() for entry in row] for row in m]


# -- kernel-element scan -------------------------------------------------


@dataclass(frozen=True)
class SuzukiHit:
    """A separating pair whose twist commutator the representation misses."""

    c1: str
    c2: str


def suzuki_scan(genus, budget):
    """Enumerate separating curve pairs hunting for nontrivial classes
    with identity Magnus matrix.

    Best effort within the pair budget; every hit is re-verified
    (commutator nontrivial as an automorphism, Torelli, identity
    matrix).  An empty result is not a disproof.
    """
    if genus < 2:
        raise PreconditionError("separating curves require genus >= 2")
    if budget <= 0:
        return []
    from .curve import resolve  # local import to keep module load light

    specs = []
    gen = enumerate_curve_specs(genus, separating_only=True)
    seen = set()
    while len(specs) < max(3, budget // 2):
        d = next(gen)
        t = resolve(d).twist
        if t in seen:
            continue
        seen.add(t)
        specs.append((d, t))

    hits = []
    tested = 0
    identity = rep_identity(genus)
    for a in range(len(specs)):
        for b in range(a + 1, len(specs)):
            if tested >= budget:
                return hits
            tested += 1
            (da, ta), (db, tb) = specs[a], specs[b]
            comm = commutator_auto(ta, tb)
            if comm.is_identity():
                continue
            if not in_Mk(comm, 1):
                continue  # cannot happen for separating pairs; safety net
            if rep_equal(magnus_rep(comm), identity):
                hits.append(SuzukiHit(c1=da.to_text(), c2=db.to_text()))
    return hits
