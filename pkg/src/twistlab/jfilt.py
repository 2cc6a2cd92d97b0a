"""Johnson filtration membership and the intersection depth of curve pairs.

M(k) is the kernel of the mapping class action on the free group modulo
the (k+1)-st lower central term; membership is decided exactly through
the Magnus expansion of the generator displacements f(x_i) x_i^{-1}.
The depth function on a curve pair measures how far the commutator of
the two twists sinks into the filtration:

  * 0   -- the twists commute (decided exactly: the only class lying in
           every M(k) is the identity);
  * 1   -- the commutator acts nontrivially on homology, equivalently
           the algebraic intersection number is nonzero;
  * k+1 -- the commutator lies in M(k) but not M(k+1);
  * at-least values when the degree cap is exhausted.

The braid-relation flag reported for pairs is the standard
intersection-once criterion; it is used as a heuristic label only and
never enters an exactness claim.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .curve import (
    CurveSpec,
    algebraic_intersection,
    curves_equal,
    homology_action,
    identity_matrix,
    resolve,
)
from .errors import ConsistencyViolation, GenusMismatch, PreconditionError
from .magnus import magnus_expand
from .mcg import (
    FreeAutomorphism,
    builtin_table,
    commutator_auto,
    commutes,
    is_central,
)
from .word import Word


@dataclass(frozen=True)
class JFDepth:
    """Filtration depth of a single mapping class, up to a cap.

    kind: "identity" | "not_in_m1" | "exact" | "at_least".
    exact(k): in M(k) and not in M(k+1); at_least(k): in M(k), cap hit.
    """

    kind: str
    level: int | None = None

    def __str__(self):
        if self.kind in ("identity", "not_in_m1"):
            return self.kind
        return f"{self.kind}({self.level})"


@dataclass(frozen=True)
class JFValue:
    """Depth of a curve pair: zero | one | exact(k>=2) | at_least(k)."""

    kind: str
    value: int | None = None

    def label(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "one":
            return "1"
        if self.kind == "exact":
            return str(self.value)
        return f">={self.value}"

    def at_least_two(self):
        return self.kind in ("exact", "at_least")

    def __str__(self):
        return self.label()


def _displacements(f):
    for i, img in enumerate(f.images, start=1):
        yield img * Word.generator(f.genus, i, -1)


def in_Mk(f, k):
    """Does f act trivially on the free group mod its (k+1)-st term?"""
    if k < 1:
        raise PreconditionError("filtration level must be >= 1")
    for w in _displacements(f):
        if w.is_identity():
            continue
        s = magnus_expand(w, k)
        if s.lowest_nonzero_degree() is not None:
            return False
    return True


def _depth_from_lowest(lowest, cap):
    if lowest == 1:
        return JFDepth("not_in_m1")
    if lowest is None:
        return JFDepth("at_least", cap)
    # the action first deviates in degree `lowest`:
    # the class is in M(lowest - 1) and not in M(lowest)
    return JFDepth("exact", lowest - 1)


def johnson_depth(f, cap):
    """Certified filtration depth of f using degree-cap expansions."""
    if cap < 1:
        raise PreconditionError("cap must be >= 1")
    if f.is_identity():
        return JFDepth("identity")
    lowest = None
    for w in _displacements(f):
        if w.is_identity():
            continue
        d = magnus_expand(w, cap).lowest_nonzero_degree()
        if d is not None and (lowest is None or d < lowest):
            lowest = d
            if lowest == 1:
                break
    return _depth_from_lowest(lowest, cap)


def _series_difference_degree(p, q, cap):
    """Lowest degree where the expansions of two words disagree."""
    sp = magnus_expand(p, cap) if not p.is_identity() else None
    sq = magnus_expand(q, cap) if not q.is_identity() else None
    for d in range(1, cap + 1):
        tp = sp.degrees[d] if sp is not None else {}
        tq = sq.degrees[d] if sq is not None else {}
        if tp != tq:
            return d
    return None


def commutator_depth(f, g, cap):
    """Filtration depth of [f, g] without forming the commutator.

    [f,g] lies in M(k) iff fg and gf induce the same action on the
    class-(k) nilpotent quotient, i.e. iff the expansions of their
    generator images agree up to degree k.  Working with fg and gf
    keeps word lengths near the product of the input sizes, where the
    commutator itself would square them.
    """
    if cap < 1:
        raise PreconditionError("cap must be >= 1")
    fg = f.compose(g)
    gf = g.compose(f)
    if fg == gf:
        return JFDepth("identity")
    lowest = None
    for p, q in zip(fg.images, gf.images):
        if p == q:
            continue
        d = _series_difference_degree(p, q, cap)
        if d is not None and (lowest is None or d < lowest):
            lowest = d
            if lowest == 1:
                break
    return _depth_from_lowest(lowest, cap)


def commutator_in_Mk(f, g, k):
    """Membership of [f, g] in M(k), via the same action comparison."""
    if k < 1:
        raise PreconditionError("filtration level must be >= 1")
    depth = commutator_depth(f, g, k)
    if depth.kind in ("identity", "at_least"):
        return True
    if depth.kind == "not_in_m1":
        return False
    return depth.level >= k


def ijf(c1, c2, cap):
    """Filtration depth of the twist commutator of a curve pair.

    Zero is decided exactly via automorphism triviality, never by cap
    exhaustion.
    """
    if c1.genus != c2.genus:
        raise GenusMismatch("curve specs of different genus")
    depth = commutator_depth(resolve(c1).twist, resolve(c2).twist, cap)
    if depth.kind == "identity":
        return JFValue("zero")
    if depth.kind == "not_in_m1":
        return JFValue("one")
    if depth.kind == "exact":
        return JFValue("exact", depth.level + 1)
    return JFValue("at_least", depth.level + 1)


@dataclass(frozen=True)
class PairReport:
    """Full classification of a curve pair at a given depth cap."""

    genus: int
    c1: str
    c2: str
    commuting: bool
    braid: bool
    algebraic: int
    ijf: JFValue
    depth_cap: int

    def as_dict(self):
        return {
            "genus": self.genus,
            "c1": self.c1,
            "c2": self.c2,
            "commuting": self.commuting,
            "braid": self.braid,
            "algebraic": self.algebraic,
            "ijf": {"kind": self.ijf.kind, "value": self.ijf.value},
            "ijf_label": self.ijf.label(),
            "depth_cap": self.depth_cap,
        }


def check_consistency(report):
    """Raise unless the report satisfies the exact cross-detector laws."""
    r = report
    if r.commuting != (r.ijf.kind == "zero"):
        raise ConsistencyViolation(
            f"commuting <-> depth zero violated: {r}"
        )
    if r.ijf.at_least_two() != ((not r.commuting) and r.algebraic == 0):
        raise ConsistencyViolation(
            f"depth >= 2 <-> (crossing with zero algebraic) violated: {r}"
        )
    if (r.ijf.kind == "one") != (r.algebraic != 0):
        raise ConsistencyViolation(
            f"depth one <-> nonzero algebraic violated: {r}"
        )
    if r.braid and not r.commuting and r.ijf.kind != "one":
        raise ConsistencyViolation(
            f"braid pair must have depth one: {r}"
        )


def classify_pair(c1, c2, cap, check=True):
    """Classify a pair; with check=True the consistency laws are enforced."""
    if c1.genus != c2.genus:
        raise GenusMismatch("curve specs of different genus")
    t1 = resolve(c1).twist
    t2 = resolve(c2).twist
    report = PairReport(
        genus=c1.genus,
        c1=c1.to_text(),
        c2=c2.to_text(),
        commuting=commutes(t1, t2),
        braid=t1.compose(t2).compose(t1) == t2.compose(t1).compose(t2),
        algebraic=algebraic_intersection(c1, c2),
        ijf=ijf(c1, c2, cap),
        depth_cap=cap,
    )
    if check:
        check_consistency(report)
    return report


def johnson_leading_term(f, k):
    """Degree-(k+1) parts of the generator displacements of f in M(k).

    Returns one {monomial tuple: coefficient} table per generator; all
    tables are zero iff f also lies in M(k+1).
    """
    if not in_Mk(f, k):
        raise PreconditionError(f"automorphism is not in M({k})")
    tables = []
    for w in _displacements(f):
        if w.is_identity():
            tables.append({})
            continue
        s = magnus_expand(w, k + 1)
        tables.append(s.homogeneous_part(k + 1))
    return tables


def morita_check(f, g, kf, kg, cap):
    """Check [f, g] lands in M(kf+kg); a False return is an implementation bug."""
    if kf + kg > cap:
        raise PreconditionError("kf + kg exceeds the cap")
    if not in_Mk(f, kf):
        raise PreconditionError(f"first argument is not in M({kf})")
    if not in_Mk(g, kg):
        raise PreconditionError(f"second argument is not in M({kg})")
    return commutator_in_Mk(f, g, kf + kg)


# -- spec enumeration (witness searches, sampling) ---------------------


def enumerate_curve_specs(genus, separating_only=False):
    """Deterministic stream of curve specs: bases in table order,
    conjugators by length then lexicographically."""
    table = builtin_table(genus)
    bases = [
        n
        for n in table.essential_base_names()
        if not separating_only or table.entry(n).separating
    ]
    alphabet = [
        (n, e)
        for n in table.chain_names + table.sep_names
        for e in (1, -1)
    ]
    length = 0
    while True:
        for conj in itertools.product(alphabet, repeat=length):
            for base in bases:
                yield CurveSpec(genus, base, conj)
        length += 1


def distinguishing_witness(c1, c2, budget):
    """Search for a curve meeting exactly one of two distinct curves.

    Enumerates candidate specs (skipping those isotopic to either
    input) and returns the first d with the twist of d commuting with
    one input's twist and not the other's.  None after `budget`
    candidates is not a disproof.
    """
    if curves_equal(c1, c2):
        raise PreconditionError("inputs are the same curve")
    t1 = resolve(c1).twist
    t2 = resolve(c2).twist
    tested = 0
    for d in enumerate_curve_specs(c1.genus):
        if tested >= budget:
            return None
        tested += 1
        td = resolve(d).twist
        if td == t1 or td == t2:
            continue
        c1d = commutes(t1, td)
        c2d = commutes(t2, td)
        if c1d != c2d:
            return d
    return None


@dataclass(frozen=True)
class Fact5Verdict:
    """Outcome of sampling separating curves against a mapping class."""

    moved: CurveSpec | None

    @property
    def fixes_all_sampled(self):
        return self.moved is None


def fact5_instance(f, budget, genus=None):
    """Look for a separating curve moved by f.

    Central classes fix every curve, so the verdict for them is always
    FixesAllSampled; for non-central classes a moved separating curve
    exists and the sampler reports the first one found within budget.
    """
    genus = genus if genus is not None else f.genus
    if genus < 2:
        raise PreconditionError(
            "no essential separating curves exist at genus 1"
        )
    seen = set()
    tested = 0
    for d in enumerate_curve_specs(genus, separating_only=True):
        if tested >= budget:
            break
        td = resolve(d).twist
        if td in seen:
            continue  # same curve reached by a different word
        seen.add(td)
        tested += 1
        # f moves the curve iff f t_d f^-1 != t_d iff they fail to commute
        if not commutes(f, td):
            return Fact5Verdict(moved=d)
    return Fact5Verdict(moved=None)
