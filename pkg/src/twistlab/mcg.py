"""Mapping classes of the one-boundary surface as free-group automorphisms.

For one boundary component the action of a mapping class on the
fundamental group is faithful, so a mapping class IS its automorphism
and equality of mapping classes is exact equality of reduced generator
images.  Every table automorphism fixes the boundary word on the nose.

The built-in generator twists are loaded from versioned text fixtures
(data/genus{g}.txt): the chain twists C1..C{2g+1} along a chain of
curves (consecutive ones meet once, the rest are disjoint), the
standard separating twists SepJ around the first J handles, and the
boundary twist Delta.  The twist formulas are data pinned by
validate_relations(), not trusted constants: braid relations for
adjacent chain twists, commutation for disjoint pairs, the chain
relations (C1 C2)^6 = Delta at genus 1 and (C1..C5)^6 = Delta at genus
2, centrality of Delta, and homological triviality of the separating
twists.  The handedness convention is global; supplying the opposite
convention would flip every twist at once and change nothing downstream
(all detectors depend only on commutators and filtration membership).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import (
    GenusMismatch,
    UnknownTwistName,
    UnsupportedGenus,
    WordLengthLimit,
    WordParseError,
)
from .word import Word, boundary_word

#: Hard cap on automorphism image length; compositions past this abort.
MAX_IMAGE_LETTERS = 10**6

_SUPPORTED_GENERA = (1, 2, 3)


class FreeAutomorphism:
    """An automorphism of the rank-2g free group, with its inverse.

    Stored as the images of the generators under the map and under its
    inverse; construction verifies both round trips, which guarantees
    the endomorphism is an automorphism.  Instances are immutable.
    """

    __slots__ = ("genus", "images", "inverse_images", "_letter_images", "_hash")

    def __init__(self, genus, images, inverse_images, _check=True):
        images = tuple(images)
        inverse_images = tuple(inverse_images)
        n = 2 * genus
        if len(images) != n or len(inverse_images) != n:
            raise ValueError(f"expected {n} generator images")
        for w in images + inverse_images:
            if w.genus != genus:
                raise GenusMismatch("image word of wrong genus")
        self.genus = genus
        self.images = images
        self.inverse_images = inverse_images
        # letter -> image letters, for +-1..+-2g
        table = {}
        for i, w in enumerate(images, start=1):
            table[i] = w.letters
            table[-i] = tuple(-ell for ell in reversed(w.letters))
        self._letter_images = table
        self._hash = None
        if _check:
            inv = self.inverse()
            for i in range(1, n + 1):
                x = Word.generator(genus, i)
                if self(inv(x)) != x or inv(self(x)) != x:
                    raise ValueError(
                        "images and inverse_images do not define inverse "
                        "automorphisms"
                    )

    @classmethod
    def identity(cls, genus):
        gens = tuple(Word.generator(genus, i) for i in range(1, 2 * genus + 1))
        return cls(genus, gens, gens, _check=False)

    # -- action --------------------------------------------------------

    def __call__(self, w):
        if w.genus != self.genus:
            raise GenusMismatch("word of wrong genus")
        out = []
        table = self._letter_images
        limit = MAX_IMAGE_LETTERS
        for ell in w.letters:
            for img in table[ell]:
                if out and out[-1] == -img:
                    out.pop()
                else:
                    out.append(img)
            if len(out) > limit:
                raise WordLengthLimit(
                    f"image exceeded {limit} letters; composition aborted"
                )
        return Word(self.genus, tuple(out))

    def _apply_inverse(self, w):
        return self.inverse()(w)

    def inverse(self):
        return FreeAutomorphism(
            self.genus, self.inverse_images, self.images, _check=False
        )

    def compose(self, other):
        """self after other: (self.compose(other))(w) = self(other(w))."""
        if other.genus != self.genus:
            raise GenusMismatch("automorphisms of different genus")
        images = tuple(self(w) for w in other.images)
        other_inv = other.inverse()
        inverse_images = tuple(other_inv(w) for w in self.inverse_images)
        return FreeAutomorphism(self.genus, images, inverse_images, _check=False)

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        result = FreeAutomorphism.identity(self.genus)
        square = self
        while k:
            if k & 1:
                result = result.compose(square)
            square = square.compose(square) if k > 1 else square
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------

    def is_identity(self):
        return all(
            w.letters == (i,) for i, w in enumerate(self.images, start=1)
        )

    def __eq__(self, other):
        if not isinstance(other, FreeAutomorphism):
            return NotImplemented
        return self.genus == other.genus and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.genus,) + tuple(w.letters for w in self.images))
        return self._hash

    def __repr__(self):
        imgs = ", ".join(f"x{i}->{w}" for i, w in enumerate(self.images, 1))
        return f"<auto g={self.genus}: {imgs}>"


def apply_auto(f, w):
    return f(w)


def compose(f, g):
    return f.compose(g)


def auto_equal(f, g):
    if f.genus != g.genus:
        raise GenusMismatch("automorphisms of different genus")
    return f == g


def commutes(f, g):
    return f.compose(g) == g.compose(f)


def commutator_auto(f, g):
    """[f, g] = f g f^-1 g^-1 as a mapping class."""
    return f.compose(g).compose(f.inverse()).compose(g.inverse())


# -- generator tables ------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    """One named twist: its automorphism and its curve's invariants."""

    name: str
    role: str  # "chain" | "sep" | "boundary"
    index: int  # chain position, or J for SepJ; 0 for Delta
    twist: FreeAutomorphism
    base_word: Word
    homology: tuple[int, ...]
    separating: bool
    essential: bool


class TwistTable:
    """The built-in twists of one genus, immutable after load."""

    def __init__(self, genus, entries):
        self.genus = genus
        self.entries = {e.name: e for e in entries}
        self.chain_names = tuple(
            e.name for e in entries if e.role == "chain"
        )
        self.sep_names = tuple(e.name for e in entries if e.role == "sep")
        self.boundary = boundary_word(genus)

    def names(self):
        return tuple(self.entries)

    def entry(self, name):
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownTwistName(
                f"unknown twist {name!r} at genus {self.genus}"
            ) from None

    def twist(self, name):
        return self.entry(name).twist

    def essential_base_names(self):
        return tuple(e.name for e in self.entries.values() if e.essential)


def _parse_table_text(genus, text):
    entries = []
    current = None
    images = {}
    inverses = {}
    meta = {}

    def finish():
        nonlocal current
        if current is None:
            return
        n = 2 * genus
        img = tuple(images[i] for i in range(1, n + 1))
        inv = tuple(inverses[i] for i in range(1, n + 1))
        twist = FreeAutomorphism(genus, img, inv)
        role, index = meta["role"]
        entries.append(
            TableEntry(
                name=current,
                role=role,
                index=index,
                twist=twist,
                base_word=meta["base"],
                homology=tuple(meta["homology"]),
                separating=role in ("sep", "boundary"),
                essential=role != "boundary",
            )
        )
        current = None

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "table":
            continue  # version header, format asserted by caller
        if head == "genus":
            if int(rest) != genus:
                raise ValueError("fixture genus header mismatch")
        elif head == "twist":
            finish()
            current = rest
            images.clear()
            inverses.clear()
            meta.clear()
        elif head == "role":
            kind, _, idx = rest.partition(" ")
            meta["role"] = (kind, int(idx) if idx else 0)
        elif head == "base":
            meta["base"] = Word.from_text(genus, rest)
        elif head == "homology":
            meta["homology"] = [int(t) for t in rest.split()]
        elif head in ("image", "inverse"):
            lhs, _, rhs = rest.partition("=")
            m = re.match(r"x(\d+)$", lhs.strip())
            if not m:
                raise ValueError(f"bad fixture line: {raw!r}")
            w = Word.from_text(genus, rhs.strip())
            (images if head == "image" else inverses)[int(m.group(1))] = w
        else:
            raise ValueError(f"bad fixture line: {raw!r}")
    finish()
    return entries


@lru_cache(maxsize=None)
def builtin_table(genus):
    """Load and construct the twist table for a supported genus."""
    if genus not in _SUPPORTED_GENERA:
        raise UnsupportedGenus(
            f"no built-in table for genus {genus}; supported: "
            f"{_SUPPORTED_GENERA}"
        )
    text = (
        resources.files("twistlab")
        .joinpath(f"data/genus{genus}.txt")
        .read_text(encoding="utf-8")
    )
    return TwistTable(genus, _parse_table_text(genus, text))


# -- mapping class words ----------------------------------------------

_MCW_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


def parse_mcw(text):
    """Parse `C1 C2^-3 Sep1 Delta^2` into ((name, exponent), ...)."""
    out = []
    pos = 0
    for tok in text.split():
        m = _MCW_TOKEN.match(tok)
        if not m:
            raise WordParseError(f"bad twist token {tok!r}", position=text.find(tok, pos))
        k = int(m.group(2)) if m.group(2) else 1
        if k == 0:
            raise WordParseError(f"zero exponent in {tok!r}", position=text.find(tok, pos))
        out.append((m.group(1), k))
        pos = text.find(tok, pos) + len(tok)
    return tuple(out)


def format_mcw(mcw):
    return " ".join(n if k == 1 else f"{n}^{k}" for n, k in mcw)


@lru_cache(maxsize=8192)
def _evaluate_cached(genus, mcw):
    table = builtin_table(genus)
    acc = FreeAutomorphism.identity(genus)
    for name, k in mcw:
        t = table.twist(name)
        acc = acc.compose(t.power(k))
    return acc


def evaluate(mcw, genus):
    """Composite of named twists, leftmost applied last.

    evaluate(((A,1),(B,1))) sends w to t_A(t_B(w)).
    """
    mcw = tuple((str(n), int(k)) for n, k in mcw)
    for name, k in mcw:
        if k == 0:
            raise ValueError("zero exponent in mapping class word")
        builtin_table(genus).entry(name)  # raises UnknownTwistName early
    return _evaluate_cached(genus, mcw)


def is_central(f, table=None):
    """Centrality test: commutes with every chain twist.

    Sufficient as well as necessary: an automorphism commuting with the
    twist along every chain curve fixes each of those curves, and the
    chain fills the surface, so by the Alexander method the class is a
    power of the boundary twist.
    """
    table = table or builtin_table(f.genus)
    return all(commutes(f, table.twist(n)) for n in table.chain_names)


# -- relation validation ----------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    kind: str
    description: str
    passed: bool


@dataclass(frozen=True)
class RelationReport:
    genus: int
    checks: tuple[RelationCheck, ...]

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _chain_relation_spec(genus):
    # (names to multiply, exponent) with product equal to Delta
    if genus == 1:
        return (("C1", "C2"), 6)
    # the full odd chain: (t_{C1} ... t_{C_{2g+1}})^{2g+2} = t_Delta
    names = tuple(f"C{i}" for i in range(1, 2 * genus + 2))
    return (names, 2 * genus + 2)


def validate_relations(genus):
    """Run the relation suite that pins the generator table.

    Checks, as exact automorphism identities: (a) braid relations for
    adjacent chain twists, (b) commutation for disjoint pairs (chain
    twists two or more apart; SepJ against every chain twist except the
    connector C{2J+1} it crosses; SepJ against SepK), (c) the chain
    relation, (d) centrality of Delta, (e) separating twists act
    trivially on homology.  Failures are report entries, not errors.
    """
    from .curve import homology_action, identity_matrix  # cycle-free import

    table = builtin_table(genus)
    checks = []
    chain = [table.twist(n) for n in table.chain_names]
    names = table.chain_names

    for i in range(len(chain) - 1):
        a, b = chain[i], chain[i + 1]
        ok = a.compose(b).compose(a) == b.compose(a).compose(b)
        checks.append(
            RelationCheck(
                "braid", f"{names[i]} {names[i+1]} braid relation", ok
            )
        )

    for i in range(len(chain)):
        for j in range(i + 2, len(chain)):
            ok = commutes(chain[i], chain[j])
            checks.append(
                RelationCheck(
                    "commute", f"[{names[i]}, {names[j]}] = 1", ok
                )
            )

    for sep_name in table.sep_names:
        j = table.entry(sep_name).index
        crossing = f"C{2 * j + 1}"
        sep = table.twist(sep_name)
        for cname in names:
            if cname == crossing:
                continue
            checks.append(
                RelationCheck(
                    "commute",
                    f"[{sep_name}, {cname}] = 1 (disjoint)",
                    commutes(sep, table.twist(cname)),
                )
            )
        for other in table.sep_names:
            if other <= sep_name:
                continue
            checks.append(
                RelationCheck(
                    "commute",
                    f"[{sep_name}, {other}] = 1 (nested)",
                    commutes(sep, table.twist(other)),
                )
            )

    rel = _chain_relation_spec(genus)
    if rel is not None:
        names_c, power = rel
        prod = FreeAutomorphism.identity(genus)
        for n in names_c:
            prod = prod.compose(table.twist(n))
        ok = prod.power(power) == table.twist("Delta")
        desc = "(" + " ".join(
            f"t_{n}" for n in names_c
        ) + f")^{power} = t_Delta"
        checks.append(RelationCheck("chain", desc, ok))

    delta = table.twist("Delta")
    ok = all(commutes(delta, table.twist(n)) for n in table.names() if n != "Delta")
    checks.append(RelationCheck("central", "t_Delta is central", ok))

    for sep_name in table.sep_names:
        ok = homology_action(table.twist(sep_name)) == identity_matrix(genus)
        checks.append(
            RelationCheck(
                "homology", f"{sep_name} acts trivially on homology", ok
            )
        )

    return RelationReport(genus, tuple(checks))
