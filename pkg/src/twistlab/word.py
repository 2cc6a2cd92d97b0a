"""Words in the free fundamental group of a one-boundary surface.

The genus-g surface with one boundary component has free fundamental
group of rank 2g, generated by x1..x{2g}; its boundary word is the
product of commutators [x1,x2][x3,x4]...[x{2g-1},x{2g}].  A letter is a
nonzero signed integer: +i stands for x_i, -i for its inverse.  Words
are kept freely reduced at all times and are immutable, so values may
be shared between threads without locking.

Text form: whitespace-separated tokens `x3` or `x3^-2`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GenusMismatch, WordParseError

_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def _reduced(letters):
    out = []
    for ell in letters:
        if out and out[-1] == -ell:
            out.pop()
        else:
            out.append(ell)
    return tuple(out)


def _letter_key(ell):
    # lexicographic order on (generator index, sign); x_i < x_i^-1
    return (abs(ell), ell < 0)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity."""

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be >= 1, got {self.genus}")
        n = 2 * self.genus
        letters = tuple(self.letters)
        for ell in letters:
            if not isinstance(ell, int) or ell == 0 or abs(ell) > n:
                raise ValueError(
                    f"letter {ell!r} out of range for genus {self.genus}"
                    f" (generators are 1..{n}, signed)"
                )
        object.__setattr__(self, "letters", _reduced(letters))

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, genus):
        return cls(genus, ())

    @classmethod
    def generator(cls, genus, i, power=1):
        sign = 1 if power > 0 else -1
        return cls(genus, (sign * i,) * abs(power))

    @classmethod
    def from_text(cls, genus, text):
        """Parse `x1 x2^-1 x1`; exponents expand to letter runs."""
        letters = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise WordParseError(f"bad word token {tok!r}")
            i = int(m.group(1))
            k = int(m.group(2)) if m.group(2) else 1
            if i < 1 or i > 2 * genus:
                raise WordParseError(
                    f"generator x{i} out of range for genus {genus}"
                )
            if k == 0:
                raise WordParseError(f"zero exponent in token {tok!r}")
            letters.extend([i if k > 0 else -i] * abs(k))
        return cls(genus, tuple(letters))

    # -- queries -----------------------------------------------------

    def is_identity(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def to_text(self):
        if not self.letters:
            return "1"
        parts = []
        run_letter, run = self.letters[0], 0
        for ell in self.letters + (0,):
            if ell == run_letter:
                run += 1
                continue
            i, k = abs(run_letter), run * (1 if run_letter > 0 else -1)
            parts.append(f"x{i}" if k == 1 else f"x{i}^{k}")
            run_letter, run = ell, 1
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    # -- group operations --------------------------------------------

    def _check_genus(self, other):
        if self.genus != other.genus:
            raise GenusMismatch(
                f"cannot combine words of genus {self.genus} and {other.genus}"
            )

    def __mul__(self, other):
        self._check_genus(other)
        return Word(self.genus, self.letters + other.letters)

    def inverse(self):
        return Word(self.genus, tuple(-ell for ell in reversed(self.letters)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Word.identity(self.genus)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self, g):
        """g * self * g^-1."""
        self._check_genus(g)
        return g * self * g.inverse()

    # -- cyclic structure --------------------------------------------

    def cyclic_reduce(self):
        """Split self = conjugator * core * conjugator^-1.

        The core is cyclically reduced and rotated to the
        lexicographically least of its rotations, so the decomposition
        is deterministic.
        """
        core = list(self.letters)
        conj = []
        while len(core) >= 2 and core[0] == -core[-1]:
            conj.append(core.pop(0))
            core.pop()
        if core:
            keyed = [
                tuple(_letter_key(ell) for ell in core[r:] + core[:r])
                for r in range(len(core))
            ]
            r = keyed.index(min(keyed))
            conj.extend(core[:r])
            core = core[r:] + core[:r]
        return Word(self.genus, tuple(core)), Word(self.genus, tuple(conj))

    def canonical_cyclic(self, up_to_inversion=True):
        """Canonical representative of the cyclic word (conjugacy class).

        With up_to_inversion the orientation of the underlying loop is
        forgotten as well, which is the right notion for an unoriented
        curve class.
        """
        core, _ = self.cyclic_reduce()
        if not up_to_inversion or core.is_identity():
            return core
        alt, _ = core.inverse().cyclic_reduce()
        key = lambda w: tuple(_letter_key(ell) for ell in w.letters)
        return min(core, alt, key=key)


# -- free-function forms used throughout the package -----------------


def reduce_word(genus, letters):
    """Freely reduce a raw signed-letter sequence."""
    return Word(genus, tuple(letters))


def multiply(u, v):
    return u * v


def invert(u):
    return u.inverse()


def conjugate(u, g):
    return u.conjugate(g)


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1, freely reduced."""
    u._check_genus(v)
    return u * v * u.inverse() * v.inverse()


def cyclically_reduce(u):
    return u.cyclic_reduce()


def boundary_word(genus):
    """[x1,x2][x3,x4]...[x{2g-1},x{2g}] -- the surface boundary."""
    letters = []
    for i in range(1, 2 * genus, 2):
        letters.extend((i, i + 1, -i, -(i + 1)))
    return Word(genus, tuple(letters))
