"""Signed compositions and their index combinatorics.

A *signed index* is a finite composition of nonzero integers.  A negative
part encodes an alternating ("bar") argument, so the index (2, -1) stands
for the nested sum whose inner summand carries a factor (-1)^k / k.

The module supplies the merge operator ``oplus`` (magnitudes add, signs
multiply), the comma-or-merge expansion ``pi_expand`` that underlies every
right-hand side in this package, the star-to-strict expansion, the sign
rule predicate, and the text round-trip used by the CLI and reports.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

__all__ = [
    "SignedIndex",
    "FormalSum",
    "oplus",
    "pi_expand",
    "pi_expand_weighted",
    "star_expand",
    "sign_rule_holds",
    "parse_index",
    "format_index",
    "as_index",
    "EMPTY",
]


class SignedIndex:
    """Immutable composition of nonzero integers.

    Supports iteration, indexing, slicing (returns a new SignedIndex),
    hashing and ordering by the underlying tuple.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p == 0:
                raise ValueError("index parts must be nonzero integers")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("SignedIndex is immutable")

    def depth(self) -> int:
        return len(self.parts)

    def weight(self) -> int:
        return sum(abs(p) for p in self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def head(self) -> int:
        if not self.parts:
            raise IndexError("empty index has no head")
        return self.parts[0]

    def tail(self) -> "SignedIndex":
        return SignedIndex(self.parts[1:])

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SignedIndex(self.parts[i])
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedIndex) and self.parts == other.parts

    def __lt__(self, other: "SignedIndex") -> bool:
        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return "SignedIndex(%r)" % (self.parts,)

    def __str__(self) -> str:
        return format_index(self)


EMPTY = SignedIndex(())


def as_index(value) -> SignedIndex:
    """Coerce a SignedIndex, an int, or an iterable of ints to a SignedIndex."""
    if isinstance(value, SignedIndex):
        return value
    if isinstance(value, int):
        return SignedIndex((value,))
    return SignedIndex(value)


class FormalSum:
    """Finite integer-linear combination of signed indices.

    Stored as a mapping index -> coefficient with zero coefficients pruned.
    Insertion order is preserved, which keeps report output deterministic;
    equality ignores order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for idx, coeff in items:
                self.add_term(as_index(idx), coeff)

    def add_term(self, idx: SignedIndex, coeff: int) -> None:
        if coeff == 0:
            return
        idx = as_index(idx)
        new = self.terms.get(idx, 0) + coeff
        if new == 0:
            self.terms.pop(idx, None)
        else:
            self.terms[idx] = new

    def __iter__(self) -> Iterator[Tuple[SignedIndex, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("FormalSum is mutable, not hashable")

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(self.terms)
        for idx, coeff in other:
            out.add_term(idx, coeff)
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(self.terms)
        for idx, coeff in other:
            out.add_term(idx, -coeff)
        return out

    def __mul__(self, scalar: int) -> "FormalSum":
        if scalar == 0:
            return FormalSum()
        return FormalSum((idx, coeff * scalar) for idx, coeff in self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "FormalSum(%r)" % (self.terms,)

    def __str__(self) -> str:
        return self.format()

    def format(self, wrap: str = "") -> str:
        """Render as "4*(3,3) + 2*(6)"; wrap="zeta" gives "4*zeta(3,3) + ...".

        Terms appear in insertion order; the empty sum renders as "0" and
        the empty index as "()".
        """
        if not self.terms:
            return "0"
        pieces = []
        for idx, coeff in self.terms.items():
            body = "%s(%s)" % (wrap, format_index(idx))
            pieces.append("%d*%s" % (coeff, body))
        return " + ".join(pieces)


def oplus(a: int, b: int) -> int:
    """Sign-aware merge of two nonzero parts: magnitudes add, signs multiply."""
    if a == 0 or b == 0:
        raise ValueError("oplus requires nonzero arguments")
    return (b if a > 0 else -b) + (a if b > 0 else -a)


def pi_expand(base: SignedIndex) -> List[SignedIndex]:
    """All 2^(m-1) comma-or-merge images of a nonempty base, in mask order.

    Bit i of the mask governs the slot between parts i and i+1; a clear bit
    keeps the comma, a set bit merges the neighbours with oplus.  Equal
    indices arising from distinct masks (none are known for the family
    bases used here) are kept, so the result is a multiset.
    """
    base = as_index(base)
    if base.is_empty():
        raise ValueError("pi_expand needs a nonempty base")
    parts = base.parts
    slots = len(parts) - 1
    out = []
    for mask in range(1 << slots):
        acc = [parts[0]]
        for i in range(slots):
            if mask >> i & 1:
                acc[-1] = oplus(acc[-1], parts[i + 1])
            else:
                acc.append(parts[i + 1])
        out.append(SignedIndex(acc))
    return out


def pi_expand_weighted(base: SignedIndex, coeff_base: int = 2,
                       global_sign: int = 1) -> FormalSum:
    """Comma-or-merge expansion with coefficient global_sign*coeff_base^depth.

    Coefficients of colliding indices accumulate.
    """
    if coeff_base < 1:
        raise ValueError("coeff_base must be a positive integer")
    if global_sign not in (1, -1):
        raise ValueError("global_sign must be +1 or -1")
    out = FormalSum()
    for idx in pi_expand(base):
        out.add_term(idx, global_sign * coeff_base ** idx.depth())
    return out


def star_expand(s: SignedIndex) -> FormalSum:
    """Expand a star (weak-inequality) sum into strict ones.

    Merging a run of equal summation variables multiplies the signs and adds
    the exponents of the merged parts, which is exactly oplus, so the
    expansion runs over the same comma-or-merge images as pi_expand, every
    coefficient +1.  For every n, H*_n(s) equals the sum of H_n(p) over the
    expansion; that equality is an exact test hook, not an assumption here.
    """
    s = as_index(s)
    if s.is_empty():
        raise ValueError("star_expand needs a nonempty index")
    return pi_expand_weighted(s, coeff_base=1, global_sign=1)


def sign_rule_holds(p: SignedIndex) -> bool:
    """True iff every part a satisfies: a is positive exactly when 4 divides a."""
    return all((a > 0) == (a % 4 == 0) for a in as_index(p))


def parse_index(text: str) -> SignedIndex:
    """Parse "s1,s2,...,sk" (optional whitespace) into a SignedIndex.

    Zero entries, empty tokens and non-integer tokens raise ValueError
    naming the offending token.  The empty index has no text form; an
    empty or blank string is rejected.
    """
    if text is None or not text.strip():
        raise ValueError("empty index text")
    parts = []
    for token in text.split(","):
        tok = token.strip()
        if not tok:
            raise ValueError("empty token in index text: %r" % (token,))
        try:
            val = int(tok)
        except ValueError:
            raise ValueError("non-integer token in index text: %r" % (tok,)) from None
        if val == 0:
            raise ValueError("zero entry in index text: %r" % (tok,))
        parts.append(val)
    return SignedIndex(parts)


def format_index(idx: SignedIndex) -> str:
    """Inverse of parse_index; the empty index renders as ""."""
    return ",".join(str(p) for p in as_index(idx))
