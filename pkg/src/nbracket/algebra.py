"""Exact arithmetic in the free associative algebra over two kinds of generators.

A *fixed* generator is a named operator that antisymmetrization leaves in
place.  A member of the *antisymmetrized family* carries a positive integer
index; every expression handled here is read modulo total antisymmetrization
over that family, so a word may be rewritten, up to a sign, with its family
indices ascending.  That rewrite is what ``canonical_reduce`` performs.

Representation is deliberately lean: a fixed generator is its name string, a
family member is its index int, a word is a tuple of generators, and a
canonical class is a word tuple whose family slots hold ``ANTI_SLOT`` (0).
Coefficients are exact throughout (int, promoted to Fraction only where
division actually occurs).  All values are immutable once built, so partial
results can be computed independently and merged.
"""

from bisect import bisect_left
from fractions import Fraction

ANTI_SLOT = 0

Symbol = int | str
Word = tuple
Pattern = tuple


def anti(index: int) -> int:
    """The antisymmetrized-family generator with the given index (1-based)."""
    if not isinstance(index, int) or isinstance(index, bool) or index < 1:
        raise ValueError(f"family index must be a positive integer, got {index!r}")
    return index


def fixed(name: str) -> str:
    """A fixed generator with the given nonempty name."""
    if not isinstance(name, str) or not name:
        raise ValueError(f"fixed-generator name must be a nonempty string, got {name!r}")
    return name


def is_anti(symbol) -> bool:
    return isinstance(symbol, int)


def symbol_str(symbol) -> str:
    return f"b{symbol}" if isinstance(symbol, int) else symbol


def symbol_sort_key(symbol):
    # Fixed names order before family indices; each kind orders internally.
    if isinstance(symbol, int):
        return (1, "", symbol)
    return (0, symbol, 0)


def word_sort_key(word):
    return tuple(symbol_sort_key(s) for s in word)


def word_str(word) -> str:
    return " ".join(symbol_str(s) for s in word) if word else "1"


def pattern_str(pattern) -> str:
    """Display form of a canonical class, family slots shown as ``b*``."""
    if not pattern:
        return "1"
    return " ".join("b*" if s == ANTI_SLOT else s for s in pattern)


def canonical_reduce(word):
    """Rewrite a word with family indices ascending, tracking the sign.

    Returns ``(sign, pattern)`` where sign is the parity of the permutation
    sorting the family indices and pattern keeps fixed generators in place
    with 0 in every family slot.  Returns None when an index repeats: the
    class vanishes by antisymmetry.
    """
    inversions = 0
    seen = []  # family indices so far, kept sorted
    pattern = []
    for s in word:
        if s.__class__ is int:
            pos = bisect_left(seen, s)
            if pos < len(seen) and seen[pos] == s:
                return None
            inversions += len(seen) - pos
            seen.insert(pos, s)
            pattern.append(ANTI_SLOT)
        else:
            pattern.append(s)
    return (-1 if inversions & 1 else 1), tuple(pattern)


def reduce_terms(terms) -> dict:
    """Signed accumulation of (coefficient, word) pairs into canonical classes.

    Zero classes are dropped, including those that cancel during accumulation.
    """
    classes = {}
    for coeff, word in terms:
        reduced = canonical_reduce(word)
        if reduced is None:
            continue
        sign, pattern = reduced
        value = classes.get(pattern, 0) + (coeff if sign > 0 else -coeff)
        if value:
            classes[pattern] = value
        elif pattern in classes:
            del classes[pattern]
    return classes


def reduce_element(element) -> dict:
    """Canonical classes of a FreeElement (map pattern -> exact coefficient)."""
    return reduce_terms((c, w) for w, c in element.items())


def merge_class_maps(parts) -> dict:
    """Additive merge of class maps; exact coefficients make it order-free."""
    total = {}
    for part in parts:
        for pattern, coeff in part.items():
            value = total.get(pattern, 0) + coeff
            if value:
                total[pattern] = value
            elif pattern in total:
                del total[pattern]
    return total


def _as_coefficient(value):
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return value
    raise TypeError(f"coefficients must be exact (int or Fraction), got {type(value).__name__}")


class FreeElement:
    """A finite formal sum of words with exact rational coefficients.

    Supports addition, subtraction, scalar multiplication, and the bilinear
    concatenation product of the free algebra.  Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in items:
            coeff = _as_coefficient(coeff)
            word = tuple(word)
            value = data.get(word, 0) + coeff
            if value:
                data[word] = value
            elif word in data:
                del data[word]
        self._terms = data

    @classmethod
    def from_word(cls, word, coeff=1):
        return cls(((tuple(word), coeff),))

    @classmethod
    def from_symbol(cls, symbol):
        return cls((((symbol,), 1),))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        """The empty word, the multiplicative identity."""
        return cls((((), 1),))

    def items(self):
        return self._terms.items()

    def coefficient(self, word):
        return self._terms.get(tuple(word), 0)

    def words_in_order(self):
        return sorted(self._terms, key=word_sort_key)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, FreeElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        data = dict(self._terms)
        for word, coeff in other._terms.items():
            value = data.get(word, 0) + coeff
            if value:
                data[word] = value
            elif word in data:
                del data[word]
        out = FreeElement.zero()
        out._terms = data
        return out

    def __neg__(self):
        out = FreeElement.zero()
        out._terms = {w: -c for w, c in self._terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self + (-other)

    def scaled(self, scalar):
        scalar = _as_coefficient(scalar)
        if not scalar:
            return FreeElement.zero()
        out = FreeElement.zero()
        out._terms = {w: c * scalar for w, c in self._terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            data = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    word = w1 + w2
                    value = data.get(word, 0) + c1 * c2
                    if value:
                        data[word] = value
                    elif word in data:
                        del data[word]
            out = FreeElement.zero()
            out._terms = data
            return out
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for word in self.words_in_order():
            coeff = self._terms[word]
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            body = word_str(word)
            if magnitude != 1 or not word:
                body = f"{magnitude} {body}" if word else f"{magnitude}"
            parts.append(f"{sign} {body}" if parts else (f"-{body}" if sign == "-" else body))
        return " ".join(parts)

    def __repr__(self):
        return f"FreeElement({self._terms!r})"
