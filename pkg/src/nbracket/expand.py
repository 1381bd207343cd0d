"""Expansion of bracket expressions into canonical-class profiles.

Two routes produce a profile and must agree wherever both run.

The *oracle* expands every bracket literally, one signed word per ordering of
its entries, and reduces each word the moment it is produced.  Memory stays
bounded by the handful of canonical classes even when the word count runs to
millions.  The enumeration over the outermost bracket can be partitioned into
Lehmer-rank blocks and merged additively, which is how multi-process runs
work; exact coefficients make the merge order irrelevant.

The *fast* route exploits antisymmetry twice.  An inner bracket whose entries
are all distinct family atoms collapses to factorial(arity) times the ordered
product (every ordering reduces to the same class with the ordering sign
cancelled by relabeling).  The same cancellation means a bracket's orderings
that only shuffle its family-atom entries among themselves contribute one
representative word with multiplicity factorial(#atoms), so only the
placements of the remaining distinguished entries are enumerated.  This turns
a factorial word count into a small polynomial one.
"""

from concurrent.futures import ProcessPoolExecutor
from itertools import permutations as iter_placements, product as iter_product
from math import factorial

from .algebra import FreeElement, canonical_reduce, is_anti, merge_class_maps, reduce_terms
from .permutations import parity, signed_perm_range
from .syntax import Atom, Bracket, Product, validate_unique_anti

DEFAULT_TERM_BUDGET = 10**8


class TermBudgetExceeded(RuntimeError):
    """An expansion would generate more words than the configured budget."""


class UnsupportedShapeError(ValueError):
    """The fast route does not cover this nesting; use the oracle route."""


def _check_budget(count, budget, label):
    if count > budget:
        raise TermBudgetExceeded(
            f"{label} needs {count} words, exceeding the term budget of {budget}"
        )


def naive_term_count(expr) -> int:
    """Words the literal expansion generates (factorial per bracket)."""
    if isinstance(expr, Atom):
        return 1
    count = 1
    if isinstance(expr, Product):
        for f in expr.factors:
            count *= naive_term_count(f)
        return count
    if isinstance(expr, Bracket):
        for e in expr.entries:
            count *= naive_term_count(e)
        return count * factorial(len(expr.entries))
    raise TypeError(f"not a bracket expression: {expr!r}")


# ---------------------------------------------------------------------------
# oracle route


def expand_bracket(entries, budget=DEFAULT_TERM_BUDGET) -> FreeElement:
    """Sum of sign(ordering) times the concatenated entries, all orderings.

    Entries are FreeElements; the result is multilinear and totally
    antisymmetric in them.
    """
    entries = list(entries)
    if not entries:
        raise ValueError("bracket needs at least one entry")
    lists = [[(c, w) for w, c in e.items()] for e in entries]
    count = factorial(len(lists))
    for terms in lists:
        count *= len(terms)
    _check_budget(count, budget, "bracket expansion")
    data = {}
    for sign, order in signed_perm_range(len(lists)):
        for combo in iter_product(*[lists[i] for i in order]):
            coeff = sign
            word = ()
            for c, w in combo:
                coeff *= c
                word += w
            value = data.get(word, 0) + coeff
            if value:
                data[word] = value
            elif word in data:
                del data[word]
    return FreeElement(data)


def _materialize(expr):
    """Full expansion as a list of (coefficient, word) terms."""
    if isinstance(expr, Atom):
        return [(1, (expr.symbol,))]
    if isinstance(expr, Product):
        terms = [(1, ())]
        for factor in expr.factors:
            fterms = _materialize(factor)
            terms = [(c1 * c2, w1 + w2) for c1, w1 in terms for c2, w2 in fterms]
        return terms
    if isinstance(expr, Bracket):
        lists = [_materialize(e) for e in expr.entries]
        data = {}
        for sign, order in signed_perm_range(len(lists)):
            for combo in iter_product(*[lists[i] for i in order]):
                coeff = sign
                word = ()
                for c, w in combo:
                    coeff *= c
                    word += w
                value = data.get(word, 0) + coeff
                if value:
                    data[word] = value
                elif word in data:
                    del data[word]
        return [(c, w) for w, c in data.items()]
    raise TypeError(f"not a bracket expression: {expr!r}")


def expand_expr(expr, budget=DEFAULT_TERM_BUDGET) -> FreeElement:
    """Recursive literal expansion of a bracket expression."""
    _check_budget(naive_term_count(expr), budget, "expansion")
    return FreeElement((w, c) for c, w in _materialize(expr))


def _profile_block(expr, rank_range=None):
    """Classes contributed by one block of outer-bracket orderings.

    With rank_range None the whole expression is processed.  The root
    bracket's orderings are streamed so the full word list is never held.
    """
    if not isinstance(expr, Bracket):
        return reduce_terms(_materialize(expr))
    lists = [_materialize(e) for e in expr.entries]
    n = len(lists)
    lo, hi = rank_range if rank_range is not None else (0, factorial(n))
    classes = {}
    get = classes.get
    for sign, order in signed_perm_range(n, lo, hi):
        pools = [lists[i] for i in order]
        for combo in iter_product(*pools):
            coeff = sign
            word = ()
            for c, w in combo:
                coeff *= c
                word += w
            reduced = canonical_reduce(word)
            if reduced is None:
                continue
            rsign, pattern = reduced
            value = get(pattern, 0) + (coeff if rsign > 0 else -coeff)
            if value:
                classes[pattern] = value
            elif pattern in classes:
                del classes[pattern]
    return classes


def _profile_block_task(args):
    expr, lo, hi = args
    return _profile_block(expr, (lo, hi))


def oracle_profile(expr, budget=DEFAULT_TERM_BUDGET, jobs=1):
    """Ground-truth profile: literal expansion with eager canonical reduction.

    ``jobs`` > 1 splits the outermost bracket's orderings into contiguous
    Lehmer-rank blocks handled by worker processes; partial class maps merge
    additively and the result is identical for any block layout.
    """
    validate_unique_anti(expr)
    _check_budget(naive_term_count(expr), budget, "oracle expansion")
    if jobs > 1 and isinstance(expr, Bracket):
        total = factorial(len(expr.entries))
        jobs = min(jobs, total)
        step = -(-total // jobs)
        blocks = [(expr, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_profile_block_task, blocks))
        return merge_class_maps(parts)
    return _profile_block(expr)


# ---------------------------------------------------------------------------
# fast route


def _supplant_eligible(node):
    if not isinstance(node, Bracket):
        return False
    indices = []
    for e in node.entries:
        if not (isinstance(e, Atom) and is_anti(e.symbol)):
            return False
        indices.append(e.symbol)
    return len(set(indices)) == len(indices)


def _child_nodes(node):
    if isinstance(node, Product):
        return node.factors
    if isinstance(node, Bracket):
        return node.entries
    return ()


def _rebuild(node, path, replacement):
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    kids = list(_child_nodes(node))
    kids[head] = _rebuild(kids[head], rest, replacement)
    if isinstance(node, Product):
        return Product(tuple(kids))
    return Bracket(tuple(kids))


def supplant_inner(expr, path=()):
    """Replace the all-family bracket at ``path`` by a scaled ordered product.

    Returns ``(factor, rewritten)`` with factor = factorial(arity).  Profiles
    are unchanged because every ordering of distinct family atoms reduces to
    the same class once the relabeling sign cancels the ordering sign.
    """
    target = expr
    for step in path:
        kids = _child_nodes(target)
        if not 0 <= step < len(kids):
            raise ValueError(f"no child {step} under {target!r}")
        target = kids[step]
    if not isinstance(target, Bracket):
        raise UnsupportedShapeError("supplant target is not a bracket")
    if not _supplant_eligible(target):
        raise UnsupportedShapeError(
            "supplant applies only to brackets of distinct family atoms "
            "(no fixed symbols, no nested brackets)"
        )
    replacement = Product(target.entries)
    return factorial(len(target.entries)), _rebuild(expr, tuple(path), replacement)


def supplant_all(expr):
    """Rewrite every eligible all-family bracket, accumulating the factor."""
    if isinstance(expr, Atom):
        return 1, expr
    factor = 1
    kids = []
    for child in _child_nodes(expr):
        f, k = supplant_all(child)
        factor *= f
        kids.append(k)
    if isinstance(expr, Product):
        return factor, Product(tuple(kids))
    node = Bracket(tuple(kids))
    if _supplant_eligible(node):
        return factor * factorial(len(kids)), Product(tuple(kids))
    return factor, node


def _head_indices(element):
    return {s for word, _ in element.items() for s in word if is_anti(s)}


def _require_fresh_slots(slots, *elements):
    if slots < 0:
        raise ValueError("slot count must be >= 0")
    reserved = set(range(1, slots + 1))
    used = set()
    for element in elements:
        indices = _head_indices(element)
        if indices & reserved:
            clash = sorted(indices & reserved)
            raise ValueError(f"entry reuses slot indices {clash}; slots take 1..{slots}")
        if indices & used:
            raise ValueError("entries share family indices")
        used |= indices


def intercalate_one(head, slots: int):
    """Profile of a bracket holding one distinguished entry among fresh slots.

    The slots carry family indices 1..slots.  The bracket equals
    factorial(slots) times the alternating sum over insertion points j of
    (slot words 1..j) head (slot words j+1..slots), and that is what is
    reduced here.
    """
    _require_fresh_slots(slots, head)
    weight = factorial(slots)
    terms = []
    for j in range(slots + 1):
        prefix = tuple(range(1, j + 1))
        suffix = tuple(range(j + 1, slots + 1))
        signed = -weight if j & 1 else weight
        for word, coeff in head.items():
            terms.append((signed * coeff, prefix + word + suffix))
    return reduce_terms(terms)


def intercalate_two(head, tail, slots: int):
    """Profile of a bracket with two distinguished entries among fresh slots.

    Head and tail are inserted at every ordered pair of positions among slot
    indices 1..slots, head-before-tail terms minus tail-before-head terms,
    each ordering weighted factorial(slots) times the two insertion signs.
    """
    _require_fresh_slots(slots, head, tail)
    weight = factorial(slots)
    terms = []
    for j in range(slots + 1):
        for k in range(slots - j + 1):
            first = tuple(range(1, k + 1))
            middle = tuple(range(k + 1, slots - j + 1))
            last = tuple(range(slots - j + 1, slots + 1))
            signed = -weight if (j + k) & 1 else weight
            for word_a, coeff_a in head.items():
                for word_z, coeff_z in tail.items():
                    coeff = signed * coeff_a * coeff_z
                    terms.append((coeff, first + word_a + middle + word_z + last))
                    terms.append((-coeff, first + word_z + middle + word_a + last))
    return reduce_terms(terms)


def collapsed_term_count(expr) -> int:
    """Words the fast route generates once family-atom orderings collapse."""
    if isinstance(expr, Atom):
        return 1
    if isinstance(expr, Product):
        count = 1
        for f in expr.factors:
            count *= collapsed_term_count(f)
        return count
    if isinstance(expr, Bracket):
        total = len(expr.entries)
        count = 1
        distinguished = 0
        for e in expr.entries:
            if isinstance(e, Atom) and is_anti(e.symbol):
                continue
            distinguished += 1
            count *= collapsed_term_count(e)
        return count * (factorial(total) // factorial(total - distinguished))
    raise TypeError(f"not a bracket expression: {expr!r}")


def _collapsed_terms(expr):
    """Expansion congruent to the literal one modulo family relabeling.

    Dropping the orderings that only permute a bracket's own family atoms is
    sound because those atoms' indices occur nowhere else, so each dropped
    word equals a kept one after a relabeling whose sign cancels the ordering
    sign.  The multiplicity factorial(#atoms) accounts for them.
    """
    if isinstance(expr, Atom):
        return [(1, (expr.symbol,))]
    if isinstance(expr, Product):
        terms = [(1, ())]
        for factor in expr.factors:
            fterms = _collapsed_terms(factor)
            terms = [(c1 * c2, w1 + w2) for c1, w1 in terms for c2, w2 in fterms]
        return terms
    if not isinstance(expr, Bracket):
        raise TypeError(f"not a bracket expression: {expr!r}")

    entries = expr.entries
    total = len(entries)
    special_pos = [i for i, e in enumerate(entries)
                   if not (isinstance(e, Atom) and is_anti(e.symbol))]
    composite = sum(1 for i in special_pos if not isinstance(entries[i], Atom))
    if composite > 2:
        raise UnsupportedShapeError(
            "bracket nests more than two composite entries; use the oracle route"
        )
    atom_pos = [i for i in range(total) if i not in set(special_pos)]
    multiplicity = factorial(len(atom_pos))
    special_lists = [_collapsed_terms(entries[i]) for i in special_pos]

    out = []
    for placement in iter_placements(range(total), len(special_pos)):
        arrangement = [None] * total
        for orig, pos in zip(special_pos, placement):
            arrangement[pos] = orig
        fill = iter(atom_pos)
        slots = []  # per position: family symbol, or index into the combo
        for pos in range(total):
            if arrangement[pos] is None:
                arrangement[pos] = next(fill)
                slots.append((entries[arrangement[pos]].symbol,))
            else:
                slots.append(special_pos.index(arrangement[pos]))
        weight = multiplicity * parity(arrangement)
        for combo in iter_product(*special_lists):
            coeff = weight
            word = ()
            for slot in slots:
                if isinstance(slot, tuple):
                    word += slot
                else:
                    c, w = combo[slot]
                    coeff *= c
                    word += w
            out.append((coeff, word))
    return out


def fast_profile(expr, budget=DEFAULT_TERM_BUDGET):
    """Profile via supplanted inner brackets and collapsed atom orderings.

    Equals oracle_profile on every supported shape; raises
    UnsupportedShapeError when a bracket nests more than two composite
    entries after the supplant rewrite.
    """
    validate_unique_anti(expr)
    factor, rewritten = supplant_all(expr)
    _check_budget(collapsed_term_count(rewritten), budget, "fast expansion")
    terms = _collapsed_terms(rewritten)
    if factor != 1:
        terms = [(factor * c, w) for c, w in terms]
    return reduce_terms(terms)
