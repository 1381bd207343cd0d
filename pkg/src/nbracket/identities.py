"""Verifiers and closed-form coefficient formulas for bracket identities.

Covered identities, each reported through IdentityReport:

* ``even``       the generalized Jacobi identity: an even N-bracket acting on
                 another vanishes under total antisymmetrization.
* ``odd-reduce`` an odd N-bracket acting on another reduces to a single
                 (2N-1)-bracket; the proportionality constant is derived, not
                 assumed.
* ``bremner``    the generalized Bremner identity between the two ways of
                 nesting three odd (2L+1)-brackets around one fixed operator,
                 with its closed-form coefficients.
* ``sums``       the arithmetic checks on those closed forms.
* ``decomp``     the exact decomposition of the nested shape over a flat
                 (6L+1)-bracket and a bracket of two inner brackets.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from time import perf_counter

from .algebra import ANTI_SLOT, pattern_str, word_sort_key
from .expand import (
    DEFAULT_TERM_BUDGET,
    UnsupportedShapeError,
    collapsed_term_count,
    fast_profile,
    naive_term_count,
    oracle_profile,
)
from .syntax import Atom, Bracket, anti_indices, render

PROFILE_SIGN_CONVENTION = "(-1)^n"


class UnsupportedParameter(ValueError):
    """The identity is not defined (or not budgeted) at this parameter."""


class ProportionalityError(RuntimeError):
    """No single constant relates the two profiles classwise."""


# ---------------------------------------------------------------------------
# closed forms


def reduced_multiplicity(n: int, L: int) -> int:
    """Closed-form class count with the factorial prefactor divided out.

    Piecewise in n: (n+1)(4L-n)/2 up to n = 2L, the quadratic
    10L^2 - 6Ln + L + n^2 up to n = 3L, then the mirror value for larger n.
    """
    if L < 1:
        raise UnsupportedParameter(f"half-order must be >= 1, got {L}")
    if not 0 <= n <= 6 * L:
        raise UnsupportedParameter(f"class index {n} outside 0..{6 * L}")
    if n <= 2 * L:
        return (n + 1) * (4 * L - n) // 2
    if n <= 3 * L:
        return 10 * L * L - 6 * L * n + L + n * n
    return reduced_multiplicity(6 * L - n, L)


def multiplicity_prefactor(L: int) -> int:
    return factorial(2 * L + 1) * factorial(2 * L) * factorial(2 * L - 1)


def closed_form_multiplicity(n: int, L: int) -> int:
    """Closed-form coefficient magnitude of class n in either triple nesting."""
    return multiplicity_prefactor(L) * reduced_multiplicity(n, L)


# ---------------------------------------------------------------------------
# profiles of the fixed-operator resolutions


@dataclass(frozen=True)
class CoefficientProfile:
    """Magnitudes m_n of a resolution sum_n (-1)^n m_n (n family factors,
    the fixed operator, the rest); ``half_order`` is L with 6L+1 classes."""

    half_order: int
    m: tuple

    @property
    def width(self) -> int:
        return 6 * self.half_order + 1

    def signed(self, n):
        return -self.m[n] if n & 1 else self.m[n]

    def is_reflection_symmetric(self) -> bool:
        return self.m == tuple(reversed(self.m))

    @classmethod
    def closed_form(cls, L: int):
        return cls(L, tuple(closed_form_multiplicity(n, L) for n in range(6 * L + 1)))

    @classmethod
    def from_classes(cls, classes, L: int, fixed_name: str = "A"):
        width = 6 * L + 1
        expected = {}
        for n in range(width):
            pattern = (ANTI_SLOT,) * n + (fixed_name,) + (ANTI_SLOT,) * (width - 1 - n)
            expected[pattern] = n
        stray = [p for p in classes if p not in expected]
        if stray:
            raise ValueError(f"unexpected class {pattern_str(stray[0])} for half-order {L}")
        m = [0] * width
        for pattern, coeff in classes.items():
            n = expected[pattern]
            m[n] = -coeff if n & 1 else coeff
        return cls(L, tuple(m))


def intercalation_profile(classes):
    """(m list, arity) when every class intersperses exactly one fixed symbol.

    Returns None when the classes do not form such a resolution (no fixed
    symbol, several of them, or ragged arities).
    """
    if not classes:
        return None
    arities = set()
    fixed_names = set()
    for pattern in classes:
        fixed_slots = [s for s in pattern if s != ANTI_SLOT]
        if len(fixed_slots) != 1:
            return None
        fixed_names.add(fixed_slots[0])
        arities.add(len(pattern) - 1)
    if len(arities) != 1 or len(fixed_names) != 1:
        return None
    arity = arities.pop()
    name = fixed_names.pop()
    m = [0] * (arity + 1)
    for pattern, coeff in classes.items():
        n = pattern.index(name)
        m[n] = -coeff if n & 1 else coeff
    return m, arity


# ---------------------------------------------------------------------------
# reports


@dataclass
class IdentityReport:
    identity: str
    params: dict
    status: str
    profile: list | None = None
    witness: dict | None = None
    terms: int | None = None
    details: dict | None = None
    elapsed_ms: float = 0.0

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "profile": self.profile,
            "profile_sign": PROFILE_SIGN_CONVENTION,
            "witness": self.witness,
            "terms": self.terms,
            "details": self.details,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _coeff_json(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return value


# ---------------------------------------------------------------------------
# bracket shapes


def _atoms(indices):
    return tuple(Atom(i) for i in indices)


def double_action_expr(N: int) -> Bracket:
    """One N-bracket acting on another: the inner bracket is the last entry."""
    inner = Bracket(_atoms(range(N, 2 * N)))
    return Bracket(_atoms(range(1, N)) + (inner,))


def flat_bracket_expr(size: int, lead_fixed: str | None = None) -> Bracket:
    """Flat bracket of ``size`` entries, optionally with a leading fixed symbol."""
    if lead_fixed is None:
        return Bracket(_atoms(range(1, size + 1)))
    return Bracket((Atom(lead_fixed),) + _atoms(range(1, size)))


def split_shape(L: int) -> Bracket:
    """[[A B1..B2L] [B_{2L+1}..B_{4L+1}] B_{4L+2}..B_{6L}]"""
    head = Bracket((Atom("A"),) + _atoms(range(1, 2 * L + 1)))
    inner = Bracket(_atoms(range(2 * L + 1, 4 * L + 2)))
    return Bracket((head, inner) + _atoms(range(4 * L + 2, 6 * L + 1)))


def nested_shape(L: int) -> Bracket:
    """[[A [B1..B_{2L+1}] B_{2L+2}..B_{4L}] B_{4L+1}..B_{6L}]"""
    inner = Bracket(_atoms(range(1, 2 * L + 2)))
    middle = Bracket((Atom("A"), inner) + _atoms(range(2 * L + 2, 4 * L + 1)))
    return Bracket((middle,) + _atoms(range(4 * L + 1, 6 * L + 1)))


def decomposition_target(L: int) -> Bracket:
    return nested_shape(L)


def decomposition_basis(L: int) -> list:
    """Flat (6L+1)-bracket and the bracket of A with two inner brackets."""
    flat = Bracket((Atom("A"),) + _atoms(range(1, 6 * L + 1)))
    first = Bracket(_atoms(range(1, 2 * L + 2)))
    second = Bracket(_atoms(range(2 * L + 2, 4 * L + 3)))
    paired = Bracket((Atom("A"), first, second) + _atoms(range(4 * L + 3, 6 * L + 1)))
    return [flat, paired]


def _profile_auto(expr, budget, jobs=1):
    try:
        return fast_profile(expr, budget=budget)
    except UnsupportedShapeError:
        return oracle_profile(expr, budget=budget, jobs=jobs)


# ---------------------------------------------------------------------------
# verifiers


def verify_even_gji(N: int, budget=DEFAULT_TERM_BUDGET, jobs=1) -> IdentityReport:
    """Check that one N-bracket acting on another reduces to zero.

    Holds for even N; for odd N the report is violated and carries the first
    surviving class as witness.
    """
    if not isinstance(N, int) or N < 2:
        raise UnsupportedParameter(f"bracket size must be an integer >= 2, got {N}")
    expr = double_action_expr(N)
    terms = naive_term_count(expr)
    start = perf_counter()
    classes = oracle_profile(expr, budget=budget, jobs=jobs)
    elapsed = (perf_counter() - start) * 1e3
    witness = None
    if classes:
        pattern = min(classes, key=word_sort_key)
        witness = {
            "pattern": pattern_str(pattern),
            "coefficient": _coeff_json(classes[pattern]),
            "expected": 0,
        }
    return IdentityReport(
        identity="even",
        params={"N": N},
        status="verified" if not classes else "violated",
        witness=witness,
        terms=terms,
        details={"surviving_classes": len(classes)},
        elapsed_ms=elapsed,
    )


def odd_reduction_constant(N: int, budget=DEFAULT_TERM_BUDGET, jobs=1, path="fast") -> Fraction:
    """Constant k with profile(double action) = k * profile(flat bracket).

    Defined for odd N.  Raises ProportionalityError if no single k fits every
    class, which would falsify the reduction claim.
    """
    if not isinstance(N, int) or N < 1 or N % 2 == 0:
        raise UnsupportedParameter(f"odd bracket size required, got {N}")
    profile = oracle_profile if path == "oracle" else _profile_auto
    double = profile(double_action_expr(N), budget=budget, jobs=jobs)
    flat = profile(flat_bracket_expr(2 * N - 1), budget=budget, jobs=jobs)
    if set(double) != set(flat):
        raise ProportionalityError("profiles live on different classes")
    ratio = None
    for pattern in flat:
        k = Fraction(double[pattern]) / Fraction(flat[pattern])
        if ratio is None:
            ratio = k
        elif k != ratio:
            raise ProportionalityError(
                f"class {pattern_str(pattern)} gives {k}, earlier classes gave {ratio}"
            )
    return ratio


def verify_odd_reduction(N: int, budget=DEFAULT_TERM_BUDGET, jobs=1) -> IdentityReport:
    terms = naive_term_count(double_action_expr(N)) + factorial(2 * N - 1)
    start = perf_counter()
    try:
        k = odd_reduction_constant(N, budget=budget, jobs=jobs)
        witness = None
        status = "verified" if k else "violated"
    except ProportionalityError as exc:
        k = None
        witness = {"reason": str(exc)}
        status = "violated"
    elapsed = (perf_counter() - start) * 1e3
    return IdentityReport(
        identity="odd-reduce",
        params={"N": N},
        status=status,
        witness=witness,
        terms=terms,
        details={"constant": None if k is None else str(k)},
        elapsed_ms=elapsed,
    )


def bremner_profiles(L: int, budget=DEFAULT_TERM_BUDGET):
    """Profiles of the two triple nestings, split shape first.

    Both come out of the fast route; the oracle cross-check lives in the test
    suite so the two routes stay independent.
    """
    if L < 1:
        raise UnsupportedParameter(f"half-order must be >= 1, got {L}")
    side1 = CoefficientProfile.from_classes(fast_profile(split_shape(L), budget=budget), L)
    side2 = CoefficientProfile.from_classes(fast_profile(nested_shape(L), budget=budget), L)
    return side1, side2


PROFILE_VERIFICATION_LIMIT = 3  # beyond this, verify_bremner checks closed forms only


def verify_bremner(L: int, budget=DEFAULT_TERM_BUDGET) -> IdentityReport:
    """Compare both triple-nesting profiles with each other and the closed form.

    For L above PROFILE_VERIFICATION_LIMIT only the closed-form sum rule and
    reflection symmetry are checked and profile computation is marked skipped.
    """
    if not isinstance(L, int) or L < 1:
        raise UnsupportedParameter(f"half-order must be an integer >= 1, got {L}")
    closed = CoefficientProfile.closed_form(L)
    start = perf_counter()
    if L > PROFILE_VERIFICATION_LIMIT:
        sums_ok = (
            sum(closed.m) == factorial(2 * L + 1) ** 3
            and sum(reduced_multiplicity(n, L) for n in range(6 * L + 1)) == 2 * L * (2 * L + 1) ** 2
        )
        status = "verified" if sums_ok and closed.is_reflection_symmetric() else "violated"
        return IdentityReport(
            identity="bremner",
            params={"L": L},
            status=status,
            profile=list(closed.m),
            terms=0,
            details={"profiles": "skipped (closed-form checks only)"},
            elapsed_ms=(perf_counter() - start) * 1e3,
        )
    side1, side2 = bremner_profiles(L, budget=budget)
    terms = collapsed_term_count(split_shape(L)) + collapsed_term_count(nested_shape(L))
    witness = None
    for n in range(closed.width):
        values = (side1.m[n], side2.m[n], closed.m[n])
        if len(set(values)) != 1:
            witness = {
                "n": n,
                "pattern": pattern_str(
                    (ANTI_SLOT,) * n + ("A",) + (ANTI_SLOT,) * (closed.width - 1 - n)
                ),
                "split": _coeff_json(side1.m[n]),
                "nested": _coeff_json(side2.m[n]),
                "closed_form": closed.m[n],
            }
            break
    elapsed = (perf_counter() - start) * 1e3
    return IdentityReport(
        identity="bremner",
        params={"L": L},
        status="verified" if witness is None else "violated",
        profile=list(side1.m),
        witness=witness,
        terms=terms,
        details={"path": "fast"},
        elapsed_ms=elapsed,
    )


def check_sums(L: int) -> IdentityReport:
    """Arithmetic checks: reduced coefficients sum to 2L(2L+1)^2 and the full
    multiplicities to ((2L+1)!)^3."""
    if not isinstance(L, int) or L < 1:
        raise UnsupportedParameter(f"half-order must be an integer >= 1, got {L}")
    start = perf_counter()
    reduced_sum = sum(reduced_multiplicity(n, L) for n in range(6 * L + 1))
    full_sum = sum(closed_form_multiplicity(n, L) for n in range(6 * L + 1))
    expected_reduced = 2 * L * (2 * L + 1) ** 2
    expected_full = factorial(2 * L + 1) ** 3
    ok = reduced_sum == expected_reduced and full_sum == expected_full
    witness = None
    if not ok:
        witness = {
            "reduced_sum": reduced_sum,
            "expected_reduced_sum": expected_reduced,
            "multiplicity_sum": str(full_sum),
            "expected_multiplicity_sum": str(expected_full),
        }
    return IdentityReport(
        identity="sums",
        params={"L": L},
        status="verified" if ok else "violated",
        witness=witness,
        terms=0,
        details={"reduced_sum": reduced_sum, "multiplicity_sum": str(full_sum)},
        elapsed_ms=(perf_counter() - start) * 1e3,
    )


# ---------------------------------------------------------------------------
# exact decomposition


def _solve_exact(rows, rhs):
    """Solution of rows * x = rhs over the rationals, or None if inconsistent.

    Underdetermined systems return the minimum-norm solution (free components
    chosen by projecting the particular solution onto the null space).
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, m) if aug[i][c]), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pivot = aug[r][c]
        aug[r] = [x / pivot for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(aug[i][ncols] for i in range(r, m)):
        return None
    solution = [Fraction(0)] * ncols
    for row_i, c in enumerate(pivots):
        solution[c] = aug[row_i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return solution
    null_basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_i, c in enumerate(pivots):
            v[c] = -aug[row_i][fc]
        null_basis.append(v)
    k = len(null_basis)
    gram = [[sum(a * b for a, b in zip(null_basis[i], null_basis[j])) for j in range(k)]
            for i in range(k)]
    gram_rhs = [-sum(a * b for a, b in zip(null_basis[i], solution)) for i in range(k)]
    shift = _solve_exact(gram, gram_rhs)
    return [solution[c] + sum(shift[t] * null_basis[t][c] for t in range(k))
            for c in range(ncols)]


def decompose(target, basis, budget=DEFAULT_TERM_BUDGET, jobs=1):
    """Exact rationals a_i with profile(target) = sum a_i profile(basis_i).

    Returns None when the target profile is outside the basis span.  Target
    and basis must use the same family index set.
    """
    target_set = set(anti_indices(target))
    for expr in basis:
        if set(anti_indices(expr)) != target_set:
            raise ValueError(
                f"basis entry {render(expr)} does not use the target's family indices"
            )
    target_profile = _profile_auto(target, budget, jobs)
    basis_profiles = [_profile_auto(expr, budget, jobs) for expr in basis]
    classes = set(target_profile)
    for p in basis_profiles:
        classes |= set(p)
    ordered = sorted(classes, key=word_sort_key)
    rows = [[p.get(pattern, 0) for p in basis_profiles] for pattern in ordered]
    rhs = [target_profile.get(pattern, 0) for pattern in ordered]
    return _solve_exact(rows, rhs)


def verify_decomposition(L: int, budget=DEFAULT_TERM_BUDGET, jobs=1) -> IdentityReport:
    """Decompose the nested shape over the flat bracket and the paired shape."""
    if not isinstance(L, int) or L < 1:
        raise UnsupportedParameter(f"half-order must be an integer >= 1, got {L}")
    target = decomposition_target(L)
    basis = decomposition_basis(L)
    terms = collapsed_term_count(target) + sum(collapsed_term_count(b) for b in basis)
    start = perf_counter()
    coefficients = decompose(target, basis, budget=budget, jobs=jobs)
    elapsed = (perf_counter() - start) * 1e3
    details = {
        "target": render(target),
        "basis": [render(b) for b in basis],
        "coefficients": None if coefficients is None
        else [str(c) for c in coefficients],
    }
    return IdentityReport(
        identity="decomp",
        params={"L": L},
        status="verified" if coefficients is not None else "violated",
        witness=None if coefficients is not None else {"reason": "target outside basis span"},
        terms=terms,
        details=details,
        elapsed_ms=elapsed,
    )
