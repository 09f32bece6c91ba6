"""
Gate Census.

Exact class sizes from closed formulas, generator counts by Möbius
inversion over the classes realizable at width n, the brute-force
census of every n-bit permutation, and the asymptotic expansions of
log2 of each class size. All counting is done on Python ints.
"""

import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from services.errors import BadParameter, NotOrthogonal, TooLarge
from services.gate_core import AffineForm, Gate, signature_from_affine, weight
from services.gf2 import iter_invertible_matrices
from services.lattice import (
    AFFINE_CLASSES,
    ClassKind,
    GateClass,
    classify_gate,
    leq,
    parse_class,
    realizable_classes,
    satisfies,
)

logger = logging.getLogger(__name__)

# --- Configuration ---
BRUTE_MAX_ARITY = int(os.getenv('REVGEN_BRUTE_MAX_ARITY', '3'))
CENSUS_FILE = os.getenv(
    'REVGEN_CENSUS_FILE',
    os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data', 'reference_census.json'),
)
DEFAULT_JOBS = int(os.getenv('REVGEN_JOBS', '1'))

SIG_FIGS = 5
EXACT_DIGITS = 64


def _check_n(n: int):
    if n < 1:
        raise BadParameter(f"width must be at least 1, got {n}")


def _qpoch_log2(q: float) -> float:
    """-Σ log2(1 - q^i), i >= 1, summed until the terms vanish."""
    total, term, i = 0.0, q, 1
    while term > 1e-18:
        total -= math.log2(1 - term)
        i += 1
        term = q ** i
    return total


ALPHA = _qpoch_log2(0.5)
BETA = _qpoch_log2(0.25)


# --- Class Sizes ---

def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _t4_size(n: int) -> int:
    m = n // 2
    top = m - 1 if n % 2 == 0 else m
    return 2 ** (m * m) * _prod(2 ** (2 * i) - 1 for i in range(1, top + 1))


def _t6_size(n: int) -> int:
    if n == 1:
        return 1
    m, r = divmod(n, 4)
    if r == 2:
        return 2 ** (4 * m * m + 1) * _prod(2 ** (2 * i) - 1 for i in range(1, 2 * m + 1))
    if r == 3:
        return (2 ** (4 * m * m + 2 * m + 1) * (2 ** (2 * m + 1) + (-1) ** m)
                * _prod(2 ** (2 * i) - 1 for i in range(1, 2 * m + 1)))
    if r == 0:
        return (2 ** (4 * m * m - 2 * m + 1) * (2 ** (2 * m - 1) - (-1) ** m)
                * _prod(2 ** (2 * i) - 1 for i in range(1, 2 * m - 1)))
    return (2 ** (4 * m * m - 2 * m + 1) * (2 ** (2 * m) - (-1) ** m)
            * _prod(2 ** (2 * i) - 1 for i in range(1, 2 * m)))


def _residue_block_sizes(n: int, k: int) -> List[int]:
    return [sum(math.comb(n, j) for j in range(i, n + 1, k)) for i in range(k)]


def _linear_size(kind: ClassKind, n: int) -> int:
    if kind in (ClassKind.T6, ClassKind.T6_NOTNOT, ClassKind.T6_NOT):
        return _t6_size(n)
    if kind in (ClassKind.T4, ClassKind.T4_NOTNOT, ClassKind.T4_NOT):
        return _t4_size(n)
    return math.factorial(n)


@lru_cache(maxsize=None)
def class_size(c: GateClass, n: int) -> int:
    """Number of n-bit gates in c."""
    _check_n(n)
    kind = c.kind
    if kind is ClassKind.ALL:
        return math.factorial(2 ** n)
    if kind is ClassKind.FREDKIN_NOT:
        return 2 * math.factorial(2 ** (n - 1)) ** 2
    if kind is ClassKind.MOD:
        if c.modulus == 2:
            return math.factorial(2 ** (n - 1)) ** 2
        return _prod(math.factorial(a) for a in _residue_block_sizes(n, c.modulus))
    if kind is ClassKind.FREDKIN:
        return _prod(math.factorial(math.comb(n, i)) for i in range(n + 1))
    if kind is ClassKind.CNOT:
        return 2 ** (n * (n + 1) // 2) * _prod(2 ** i - 1 for i in range(1, n + 1))
    if kind is ClassKind.CNOTNOT:
        return 2 ** (n * (n + 1) // 2 - 1) * _prod(2 ** i - 1 for i in range(1, n))
    if kind is ClassKind.CNOTNOT_NOT:
        return 2 ** (n * (n + 1) // 2) * _prod(2 ** i - 1 for i in range(1, n))
    if kind is ClassKind.F4:
        return _t4_size(n)
    base = _linear_size(kind, n)
    if kind in (ClassKind.NOT, ClassKind.T4_NOT, ClassKind.T6_NOT):
        return base * 2 ** n
    if kind in (ClassKind.NOTNOT, ClassKind.T4_NOTNOT, ClassKind.T6_NOTNOT):
        return base * 2 ** (n - 1)
    return base


@lru_cache(maxsize=None)
def generator_count(c: GateClass, n: int) -> int:
    """Number of n-bit gates G with classify_gate(G) == c."""
    _check_n(n)
    classes = realizable_classes(n)
    if c not in classes:
        return 0
    total = class_size(c, n)
    for d in classes:
        if d != c and leq(d, c):
            total -= generator_count(d, n)
    return total


def census_table(n: int) -> Dict[GateClass, int]:
    return {c: generator_count(c, n) for c in realizable_classes(n)}


# --- Brute Census ---

def _census_slice(n: int, first: int) -> Counter:
    size = 1 << n
    rest = [x for x in range(size) if x != first]
    counts: Counter = Counter()
    for tail in permutations(rest):
        counts[classify_gate(Gate(n, (first,) + tail))] += 1
    return counts


def brute_census(n: int, jobs: Optional[int] = None) -> Dict[GateClass, int]:
    """Classify every n-bit permutation; slices by G(0) run in worker processes."""
    _check_n(n)
    if n > BRUTE_MAX_ARITY:
        raise TooLarge(f"brute census enumerates (2^{n})! gates; the limit is n <= {BRUTE_MAX_ARITY}")
    jobs = DEFAULT_JOBS if jobs is None else jobs
    firsts = range(1 << n)
    total: Counter = Counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for counts in pool.map(_census_slice, [n] * len(firsts), firsts):
                total.update(counts)
    else:
        for first in firsts:
            total.update(_census_slice(n, first))
    logger.info(f"Brute census at n={n}: {sum(total.values())} gates in {len(total)} classes")
    return {c: total.get(c, 0) for c in realizable_classes(n)}


# --- Orthogonal Cosets ---

def characteristic_vector(columns: Sequence[int], n: int) -> int:
    """c(A): wire i set iff column i has weight ≡ 3 mod 4."""
    form = AffineForm(n, tuple(columns), 0)
    if not form.is_orthogonal:
        raise NotOrthogonal("characteristic vectors are defined for orthogonal matrices only")
    word = 0
    for w in form.column_weights:
        word = (word << 1) | (1 if w % 4 == 3 else 0)
    return word


def coset_count(n: int) -> int:
    """Number of n-bit words of weight ≡ 0 mod 4."""
    _check_n(n)
    return sum(math.comb(n, j) for j in range(0, n + 1, 4))


def affine_class_counts(n: int) -> Dict[GateClass, int]:
    """Membership counts of the affine classes by enumerating every affine n-bit gate."""
    counts = {c: 0 for c in AFFINE_CLASSES}
    matrices = 0
    for columns in iter_invertible_matrices(n):
        matrices += 1
        for b in range(1 << n):
            sig = signature_from_affine(AffineForm(n, columns, b))
            for c in AFFINE_CLASSES:
                if satisfies(c, sig):
                    counts[c] += 1
    logger.info(f"Enumerated {matrices} invertible {n}x{n} matrices")
    return counts


# --- Asymptotics ---

def _stirling_log2(m: float) -> float:
    return m * math.log2(m) - m / math.log(2) + 0.5 * math.log2(2 * math.pi * m)


def _t6_correction(n: int) -> float:
    """log2 of the case factor the leading T6 expansion drops."""
    m, r = divmod(n, 4)
    if r == 2:
        return 0.0
    if r == 3:
        return math.log2(1 + (-1) ** m * 2.0 ** -(2 * m + 1))
    if r == 0:
        return math.log2(1 - (-1) ** m * 2.0 ** -(2 * m - 1))
    return math.log2(1 - (-1) ** m * 2.0 ** -(2 * m))


def asymptotic_estimate(c: GateClass, n: int, refined: bool = True) -> float:
    """Leading expansion of log2 class_size(c, n).

    refined adds back the T6 case factor, without which the expansion
    is only good to about 1% at n = 7.
    """
    _check_n(n)
    N = 2.0 ** n
    ln2 = math.log(2)
    kind = c.kind
    head = n * N - N / ln2
    if kind is ClassKind.ALL:
        return head + n / 2 + 0.5 * math.log2(2 * math.pi)
    if kind is ClassKind.MOD and c.modulus == 2:
        return head - N + n + math.log2(math.pi)
    if kind is ClassKind.FREDKIN_NOT:
        return head - N + n + math.log2(math.pi) + 1
    if kind is ClassKind.MOD:
        return head - N * math.log2(c.modulus)
    if kind is ClassKind.FREDKIN:
        return head - N * 0.5 * math.log2(math.pi * math.e * n / 2)
    if kind is ClassKind.CNOT:
        return n * (n + 1) - ALPHA
    if kind is ClassKind.CNOTNOT_NOT:
        return n * n - ALPHA
    if kind is ClassKind.CNOTNOT:
        return n * n - 1 - ALPHA
    if kind in (ClassKind.T4, ClassKind.F4, ClassKind.T4_NOT, ClassKind.T4_NOTNOT):
        base = n * (n - 1) / 2 - BETA
    elif kind in (ClassKind.T6, ClassKind.T6_NOT, ClassKind.T6_NOTNOT):
        base = (n * n - 3 * n + 4) / 2 - BETA
        if refined:
            base += _t6_correction(n)
    else:
        base = _stirling_log2(n)
    if kind in (ClassKind.NOT, ClassKind.T4_NOT, ClassKind.T6_NOT):
        return base + n
    if kind in (ClassKind.NOTNOT, ClassKind.T4_NOTNOT, ClassKind.T6_NOTNOT):
        return base + n - 1
    return base


def asymptotic_check(c: GateClass, n: int, refined: bool = True) -> float:
    """|log2(exact) - estimate| / log2(exact)."""
    exact = math.log2(class_size(c, n))
    if exact <= 0:
        raise BadParameter(f"{c} has a single member at n={n}; no relative error is defined")
    return abs(exact - asymptotic_estimate(c, n, refined)) / exact


# --- Display and Reference Values ---

def round_sig(value: int, digits: int = SIG_FIGS) -> Tuple[int, int]:
    """(mantissa, exponent) with value ≈ mantissa × 10^(exponent - digits + 1), half-up."""
    if value < 0:
        raise BadParameter("counts are non-negative")
    if value == 0:
        return 0, 0
    text = str(value)
    exponent = len(text) - 1
    if len(text) <= digits:
        return value * 10 ** (digits - len(text)), exponent
    scale = 10 ** (len(text) - digits)
    mantissa, rest = divmod(value, scale)
    if 2 * rest >= scale:
        mantissa += 1
    if mantissa == 10 ** digits:
        mantissa //= 10
        exponent += 1
    return mantissa, exponent


def format_sci(value: int, digits: int = SIG_FIGS) -> str:
    mantissa, exponent = round_sig(value, digits)
    text = str(mantissa)
    return f"{text[0]}.{text[1:]}e+{exponent}"


def format_count(value: int) -> str:
    """Exact up to 64 digits, scientific with 5 significant figures beyond."""
    text = str(value)
    return text if len(text) <= EXACT_DIGITS else format_sci(value)


@dataclass(frozen=True)
class ReferenceRow:
    classes: Tuple[GateClass, ...]
    counts: Dict[int, Union[int, str]]

    @property
    def label(self) -> str:
        return ", ".join(c.name for c in self.classes)


@dataclass(frozen=True)
class RowComparison:
    label: str
    expected: str
    computed: str
    matches: bool


def reference_census(path: Optional[str] = None) -> List[ReferenceRow]:
    with open(path or CENSUS_FILE, "r") as f:
        data = json.load(f)
    rows = []
    for row in data["rows"]:
        classes = tuple(parse_class(name) for name in row["classes"])
        counts = {int(n): value for n, value in row["counts"].items()}
        rows.append(ReferenceRow(classes, counts))
    return rows


def _matches(expected: Union[int, str], computed: int) -> bool:
    if isinstance(expected, int):
        return expected == computed
    mantissa_text, _, exponent_text = expected.lower().partition("e")
    digits = mantissa_text.replace(".", "")
    mantissa, exponent = round_sig(computed, len(digits))
    return mantissa == int(digits) and exponent == int(exponent_text)


def compare_with_reference(n: int, path: Optional[str] = None) -> List[RowComparison]:
    """Formula generator counts against the published values at width n."""
    out = []
    for row in reference_census(path):
        if n not in row.counts:
            continue
        expected = row.counts[n]
        computed = [generator_count(c, n) for c in row.classes]
        render = format_sci if isinstance(expected, str) else str
        shown = sorted({render(value) for value in computed})
        matches = all(_matches(expected, value) for value in computed)
        out.append(RowComparison(row.label, str(expected), " / ".join(shown), matches))
    return out
