"""
Exhaustive Property Suites.

Each suite checks one structural fact about reversible gates over every
gate (or every matrix) at desk scale and reports how many cases it
checked and the first counterexamples found.

Suites over every permutation run at min(n, 3) bits. Suites over every
matrix run at min(n, 4) bits. predicate-monotone samples 10 members of
each class at max(min(n, 4), 2) bits.
inclusion-exclusion ignores n: it takes every tuple of up to three
6-bit vectors and of four 4-bit vectors, plus seeded random 4-tuples
at 5 and 6 bits.
"""

import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from services.census import characteristic_vector, class_size, coset_count
from services.errors import BadParameter
from services.gate_core import (
    AffineForm,
    Gate,
    affine_form,
    delta_gcd,
    dual,
    inner_product,
    preserves_inner_product,
    signature,
    signature_from_affine,
    weight,
    weight_deltas,
    word_to_bits,
    xor_weight_by_inclusion_exclusion,
)
from services.gf2 import is_permutation_matrix, iter_invertible_matrices, span_table
from services.lattice import (
    T4,
    T6,
    classify_gate,
    classify_signature,
    leq,
    minimum_class,
    realizable_classes,
    satisfies,
)
from services.sampling import random_member

logger = logging.getLogger(__name__)

# --- Configuration ---
DEFAULT_SEED = int(os.getenv('REVGEN_SEED', '2016'))
DEFAULT_JOBS = int(os.getenv('REVGEN_JOBS', '1'))

MAX_PERMUTATION_BITS = 3
MAX_MATRIX_BITS = 4
MAX_VECTOR_BITS = 6
RANDOM_TUPLES = 2000
MAX_REPORTED = 5


# --- Data Structures ---

@dataclass
class PropertyResult:
    name: str
    statement: str
    checked: int = 0
    counterexamples: List[str] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, example: str):
        self.failures += 1
        if len(self.counterexamples) < MAX_REPORTED:
            self.counterexamples.append(example)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status}  {self.name}: {self.statement} ({self.checked} cases)"
        for example in self.counterexamples:
            line += f"\n      counterexample: {example}"
        return line


def all_gates(n: int) -> Iterator[Gate]:
    for outputs in permutations(range(1 << n)):
        yield Gate(n, outputs)


def _label(G: Gate) -> str:
    return f"perm {G.arity}: " + " ".join(map(str, G.table))


def _perm_bits(n: int) -> int:
    return min(n, MAX_PERMUTATION_BITS)


def _matrix_bits(n: int) -> int:
    return min(n, MAX_MATRIX_BITS)


# --- Suites over every gate ---

def weight_balance(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("weight-balance", "weighted weight deltas sum to 0")
    for G in all_gates(_perm_bits(n)):
        result.checked += 1
        if weight_deltas(G).weighted_sum():
            result.fail(_label(G))
    return result


def no_mod_shifters(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("no-mod-shifters", "no gate shifts every weight by a fixed j != 0 mod k, 3 <= k <= 6")
    for G in all_gates(_perm_bits(n)):
        profile = weight_deltas(G)
        for k in range(3, 7):
            result.checked += 1
            residues = {d % k for d in profile.deltas}
            if len(residues) == 1 and residues != {0}:
                result.fail(f"{_label(G)} shifts by {residues.pop()} mod {k}")
    return result


def inner_product_mod3(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("inner-product-mod-3", "non-conservative gates do not preserve x.y mod 3")
    for G in all_gates(_perm_bits(n)):
        if weight_deltas(G).deltas == (0,):
            continue
        result.checked += 1
        if preserves_inner_product(G, 3):
            result.fail(_label(G))
    return result


def orthogonal_is_linear(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("orthogonal-is-linear", "gates preserving x.y mod 2 are linear")
    for G in all_gates(_perm_bits(n)):
        if not preserves_inner_product(G, 2):
            continue
        result.checked += 1
        form = affine_form(G)
        if form is None or not form.is_linear:
            result.fail(_label(G))
    return result


def dual_closed(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("dual-closed", "G and its dual lie in the same class")
    for G in all_gates(_perm_bits(n)):
        result.checked += 1
        if classify_gate(G) != classify_gate(dual(G)):
            result.fail(f"{_label(G)}: {classify_gate(G)} vs {classify_gate(dual(G))}")
    return result


def gcd_agreement(n: int, seed: int) -> PropertyResult:
    result = PropertyResult(
        "gcd-agreement", "gcd of W(G) equals the respecting number except on parity-flipping gates"
    )
    for G in all_gates(_perm_bits(n)):
        result.checked += 1
        sig = signature(G)
        direct = delta_gcd(sig.profile)
        if sig.parity_flipping:
            ok = direct.value == 1 and sig.respecting.value == 2
        else:
            ok = direct == sig.respecting
        if not ok:
            result.fail(f"{_label(G)}: gcd {direct}, respecting number {sig.respecting}")
    return result


def classifier_vs_search(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("classifier-minimum", "the decision cascade agrees with a direct minimum search")
    bits = _perm_bits(n)
    candidates = realizable_classes(bits)
    for G in all_gates(bits):
        result.checked += 1
        sig = signature(G)
        fast, slow = classify_signature(sig), minimum_class(sig, candidates)
        if fast != slow:
            result.fail(f"{_label(G)}: cascade {fast}, search {slow}")
    return result


# --- Suites over matrices ---

def linear_mod_k(n: int, seed: int) -> PropertyResult:
    result = PropertyResult(
        "linear-mod-k", "no nontrivial invertible matrix preserves weight mod 3, 5 or 6"
    )
    for bits in range(2, _matrix_bits(n) + 1):
        weights = [weight(x) for x in range(1 << bits)]
        for columns in iter_invertible_matrices(bits):
            if is_permutation_matrix(columns):
                continue
            image = span_table(columns, bits)
            for k in (3, 5, 6):
                result.checked += 1
                if all((weight(y) - weights[x]) % k == 0 for x, y in enumerate(image)):
                    result.fail(f"columns {[word_to_bits(c, bits) for c in columns]} mod {k}")
    return result


def _mod4_conditions(form: AffineForm) -> bool:
    b = form.offset
    if weight(b) % 4:
        return False
    for v in form.columns:
        if (weight(v) + 2 * inner_product(v, b)) % 4 != 1:
            return False
    return all(inner_product(u, v) % 2 == 0 for u, v in combinations(form.columns, 2))


def affine_mod4(n: int, seed: int) -> PropertyResult:
    result = PropertyResult(
        "affine-mod-4", "an affine gate is mod-4-preserving iff its offset and columns meet the basis conditions"
    )
    bits = _matrix_bits(n)
    for columns in iter_invertible_matrices(bits):
        for b in range(1 << bits):
            result.checked += 1
            form = AffineForm(bits, columns, b)
            if signature_from_affine(form).mod4_preserving != _mod4_conditions(form):
                result.fail(f"columns {[word_to_bits(c, bits) for c in columns]}, b = {word_to_bits(b, bits)}")
    return result


def characteristic_weight(n: int, seed: int) -> PropertyResult:
    result = PropertyResult(
        "characteristic-vector", "|c(A)| = 0 mod 4 for orthogonal A, and cosets of T6 in T4 match"
    )
    bits = _matrix_bits(n)
    orthogonal = 0
    for columns in iter_invertible_matrices(bits):
        if not AffineForm(bits, columns, 0).is_orthogonal:
            continue
        orthogonal += 1
        result.checked += 1
        c = characteristic_vector(columns, bits)
        if weight(c) % 4:
            result.fail(f"columns {[word_to_bits(v, bits) for v in columns]} give c(A) = {word_to_bits(c, bits)}")
    result.checked += 1
    if orthogonal != class_size(T4, bits):
        result.fail(f"{orthogonal} orthogonal matrices, expected {class_size(T4, bits)}")
    if bits >= 2 and class_size(T4, bits) != coset_count(bits) * class_size(T6, bits):
        result.fail(f"T4/T6 ratio differs from {coset_count(bits)} at n={bits}")
    return result


# --- Randomized suites ---

def _check_xor(result: PropertyResult, vectors: Sequence[int], width: int):
    result.checked += 1
    xor = 0
    for v in vectors:
        xor ^= v
    if xor_weight_by_inclusion_exclusion(vectors) != weight(xor):
        result.fail(f"{[word_to_bits(v, width) for v in vectors]}")


def inclusion_exclusion(n: int, seed: int) -> PropertyResult:
    """Every tuple of up to 3 vectors at 6 bits and of 4 vectors at 4 bits, then random 4-tuples at 5-6 bits."""
    result = PropertyResult("inclusion-exclusion", "|v1 ^ ... ^ vt| equals the signed sum over ANDs")
    for t in range(1, 4):
        for vectors in product(range(1 << MAX_VECTOR_BITS), repeat=t):
            _check_xor(result, vectors, MAX_VECTOR_BITS)
    for vectors in product(range(1 << MAX_MATRIX_BITS), repeat=4):
        _check_xor(result, vectors, MAX_MATRIX_BITS)
    rng = random.Random(seed)
    for _ in range(RANDOM_TUPLES):
        width = rng.randint(MAX_MATRIX_BITS + 1, MAX_VECTOR_BITS)
        _check_xor(result, [rng.getrandbits(width) for _ in range(4)], width)
    return result


def predicate_monotone(n: int, seed: int) -> PropertyResult:
    result = PropertyResult("predicate-monotone", "membership in c1 implies membership in every c2 >= c1")
    rng = random.Random(seed)
    bits = max(_matrix_bits(n), 2)
    classes = realizable_classes(bits)
    for c in classes:
        for _ in range(10):
            G = random_member(c, bits, rng)
            sig = signature(G)
            result.checked += 1
            if not satisfies(c, sig):
                result.fail(f"sampled {_label(G)} is not in {c}")
            for low in classes:
                for high in classes:
                    if leq(low, high) and satisfies(low, sig) and not satisfies(high, sig):
                        result.fail(f"{_label(G)} in {low} but not in {high}")
    return result


SUITES: Dict[str, Callable[[int, int], PropertyResult]] = {
    "weight-balance": weight_balance,
    "no-mod-shifters": no_mod_shifters,
    "inner-product-mod-3": inner_product_mod3,
    "orthogonal-is-linear": orthogonal_is_linear,
    "linear-mod-k": linear_mod_k,
    "affine-mod-4": affine_mod4,
    "characteristic-vector": characteristic_weight,
    "dual-closed": dual_closed,
    "inclusion-exclusion": inclusion_exclusion,
    "gcd-agreement": gcd_agreement,
    "classifier-minimum": classifier_vs_search,
    "predicate-monotone": predicate_monotone,
}


def _run(name: str, n: int, seed: int) -> PropertyResult:
    return SUITES[name](n, seed)


def run_property_suite(
    n: int,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    only: Optional[List[str]] = None,
) -> List[PropertyResult]:
    """Run the named suites (all by default), one worker process per suite when jobs > 1."""
    seed = DEFAULT_SEED if seed is None else seed
    jobs = DEFAULT_JOBS if jobs is None else jobs
    names = list(only) if only else list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise BadParameter(f"unknown property suites: {', '.join(unknown)}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, names, [n] * len(names), [seed] * len(names)))
    else:
        results = [_run(name, n, seed) for name in names]
    for r in results:
        log = logger.info if r.passed else logger.warning
        log(f"{r.name}: {r.checked} cases, {r.failures} failures")
    return results
