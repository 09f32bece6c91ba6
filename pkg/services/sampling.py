"""
Random class members for tests and the randomized property suites.

Non-affine classes are sampled exactly by shuffling inside the blocks
of words the class must keep together. Affine classes are sampled by a
random walk over the class's canonical generators placed on random
wires, which reaches every member but is not uniform.
"""

import logging
import random
from typing import Callable, Dict, List, Optional

from services.errors import BadParameter
from services.gate_core import (
    Gate,
    compose,
    embed,
    from_permutation,
    weight,
)
from services.lattice import ClassKind, GateClass, canonical_generator

logger = logging.getLogger(__name__)

_WALK_FACTOR = 4


def _shuffle_blocks(n: int, key: Callable[[int], int], rng: random.Random) -> List[int]:
    blocks: Dict[int, List[int]] = {}
    for x in range(1 << n):
        blocks.setdefault(key(x), []).append(x)
    outputs = [0] * (1 << n)
    for words in blocks.values():
        images = list(words)
        rng.shuffle(images)
        for x, y in zip(words, images):
            outputs[x] = y
    return outputs


def _parity_flipping(n: int, rng: random.Random) -> List[int]:
    evens = [x for x in range(1 << n) if weight(x) % 2 == 0]
    odds = [x for x in range(1 << n) if weight(x) % 2 == 1]
    outputs = [0] * (1 << n)
    for source, target in ((evens, odds), (odds, evens)):
        images = list(target)
        rng.shuffle(images)
        for x, y in zip(source, images):
            outputs[x] = y
    return outputs


def _random_wire_permutation(n: int, rng: random.Random) -> Gate:
    wires = list(range(1, n + 1))
    rng.shuffle(wires)
    out = []
    for x in range(1 << n):
        y = 0
        for source in wires:
            y = (y << 1) | ((x >> (n - source)) & 1)
        out.append(y)
    return from_permutation(out, n)


def _random_offset(n: int, rng: random.Random, even: bool) -> int:
    b = rng.getrandbits(n)
    if even and weight(b) % 2:
        b ^= 1
    return b


def _walk(n: int, generators: List[Gate], rng: random.Random) -> Gate:
    usable = [g for g in generators if g.arity <= n]
    G = _random_wire_permutation(n, rng)
    if not usable:
        return G
    # TK_n on all n wires commutes with every wire order; the step count must vary in parity
    for _ in range(rng.randint(n * n, _WALK_FACTOR * n * n)):
        g = rng.choice(usable)
        wires = rng.sample(range(1, n + 1), g.arity)
        G = compose(embed(g, wires, n), G)
    return G


def random_member(c: GateClass, n: int, rng: Optional[random.Random] = None) -> Gate:
    """A random n-bit gate inside c."""
    if n < 1:
        raise BadParameter(f"width must be at least 1, got {n}")
    rng = rng or random.Random()
    kind = c.kind
    if kind is ClassKind.ALL:
        outputs = list(range(1 << n))
        rng.shuffle(outputs)
        return from_permutation(outputs, n)
    if kind is ClassKind.FREDKIN:
        return from_permutation(_shuffle_blocks(n, weight, rng), n)
    if kind is ClassKind.MOD:
        return from_permutation(_shuffle_blocks(n, lambda x: weight(x) % c.modulus, rng), n)
    if kind is ClassKind.FREDKIN_NOT:
        if rng.random() < 0.5:
            return from_permutation(_parity_flipping(n, rng), n)
        return from_permutation(_shuffle_blocks(n, lambda x: weight(x) % 2, rng), n)

    # affine: walk on the linear generators, then add an offset the class allows
    linear = [g for g in canonical_generator(c) if g.table[0] == 0]
    G = _walk(n, linear, rng) if kind is not ClassKind.F4 else _walk(n, canonical_generator(c), rng)
    if kind in (ClassKind.NOT, ClassKind.T4_NOT, ClassKind.T6_NOT, ClassKind.CNOT, ClassKind.CNOTNOT_NOT):
        b = _random_offset(n, rng, even=False)
    elif kind in (ClassKind.NOTNOT, ClassKind.T4_NOTNOT, ClassKind.T6_NOTNOT, ClassKind.CNOTNOT):
        b = _random_offset(n, rng, even=True)
    else:
        b = 0
    if not b:
        return G
    return Gate(n, tuple(y ^ b for y in G.table))


def random_gate(n: int, rng: Optional[random.Random] = None) -> Gate:
    return random_member(GateClass(ClassKind.ALL), n, rng)
