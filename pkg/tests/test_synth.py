import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from services.circuit import realized_transformation, verify
from services.errors import (
    AncillaBudgetExceeded,
    ArityTooSmall,
    FlavorMismatch,
    NotInClass,
    Singular,
)
from services.gate_core import (
    AffineForm,
    affine_form,
    ck_gate,
    cnot_gate,
    cnotnot_gate,
    controlled_ck_gate,
    controlled_not_gate,
    controlled_swap_gate,
    fk_gate,
    fredkin_gate,
    from_permutation,
    identity_gate,
    not_gate,
    notnot_gate,
    permute_wires,
    tk_gate,
    toffoli_gate,
    transposition_gate,
)
from services.lattice import (
    AFFINE_CLASSES,
    ALL,
    CNOT,
    F4,
    FREDKIN,
    FREDKIN_NOT,
    NOT,
    T4,
    T6,
    TRIVIAL,
    classify_gate,
    mod_class,
)
from services.sampling import random_member
from services.synth import SynthesisRequest, ancilla_ceiling, synthesize
from services.synth_affine import (
    synth_affine,
    synth_isometry,
    synth_pp_affine,
    synth_pr_affine,
    t_reduce,
)
from services.synth_nonaffine import (
    build_cck,
    fredkin_from_ck,
    multi_controlled_not,
    multi_controlled_swap,
    synth_all,
    synth_conservative,
    synth_modk,
    synth_parity,
    transpositions,
)

seeds = st.integers(0, 2 ** 32 - 1)


def _implements(circuit, target) -> bool:
    return verify(circuit, target).implements_target


# --- Toffoli ---

def test_transpositions_rebuild_the_permutation():
    G = from_permutation([3, 0, 1, 2, 5, 4, 6, 7], 3)
    table = list(range(8))
    for y, z in transpositions(G):
        table = [z if v == y else y if v == z else v for v in table]
    assert tuple(table) == G.table


def test_multi_controlled_not():
    two = multi_controlled_not(2, "11")
    assert [op.gate.name for op in two.ops] == ["TOFFOLI"] and two.ancilla_count == 0
    three = multi_controlled_not(3, "111")
    assert three.gate_count == 4 and three.ancilla_count == 1
    assert _implements(three, controlled_not_gate("111"))
    assert _implements(multi_controlled_not(3, "011"), controlled_not_gate("011"))
    assert _implements(multi_controlled_not(5, "10110"), controlled_not_gate("10110"))
    with pytest.raises(ArityTooSmall):
        multi_controlled_not(1, "1")


def test_synth_all_examples(random_permutation):
    assert synth_all(identity_gate(3)).gate_count == 0
    sigma = transposition_gate(3, 0b011, 0b101)
    assert _implements(synth_all(sigma), sigma)
    F = random_permutation(4)
    c = synth_all(F)
    assert _implements(c, F) and c.ancilla_count <= 3


# --- Fredkin ---

def test_multi_controlled_swap():
    one = multi_controlled_swap(1, "1")
    assert [op.gate.name for op in one.ops] == ["FREDKIN"]
    two = multi_controlled_swap(2, "11")
    assert two.gate_count == 3 and two.ancilla_count == 1
    assert _implements(multi_controlled_swap(3, "101"), controlled_swap_gate("101"))
    assert _implements(multi_controlled_swap(4, "0010"), controlled_swap_gate("0010"))
    assert all(op.gate.name in ("FREDKIN", "SWAP") for op in multi_controlled_swap(3, "000").ops)


def test_synth_conservative_examples():
    assert synth_conservative(identity_gate(3)).gate_count == 0
    rotation = from_permutation([permute_wires(x, 3, [3, 1, 2]) for x in range(8)], 3)
    c = synth_conservative(rotation)
    assert c.gate_names() <= {"SWAP"} and _implements(c, rotation)
    sigma = transposition_gate(4, 0b0011, 0b0101)
    c = synth_conservative(sigma)
    assert _implements(c, sigma) and c.ancilla_count <= 5
    with pytest.raises(NotInClass):
        synth_conservative(toffoli_gate())


def test_fredkin_from_ck():
    c = fredkin_from_ck(3)
    assert [op.gate.name for op in c.ops] == ["CK3"] * 3
    assert c.ancillas == (1,)
    assert realized_transformation(c) == fredkin_gate()
    assert realized_transformation(fredkin_from_ck(5)) == fredkin_gate()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_build_cck(k):
    assert realized_transformation(build_cck(k)) == controlled_ck_gate(k)


def test_synth_modk_examples():
    c = synth_modk(ck_gate(3), 3)
    assert [op.gate.name for op in c.ops] == ["CK3"]
    with pytest.raises(NotInClass):
        synth_modk(ck_gate(4), 3)


def test_synth_parity_examples():
    assert [op.gate.name for op in synth_parity(notnot_gate()).ops] == ["NOTNOT"]
    assert [op.gate.name for op in synth_parity(not_gate(), flipping=True).ops] == ["NOT"]
    with pytest.raises(NotInClass):
        synth_parity(not_gate())


# --- Affine ---

def test_synth_affine_examples():
    assert synth_affine(affine_form(identity_gate(3))).gate_count == 0
    c = synth_affine(affine_form(cnot_gate()))
    assert [(op.gate.name, op.wires) for op in c.ops] == [("CNOT", (1, 2))]
    with pytest.raises(Singular):
        synth_affine(AffineForm(2, (0b11, 0b11), 0))


def test_synth_pp_and_pr_affine_examples():
    c = synth_pp_affine(AffineForm(2, (0b10, 0b01), 0b11))
    assert c.gate_count == 1 and c.ancilla_count == 1
    assert _implements(c, notnot_gate())
    c = synth_pp_affine(affine_form(cnotnot_gate()))
    assert [op.gate.name for op in c.ops] == ["CNOTNOT"]
    with pytest.raises(NotInClass):
        synth_pp_affine(affine_form(cnot_gate()))
    assert synth_pr_affine(AffineForm(1, (0b1,), 0b1)).gate_names() == {"NOT"}


def test_synth_isometry_examples(rng):
    assert synth_isometry(affine_form(identity_gate(4)), "T4").gate_count == 0
    c = synth_isometry(affine_form(fk_gate(4)), "F4")
    assert [op.gate.name for op in c.ops] == ["FK4"]
    G = random_member(T6, 6, rng)
    c = synth_isometry(affine_form(G), "T6")
    assert c.ancilla_count == 0 and _implements(c, G)
    with pytest.raises(NotInClass):
        synth_isometry(affine_form(tk_gate(4)), "T6")
    with pytest.raises(FlavorMismatch):
        synth_isometry(affine_form(tk_gate(4)), "T8")


@pytest.mark.parametrize("k, flavor, big, target", [
    (2, "T6", "TK10", tk_gate(6)),
    (2, "T4", "TK8", tk_gate(4)),
    (3, "T6", "TK14", tk_gate(6)),
])
def test_t_reduce(k, flavor, big, target):
    c = t_reduce(k, flavor)
    assert [op.gate.name for op in c.ops] == [big] * 3
    assert realized_transformation(c) == target


def test_t_reduce_identity_case():
    c = t_reduce(1, "T6")
    assert [op.gate.name for op in c.ops] == ["TK6"] and c.ancilla_count == 0


# --- Dispatcher ---

def test_ceilings():
    assert ancilla_ceiling(ALL) == 3
    assert ancilla_ceiling(FREDKIN) == 5
    assert ancilla_ceiling(mod_class(4)) == 7
    assert ancilla_ceiling(FREDKIN_NOT) == 6
    assert ancilla_ceiling(CNOT) == 1
    assert ancilla_ceiling(T4) == 0


def test_synthesize_examples():
    c = synthesize(SynthesisRequest(fredkin_gate(), ALL))
    assert c.gate_names() <= {"TOFFOLI"} and _implements(c, fredkin_gate())
    with pytest.raises(NotInClass):
        synthesize(SynthesisRequest(toffoli_gate(), FREDKIN))
    c = synthesize(SynthesisRequest(not_gate(), NOT))
    assert [op.gate.name for op in c.ops] == ["NOT"]
    assert synthesize(SynthesisRequest(identity_gate(2), TRIVIAL)).gate_count == 0


def test_budget_override():
    with pytest.raises(AncillaBudgetExceeded):
        synthesize(SynthesisRequest(fredkin_gate(), ALL, ancilla_budget=0))
    c = synthesize(SynthesisRequest(fredkin_gate(), ALL, ancilla_budget=3, verify=False))
    assert c.ancilla_count <= 3


NONAFFINE_TARGETS = [ALL, FREDKIN, mod_class(2), mod_class(3), mod_class(4), FREDKIN_NOT]


@pytest.mark.parametrize("c", NONAFFINE_TARGETS, ids=str)
@given(seed=seeds, n=st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_nonaffine_synthesis_is_sound(c, seed, n):
    target = random_member(c, n, random.Random(seed))
    circuit = synthesize(SynthesisRequest(target, c))
    assert circuit.ancilla_count <= ancilla_ceiling(c)
    assert _implements(circuit, target)


@pytest.mark.parametrize("c", AFFINE_CLASSES, ids=str)
@given(seed=seeds, n=st.integers(1, 6))
@settings(max_examples=100, deadline=None)
def test_affine_synthesis_is_sound(c, seed, n):
    target = random_member(c, n, random.Random(seed))
    circuit = synthesize(SynthesisRequest(target, c))
    assert circuit.ancilla_count <= ancilla_ceiling(c)
    assert circuit.gate_count <= n * n + n
    assert _implements(circuit, target)


@pytest.mark.parametrize("c, n, gate", [(T4, 4, "TK4"), (F4, 4, "FK4"), (T6, 6, "TK6")], ids=str)
def test_sampled_isometries_need_their_generator(c, n, gate):
    rng = random.Random(5)
    target = next(G for G in (random_member(c, n, rng) for _ in range(40)) if classify_gate(G) == c)
    circuit = synthesize(SynthesisRequest(target, c))
    assert gate in circuit.gate_names()
    assert _implements(circuit, target)
