import pytest

from services.circuit import CircuitBuilder, simulate
from services.errors import BadParameter, DegenerateClass, PreconditionViolated
from services.gadgets import (
    check_encoded,
    encode_circuit,
    encoded_cnot_gadget,
    encoded_fredkin_gadget,
    encoding_for,
    extract_garbage_gadget,
    verify_gadget,
)
from services.gate_core import cnot_gate, fredkin_gate, swap_gate, toffoli_gate
from services.lattice import (
    ALL,
    CNOT,
    CNOTNOT,
    F4,
    FINITE_CLASSES,
    FREDKIN,
    FREDKIN_NOT,
    NOT,
    NOTNOT,
    T4,
    T6,
    T6_NOT,
    TRIVIAL,
    mod_class,
)

DEGENERATE = (TRIVIAL, NOT, NOTNOT)
ENCODED_CLASSES = [c for c in FINITE_CLASSES if c not in DEGENERATE] + [mod_class(k) for k in range(2, 6)]
FREDKIN_LIKE = [ALL, FREDKIN, FREDKIN_NOT] + [mod_class(k) for k in range(2, 6)]


# --- Encodings ---

def test_encoding_examples():
    assert encoding_for(FREDKIN)[0].zero == "01"
    assert encoding_for(CNOTNOT)[0].one == "11"
    encoding, ancillas = encoding_for(T6)
    assert (encoding.zero, encoding.one, ancillas) == ("0011", "1100", (0,))
    assert encoding_for(F4)[1] == (1,)


@pytest.mark.parametrize("c", DEGENERATE, ids=str)
def test_degenerate_classes_have_no_encoding(c):
    with pytest.raises(DegenerateClass):
        encoding_for(c)
    with pytest.raises(DegenerateClass):
        encoded_cnot_gadget(c)


# --- Encoded gadgets ---

@pytest.mark.parametrize("c", ENCODED_CLASSES, ids=str)
def test_encoded_cnot(c):
    gadget = encoded_cnot_gadget(c)
    assert verify_gadget(gadget)
    assert len(gadget.cases) == 4


@pytest.mark.parametrize("c", FREDKIN_LIKE, ids=str)
def test_encoded_fredkin(c):
    gadget = encoded_fredkin_gadget(c)
    assert verify_gadget(gadget)
    assert len(gadget.cases) == 8


@pytest.mark.parametrize("c", [CNOT, CNOTNOT, T4, F4, T6], ids=str)
def test_affine_classes_have_no_encoded_fredkin(c):
    with pytest.raises(BadParameter):
        encoded_fredkin_gadget(c)


def test_encoded_gadget_shapes():
    assert encoded_cnot_gadget(CNOT).circuit.gate_count == 1
    assert encoded_cnot_gadget(mod_class(3)).circuit.gate_names() == {"CK3"}
    assert encoded_cnot_gadget(T6).circuit.width == 9


@pytest.mark.parametrize("c", [FREDKIN, mod_class(3), FREDKIN_NOT, ALL], ids=str)
def test_encoded_circuit_chains(c):
    logical = (
        CircuitBuilder(3)
        .add("CNOT", 1, 2)
        .add("FREDKIN", 1, 2, 3)
        .add("CNOT", 3, 1)
        .build()
    )
    encoded = encode_circuit(logical, c)
    assert check_encoded(logical, encoded, encoding_for(c)[0])


def test_encoded_not_is_a_block_swap():
    logical = CircuitBuilder(2).add("NOT", 1).add("CNOT", 1, 2).build()
    for c in (FREDKIN, T6_NOT):
        encoded = encode_circuit(logical, c)
        assert check_encoded(logical, encoded, encoding_for(c)[0])
    with pytest.raises(BadParameter):
        encode_circuit(logical, CNOTNOT)


def test_encoding_rejects_other_gates():
    logical = CircuitBuilder(3).add("TOFFOLI", 1, 2, 3).build()
    with pytest.raises(BadParameter):
        encode_circuit(logical, FREDKIN)


# --- Garbage gadgets ---

def test_and_from_toffoli():
    gadget = extract_garbage_gadget(toffoli_gate(), "AND")
    assert verify_gadget(gadget)
    assert gadget.circuit.data_wires == 2 and gadget.circuit.ancillas == (0,)
    assert simulate(gadget.circuit, "110") == "111"


def test_copy_from_fredkin():
    gadget = extract_garbage_gadget(fredkin_gate(), "COPY")
    assert verify_gadget(gadget)
    assert gadget.circuit.ancillas == (0, 1)
    assert simulate(gadget.circuit, "101") == "110"
    assert simulate(gadget.circuit, "001") == "001"


def test_not_from_toffoli():
    assert verify_gadget(extract_garbage_gadget(toffoli_gate(), "not"))


def test_garbage_preconditions():
    with pytest.raises(PreconditionViolated):
        extract_garbage_gadget(swap_gate(), "NOT")
    with pytest.raises(PreconditionViolated):
        extract_garbage_gadget(swap_gate(), "COPY")
    with pytest.raises(PreconditionViolated):
        extract_garbage_gadget(cnot_gate(), "AND")
    with pytest.raises(BadParameter):
        extract_garbage_gadget(toffoli_gate(), "XOR")
