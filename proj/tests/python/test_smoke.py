import pathlib

import pytest

import memalg

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def test_cardinal_arithmetic():
    beth1 = memalg.Cardinal.beth(1)
    assert memalg.Cardinal.finite(2) ** memalg.Cardinal.beth(0) == beth1
    assert memalg.transition_space_cardinality(beth1) == memalg.Cardinal.beth(2)
    assert memalg.transition_space_cardinality(memalg.Cardinal.finite(2)) == memalg.Cardinal.finite(4)
    value, steps = memalg.evaluate("3 * 2^4 * 4")
    assert str(value) == "Finite(192)"
    assert all(rule == "finite-arithmetic" for rule, _ in steps)


def test_templates():
    value, _ = memalg.state_cardinality("finite-turing", k=3, m=2, n=4)
    assert value == memalg.Cardinal.finite(192)
    for kind, args in [("infinite-tape-turing", dict(k=3, m=2)), ("umm", dict(n=5)), ("lsm", {}), ("quantum", dict(m=2, n=3))]:
        value, _ = memalg.state_cardinality(kind, **args)
        assert value == memalg.Cardinal.beth(1), kind


def test_undefined_form_raises():
    with pytest.raises(memalg.MemalgError):
        memalg.evaluate("0^0")


def test_constant_machines_are_isomorphic():
    const0 = memalg.make_machine(["0", "1"], [[0, 0]])
    const1 = memalg.make_machine(["0", "1"], [[1, 1]])
    witness = memalg.find_isomorphism(const0, const1)
    assert witness == {"g": [1, 0], "h": [0]}
    assert memalg.verify_morphism(const0, const1, witness["g"], witness["h"])


def test_identity_and_negation_are_not_isomorphic():
    identity = memalg.make_machine(["0", "1"], [[0, 1]])
    negation = memalg.make_machine(["0", "1"], [[1, 0]])
    assert memalg.find_isomorphism(identity, negation) is None


def test_full_machine_is_complete():
    full = memalg.full_machine(3)
    target = memalg.parse_machine((DATA / "negation.mx").read_text())
    for path in ("construct", "search"):
        witness = memalg.is_complete(full, target, path)
        assert witness is not None and witness["verified"]


def test_reductions():
    full = memalg.parse_machine((DATA / "full2.mx").read_text())
    assert memalg.functional_reduce(full, ["id", "neg"]).function_names == ["id", "neg"]
    assert memalg.state_reduce(full, ["a"]).states == ["a"]
    assert memalg.is_sub_machine(full, memalg.state_reduce(full, ["b"]))


def test_bijection_machine():
    assert len(memalg.full_bijection_machine(3).tables) == 6
    assert memalg.find_isomorphism(memalg.full_bijection_machine(2), memalg.full_machine(2)) is None


def test_turing_pipeline():
    text = (DATA / "bitflip.tm").read_text()
    status, configs = memalg.simulate_tm(text)
    assert status == "halted"
    assert configs[-1] == ("halt", [1], 0)
    assert len(memalg.compile_tm(text).states) == 5
    agrees, summary = memalg.verify_lockstep(text, 10)
    assert agrees and summary == "verified 1 step(s), halted, no divergence"
    assert "cell tape0 0 1" in memalg.tm_to_mem(text)


def test_memprogram_compiles():
    machine = memalg.compile_mem((DATA / "switch.mem").read_text())
    assert len(machine.states) == 2


def test_universality_verdicts():
    verdicts, text = memalg.universality_report()
    assert verdicts == {"turing": "UMM-complete", "lsm": "UMM-complete", "quantum": "UMM-complete"}
    assert "Beth(1)" in text


def test_certificate_roundtrip():
    cert = "memalg certificate\nkind: card\nexpression: 2^beth(0)\nbegin output\nBeth(1)\n"
    cert += "  [cantor-exponent] Finite(2) ^ Beth(0) = Beth(1)  (mu^Beth(a) = Beth(a+1) for 2 <= mu <= Beth(a+1))\nend output\n"
    assert memalg.verify_certificate(cert)[0]
    assert not memalg.verify_certificate(cert.replace("Beth(1)\n", "Beth(2)\n", 1))[0]
