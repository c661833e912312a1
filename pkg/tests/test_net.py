import pytest
from hypothesis import given, settings, strategies as st

from fcnet.errors import ContractError, FiringError, StructuralError, TokenOverflowError
from fcnet.net import MAX_TOKENS, Net, fire, fire_sequence, is_enabled, postset, preset, validate
from fcnet.netgen import generate
from fcnet.structural import brute_force_siphons, brute_force_traps

from helpers import e1, e2, small_params, source_net


# -- construction ------------------------------------------------------------


def test_presets_and_postsets_agree_with_flow():
    net = e2()
    for src, dst in net.flow:
        assert dst in net.post(src)
        assert src in net.pre(dst)
    total = sum(len(net.post(x)) for x in net.places + net.transitions)
    assert total == len(net.flow)


@pytest.mark.parametrize(
    "places, transitions, flow",
    [
        (["p", "p"], ["t"], []),
        (["p"], ["t", "t"], []),
        (["x"], ["x"], []),
        (["p"], ["t"], [("p", "t"), ("p", "t")]),
    ],
)
def test_malformed_nets_are_rejected(places, transitions, flow):
    with pytest.raises(ContractError):
        Net(places, transitions, flow)


def test_arcs_must_join_place_and_transition():
    with pytest.raises(StructuralError):
        Net(["p", "q"], ["t"], [("p", "q")])
    with pytest.raises(StructuralError):
        Net(["p"], ["t"], [("p", "zz")])


def test_marking_construction():
    net = e2()
    assert net.marking({"p2": 3}) == (0, 3)
    assert net.marking() == (0, 0)
    with pytest.raises(StructuralError):
        net.marking({"nope": 1})
    with pytest.raises(ContractError):
        net.marking({"p1": -1})


# -- preset / postset --------------------------------------------------------


def test_preset_of_empty_set():
    assert preset(e2(), []) == frozenset()
    assert postset(e2(), []) == frozenset()


def test_preset_postset_e2():
    net = e2()
    assert preset(net, {"p1", "p2"}) == {"a", "b"}
    assert postset(net, {"p1", "p2"}) == {"a", "b", "c"}
    assert preset(net, {"c"}) == {"p2"}
    assert postset(net, {"c"}) == frozenset()


def test_preset_rejects_unknown_and_mixed():
    net = e2()
    with pytest.raises(StructuralError):
        preset(net, {"zz"})
    with pytest.raises(StructuralError):
        postset(net, {"p1", "a"})


# -- firing ------------------------------------------------------------------


def test_is_enabled():
    net = e2()
    assert is_enabled(net, (1, 0), "a")
    assert not any(is_enabled(net, (0, 0), t) for t in net.transitions)
    src = source_net()
    assert is_enabled(src, (0,), "t")
    with pytest.raises(StructuralError):
        is_enabled(net, (1, 0), "zz")


def test_fire():
    net = e2()
    assert fire(net, (1, 0), "a") == (0, 1)
    assert fire(net, (0, 1), "c") == (0, 0)
    assert fire(e1(), (1,), "t") == (1,)
    with pytest.raises(FiringError):
        fire(net, (1, 0), "c")


def test_fire_sequence():
    net = e2()
    assert fire_sequence(net, (1, 0), []) == (1, 0)
    assert fire_sequence(net, (1, 0), ["a", "c"]) == (0, 0)
    with pytest.raises(FiringError) as exc:
        fire_sequence(net, (1, 0), ["c"])
    assert exc.value.index == 0
    with pytest.raises(FiringError) as exc:
        fire_sequence(net, (1, 0), ["a", "b", "b"])
    assert exc.value.index == 2


def test_fire_overflow_is_reported():
    net = source_net()
    with pytest.raises(TokenOverflowError):
        fire(net, (MAX_TOKENS,), "t")


# -- validation --------------------------------------------------------------


def test_validate_e2_is_admissible():
    rep = validate(e2())
    assert rep.admissible
    assert rep.free_choice_violations == [] and rep.isolated_places == []


def test_validate_free_choice_violation():
    net = Net.from_transitions(["p", "q", "r"], {"t1": (["p", "q"], ["r"]), "t2": (["q"], ["r"])})
    rep = validate(net)
    assert rep.free_choice_violations == [("t1", "t2")]
    assert not rep.admissible


def test_validate_isolated_place():
    net = Net.from_transitions(["p", "q"], {"t": (["q"], ["q"])})
    rep = validate(net)
    assert rep.isolated_places == ["p"]
    assert not rep.admissible


def test_validate_warns_on_source_transitions():
    rep = validate(source_net())
    assert rep.admissible
    assert rep.source_transitions == ["t"]
    assert "warning" in rep.describe()


# -- properties over generated nets -----------------------------------------


def _random_runs(net, m0, data, steps=15):
    m = m0
    for _ in range(steps):
        en = [t for t in net.transitions if is_enabled(net, m, t)]
        if not en:
            return
        t = data.draw(st.sampled_from(en))
        yield m, t
        m = fire(net, m, t)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32), data=st.data())
def test_firing_only_touches_pre_and_post(seed, data):
    net, m0 = generate(small_params(seed))
    for m, t in _random_runs(net, m0, data):
        m2 = fire(net, m, t)
        touched = {net.place_index[p] for p in net.pre(t) | net.post(t)}
        assert all(m[i] == m2[i] for i in range(len(m)) if i not in touched)
        assert min(m2, default=0) >= 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), data=st.data())
def test_single_step_trap_and_siphon_persistence(seed, data):
    net, m0 = generate(small_params(seed, max_places=7))
    traps = [q for q in brute_force_traps(net) if q]
    siphons = [s for s in brute_force_siphons(net) if s]
    for m, t in _random_runs(net, m0, data):
        m2 = fire(net, m, t)
        for q in traps:
            if net.marked(m) & q:
                assert net.marked(m2) & q
        for s in siphons:
            if not net.marked(m) & s:
                assert not net.marked(m2) & s


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32), data=st.data())
def test_free_choice_enabling_symmetry(seed, data):
    net, m0 = generate(small_params(seed))
    assert validate(net).admissible
    for m, _ in _random_runs(net, m0, data):
        for t in net.transitions:
            for u in net.transitions:
                if net.pre(t) & net.pre(u):
                    assert is_enabled(net, m, t) == is_enabled(net, m, u)
