from fractions import Fraction

import pytest

from galaxyck.emailgame import (
    STATE_A,
    CutoffStrategy,
    EmailGameModel,
    EmailGameState,
    PayoffParams,
    best_response_check,
    cell,
    cell_by_own_count,
    chain_position,
    check_ast_possibility,
    check_classical_impossibility,
    check_monotone_ck,
    email_metric,
    event_b,
    payoff_pair,
    state_b,
    state_probability,
    truncated_model,
)
from galaxyck.epistemic import AumannModel, Event, ck_classical, ck_subjective
from galaxyck.hypernat import finite, huge

PARAMS = PayoffParams(2, 3, Fraction(1, 2), Fraction(1, 10))


def as_tuple(s: EmailGameState):
    return (s.tag, int(s.t), int(s.t_prime))


def from_tuple(tpl) -> EmailGameState:
    tag, t, tp = tpl
    return STATE_A if tag == "a" else state_b(t, t - tp)


def display_partitions(T):
    """The partition tables written out literally, over plain tuples."""
    a = ("a", 0, 0)
    p1 = [[a]] + [[("b", t, t - 1), ("b", t, t)] for t in range(1, T + 1)]
    p2 = [[a, ("b", 1, 0)]] + [[("b", t, t), ("b", t + 1, t)] for t in range(1, T)]
    return p1, p2


def test_state_invariants():
    assert str(STATE_A) == "(a,0,0)"
    assert str(state_b(2, 1)) == "(b,2,1)"
    assert state_b(huge(1, 0), 1).t_prime == huge(1, -1)
    with pytest.raises(ValueError):
        EmailGameState("a", finite(1), 0)
    with pytest.raises(ValueError):
        EmailGameState("a", finite(0), 1)
    with pytest.raises(ValueError):
        state_b(0)
    with pytest.raises(ValueError):
        state_b(2, 2)
    with pytest.raises(ValueError):
        EmailGameState("c", finite(1), 0)


def test_cells_match_literal_partition_tables():
    T = 20
    p1, p2 = display_partitions(T)
    for agent, table in ((1, p1), (2, p2)):
        for listed in table:
            expected = frozenset(listed)
            for member in listed:
                got = frozenset(as_tuple(s) for s in cell(agent, from_tuple(member)))
                assert got == expected, (agent, member)


def test_cells_at_huge_counts_follow_the_same_pattern():
    w = huge(1, 0)
    assert cell(1, state_b(w, 0)) == {state_b(w, 1), state_b(w, 0)}
    assert cell(1, state_b(w, 1)) == {state_b(w, 1), state_b(w, 0)}
    assert cell(2, state_b(w, 0)) == {state_b(w, 0), state_b(w + 1, 1)}
    assert cell(2, state_b(w, 1)) == {state_b(w - 1, 0), state_b(w, 1)}
    with pytest.raises(ValueError):
        cell(3, STATE_A)


def test_chain_position():
    assert chain_position(STATE_A) == finite(0)
    assert chain_position(state_b(1, 1)) == finite(1)
    assert chain_position(state_b(1, 0)) == finite(2)
    assert chain_position(state_b(huge(1, 0), 0)) == huge(2, 0)


def test_email_metric_examples():
    assert email_metric(STATE_A, STATE_A) == finite(0)
    assert email_metric(STATE_A, state_b(1, 0)) == finite(2)
    assert email_metric(state_b(1, 0), STATE_A) == finite(2)
    assert email_metric(STATE_A, state_b(huge(1, 0), 0)) == huge(2, 0)
    assert email_metric(state_b(huge(1, 0), 0), state_b(huge(1, 5), 0)).is_finite


def test_email_metric_matches_bfs_on_truncation():
    T = 20
    p1, p2 = display_partitions(T)
    bfs_model = AumannModel((1, 2), {1: p1, 2: p2 + [[("b", T, T)]]})
    tuples = list(bfs_model.states)
    for x in tuples:
        layers = bfs_model.distances_from(x)
        for y in tuples:
            assert email_metric(from_tuple(x), from_tuple(y)) == finite(layers[y])


def test_truncated_model_matches_display():
    T = 5
    model = truncated_model(T)
    assert len(model.states) == 2 * T + 1
    p1, p2 = display_partitions(T)
    expected_p1 = {frozenset(c) for c in p1}
    expected_p2 = {frozenset(c) for c in p2} | {frozenset([("b", T, T)])}
    got_p1 = {frozenset(as_tuple(s) for s in c) for c in model.partition(1)}
    got_p2 = {frozenset(as_tuple(s) for s in c) for c in model.partition(2)}
    assert got_p1 == expected_p1
    assert got_p2 == expected_p2
    with pytest.raises(ValueError):
        truncated_model(0)


def test_classical_impossibility_report():
    report = check_classical_impossibility(5)
    assert report.passed
    assert len(report.cases) == 2
    # sanity of the trivial direction: the full carrier is common knowledge
    model = truncated_model(5)
    carrier = frozenset(model.states)
    for omega in model.states:
        assert ck_classical(model, carrier, omega)


def test_infinite_carrier_refuses_enumeration():
    game = EmailGameModel()
    with pytest.raises(ValueError):
        game.closure(STATE_A)
    with pytest.raises(ValueError):
        ck_classical(game, event_b(), STATE_A)
    bare_event = Event.from_predicate(lambda s: s.tag == "b")
    with pytest.raises(ValueError):
        ck_subjective(game, bare_event, state_b(3))


def test_ast_possibility():
    assert check_ast_possibility(state_b(huge(1, 0)))
    assert check_ast_possibility(state_b(huge(1, -10)))
    assert check_ast_possibility(state_b(huge(2, 0)))
    assert not check_ast_possibility(state_b(3))
    assert not check_ast_possibility(STATE_A)


def test_ast_possibility_splits_exactly_at_the_huge_tier():
    for t in range(1, 101):
        assert not check_ast_possibility(state_b(t))
    for k in range(-50, 51):
        assert check_ast_possibility(state_b(huge(1, k)))


def test_link_operators_work_on_the_symbolic_carrier():
    from galaxyck.epistemic import link_agent, link_group, link_iter

    game = EmailGameModel()
    assert link_agent(game, 1, {STATE_A}) == {STATE_A}
    assert link_agent(game, 2, {STATE_A}) == {STATE_A, state_b(1, 1)}
    assert link_iter(game, {STATE_A}, 2) == {STATE_A, state_b(1, 1), state_b(1, 0)}
    w = huge(1, 0)
    around = link_group(game, {state_b(w, 0)})
    assert around == {state_b(w, 1), state_b(w, 0), state_b(w + 1, 1)}


def test_monotone_report():
    report = check_monotone_ck([finite(0), finite(4), huge(1, 0)])
    assert report.passed
    skip, up, down = report.cases
    assert "skipped" in skip.expected
    assert up.input["ck"] is False and up.input["neighbor"] == "5"
    assert down.input["ck"] is True and down.input["neighbor"] == "w-1"


def test_payoff_tables():
    M, L, zero = PARAMS.M, PARAMS.L, Fraction(0)
    assert payoff_pair("a", "A", "A", PARAMS) == (M, M)
    assert payoff_pair("a", "B", "A", PARAMS) == (-L, zero)
    assert payoff_pair("b", "A", "A", PARAMS) == (zero, zero)
    assert payoff_pair("b", "B", "B", PARAMS) == (M, M)
    assert payoff_pair("b", "A", "B", PARAMS) == (zero, -L)
    with pytest.raises(ValueError):
        payoff_pair("b", "A", "X", PARAMS)


def test_payoff_params_validation():
    assert PayoffParams("2", "3", "1/2", "1/10").eps == Fraction(1, 10)
    for bad in (
        dict(M=0, L=1, p="1/2", eps="1/10"),
        dict(M=1, L=-1, p="1/2", eps="1/10"),
        dict(M=1, L=1, p="1", eps="1/10"),
        dict(M=1, L=1, p="1/2", eps="2"),
    ):
        with pytest.raises(ValueError):
            PayoffParams(**bad)


def protocol_outcomes(params, max_messages):
    """Independent oracle: walk the send/reply chain, losing message k first.

    Counts are accumulated by simulating who sends each message; the history
    probability is a running product over delivered messages.
    """
    outcomes = {}
    survive = Fraction(1)
    for k in range(1, max_messages + 1):
        t1 = t2 = 0
        for m in range(1, k + 1):  # message m is sent; 1..k-1 delivered, k lost
            if m % 2:
                t1 += 1
            else:
                t2 += 1
        outcomes[("b", t1, t2)] = params.p * survive * params.eps
        survive *= 1 - params.eps
    outcomes[("a", 0, 0)] = 1 - params.p
    return outcomes


def test_state_probability_matches_protocol_oracle():
    oracle = protocol_outcomes(PARAMS, 16)
    for tpl, prob in oracle.items():
        assert state_probability(from_tuple(tpl), PARAMS) == prob
    assert state_probability(STATE_A, PARAMS) == 1 - PARAMS.p
    assert state_probability(state_b(1, 1), PARAMS) == PARAMS.p * PARAMS.eps


def test_state_probabilities_sum_to_geometric_total():
    total = state_probability(STATE_A, PARAMS)
    previous = total
    for t in range(1, 101):
        total += state_probability(state_b(t, 1), PARAMS)
        total += state_probability(state_b(t, 0), PARAMS)
        assert previous < total <= 1
        previous = total
    assert total == 1 - PARAMS.p * (1 - PARAMS.eps) ** 200


def test_state_probability_rejects_huge_counts():
    with pytest.raises(ValueError):
        state_probability(state_b(huge(1, 0)), PARAMS)


def test_cell_by_own_count():
    assert cell_by_own_count(1, 0) == {STATE_A}
    assert cell_by_own_count(1, 3) == {state_b(3, 1), state_b(3, 0)}
    assert cell_by_own_count(2, 0) == {STATE_A, state_b(1, 1)}
    assert cell_by_own_count(2, 2) == {state_b(2, 0), state_b(3, 1)}
    w = huge(1, 0)
    assert cell_by_own_count(1, w) == {state_b(w, 1), state_b(w, 0)}


def test_equilibrium_audit_passes_and_pins_payoffs():
    cutoff = CutoffStrategy.play_a_while_finite()
    report = best_response_check((cutoff, cutoff), PARAMS, range(0, 11), [huge(1, 0)])
    assert report.passed

    def case_for(agent, count):
        return next(
            c for c in report.cases
            if c.input["agent"] == agent and c.input["own_count"] == count
        )

    # agent 2, no messages sent: conditional on {(a,0,0),(b,1,0)}
    c = case_for(2, "0")
    assert c.actual["expected_payoff"] == Fraction(20, 11)
    assert c.actual["deviation_payoff"] == Fraction(-3)

    # agent 1 mid-chain: both cell states are game b, opponent plays A
    c = case_for(1, "3")
    assert c.actual["expected_payoff"] == Fraction(0)
    assert c.actual["deviation_payoff"] == Fraction(-3)

    # huge cell: pointwise, B earns M in both states, A earns 0
    c = case_for(1, "w+0")
    assert c.actual["basis"] == "pointwise"
    assert c.actual["prescribed_payoffs"] == [Fraction(2), Fraction(2)]
    assert c.actual["deviation_payoffs"] == [Fraction(0), Fraction(0)]


def test_equilibrium_holds_with_unit_payoffs():
    cutoff = CutoffStrategy.play_a_while_finite()
    params = PayoffParams(1, 1, Fraction(1, 2), Fraction(1, 10))
    report = best_response_check((cutoff, cutoff), params, range(0, 11), [huge(1, 0)])
    assert report.passed


def test_equilibrium_guard_flags_probability_dependent_huge_cells():
    cutoff = CutoffStrategy.play_a_while_finite()
    flip = CutoffStrategy(rule=lambda c: "A" if c == huge(1, -1) else "B")
    report = best_response_check((cutoff, flip), PARAMS, [], [huge(1, 0)])
    agent1_case = next(c for c in report.cases if c.input["agent"] == 1)
    assert not agent1_case.passed
    assert "insufficient information" in agent1_case.actual["verdict"]


def test_equilibrium_sample_validation():
    cutoff = CutoffStrategy.play_a_while_finite()
    with pytest.raises(ValueError):
        best_response_check((cutoff, cutoff), PARAMS, [huge(1, 0)], [])
    with pytest.raises(ValueError):
        best_response_check((cutoff, cutoff), PARAMS, [], [finite(3)])
    with pytest.raises(ValueError):
        best_response_check((cutoff,), PARAMS, [], [])


def test_strategy_action_validation():
    bad = CutoffStrategy(rule=lambda c: "X")
    with pytest.raises(ValueError):
        bad.action(3)
    good = CutoffStrategy.play_a_while_finite()
    assert good.action(0) == "A"
    assert good.action(huge(3, -7)) == "B"
