"""The electronic-mail game over a chain carrier with possibly huge counts.

The carrier holds ``(a,0,0)`` plus every ``(b,t,t')`` with ``t' = t`` or
``t-1``.  Agent 1 sees only its own count ``t``, so it pairs ``(b,t,t-1)``
with ``(b,t,t)``; agent 2 pairs ``(b,t,t)`` with ``(b,t+1,t)`` and cannot
tell ``(a,0,0)`` from ``(b,1,0)``.  Ordering states by the total number of
messages sent (``t + t'``) lays the carrier out as a single chain, which
gives closed forms for cells and the link metric that stay valid at huge
counts, where breadth-first search cannot go.

The checks: on finite truncations the all-``b`` event is never classical
common knowledge (every state reaches every other, and the carrier contains
``(a,0,0)``); under galaxy semantics it is common knowledge exactly at huge
counts, and the verdict persists one step down from any positive case and
one step up from any negative one.  Finally, the cutoff strategy pair (play
A while the own count is finite, B once it is huge) is audited cell by cell
as a Nash equilibrium of the two coordination payoff tables, with exact
rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Tuple, Union

from .epistemic import AumannModel, Event, ck_classical, ck_subjective
from .hypernat import HyperNat, finite
from .reports import CheckReport

__all__ = [
    "ACTIONS",
    "CutoffStrategy",
    "EmailGameModel",
    "EmailGameState",
    "PayoffParams",
    "STATE_A",
    "best_response_check",
    "cell",
    "cell_by_own_count",
    "chain_position",
    "check_ast_possibility",
    "check_classical_impossibility",
    "check_monotone_ck",
    "email_metric",
    "event_b",
    "payoff_pair",
    "state_b",
    "state_probability",
    "truncated_model",
]

Action = str
ACTIONS: Tuple[Action, Action] = ("A", "B")

_ZERO = finite(0)
_ONE = finite(1)


def _as_count(value: Union[int, HyperNat]) -> HyperNat:
    if isinstance(value, HyperNat):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return finite(value)
    raise TypeError("message counts are HyperNat or int")


@dataclass(frozen=True)
class EmailGameState:
    """A state ``(tag, t, t')`` with ``t' = t - delta``; ``t`` may be huge."""

    tag: str
    t: HyperNat
    delta: int

    def __post_init__(self) -> None:
        if self.tag not in ("a", "b"):
            raise ValueError("tag must be 'a' or 'b'")
        if not isinstance(self.t, HyperNat):
            raise TypeError("t must be a HyperNat (use state_b / STATE_A)")
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        if self.tag == "a" and (self.t != _ZERO or self.delta != 0):
            raise ValueError("the only a-state is (a,0,0)")
        if self.tag == "b" and self.t < _ONE:
            raise ValueError("b-states need t >= 1")

    @property
    def t_prime(self) -> HyperNat:
        return self.t - finite(self.delta)

    def __str__(self) -> str:
        return f"({self.tag},{self.t},{self.t_prime})"


STATE_A = EmailGameState("a", _ZERO, 0)


def state_b(t: Union[int, HyperNat], delta: int = 0) -> EmailGameState:
    """The state ``(b, t, t - delta)``."""
    return EmailGameState("b", _as_count(t), delta)


def chain_position(s: EmailGameState) -> HyperNat:
    """Position along the carrier chain: the total number of messages sent."""
    if s.tag == "a":
        return _ZERO
    return s.t + s.t_prime


def email_metric(x: EmailGameState, y: EmailGameState) -> HyperNat:
    """Link distance between two states, in closed form.

    Every state shares one cell with its chain predecessor and one with its
    successor, so one link step moves at most one chain position and the
    distance is the position gap; it agrees with breadth-first search on
    truncations (in particular (a,0,0) to (b,t,t) is 2t).
    """
    a, b = chain_position(x), chain_position(y)
    return a - b if a >= b else b - a


def cell(agent: int, s: EmailGameState) -> frozenset:
    """The information cell of ``s`` for agent 1 or 2, in closed form."""
    if agent not in (1, 2):
        raise ValueError("agents are 1 and 2")
    if agent == 1:
        if s.tag == "a":
            return frozenset({STATE_A})
        return frozenset({state_b(s.t, 1), state_b(s.t, 0)})
    tp = s.t_prime
    if tp == _ZERO:
        return frozenset({STATE_A, state_b(_ONE, 1)})
    return frozenset({state_b(tp, 0), state_b(tp + _ONE, 1)})


class EmailGameModel:
    """Symbolic partition model over the full (infinite) chain carrier."""

    agents = (1, 2)
    states = None  # infinite; closed forms stand in for enumeration

    def cell(self, agent: int, s: EmailGameState) -> frozenset:
        return cell(agent, s)

    def metric(self, x: EmailGameState, y: EmailGameState) -> HyperNat:
        return email_metric(x, y)

    def closure(self, s: EmailGameState):
        raise ValueError("the full carrier is infinite; use truncated_model")


def event_b() -> Event:
    """The event "the coordination game is in state b"; its complement is
    the single state (a,0,0)."""
    return Event.from_predicate(lambda s: s.tag == "b", complement_witnesses=(STATE_A,))


def truncated_model(T: int) -> AumannModel:
    """Explicit model on ``(a,0,0)`` and all ``(b,t,t')`` with ``t <= T``.

    Agent 2's cell at ``(b,T,T)`` is clipped to a singleton: its other
    member would have ``t = T+1``.  Clipping keeps the chain connected, so
    distances between retained states are unchanged.
    """
    if T < 1:
        raise ValueError("truncation bound must be >= 1")
    part1 = [[STATE_A]] + [[state_b(t, 1), state_b(t, 0)] for t in range(1, T + 1)]
    part2 = [[STATE_A, state_b(1, 1)]]
    part2 += [[state_b(t, 0), state_b(t + 1, 1)] for t in range(1, T)]
    part2 += [[state_b(T, 0)]]
    return AumannModel((1, 2), {1: part1, 2: part2})


def check_classical_impossibility(T: int) -> CheckReport:
    """On the ``T``-truncation, B is nowhere classical common knowledge and
    every state reaches the whole clipped carrier."""
    model = truncated_model(T)
    b_event = frozenset(s for s in model.states if s.tag == "b")
    carrier = frozenset(model.states)
    report = CheckReport("impossibility", {"T": T})

    ck_holds_at = [s for s in model.states if ck_classical(model, b_event, s)]
    report.add(
        {"claim": "B is not classical common knowledge at any state"},
        "no such state",
        "no such state" if not ck_holds_at else [str(s) for s in ck_holds_at],
        not ck_holds_at,
    )
    not_covering = [s for s in model.states if model.closure(s) != carrier]
    report.add(
        {"claim": "every state reaches the whole truncated carrier"},
        "all closures cover the carrier",
        "all closures cover the carrier" if not not_covering else [str(s) for s in not_covering],
        not not_covering,
    )
    return report


def check_ast_possibility(omega: EmailGameState) -> bool:
    """Is B common knowledge at ``omega`` under galaxy semantics?

    True exactly when (a,0,0) lies at huge link distance from ``omega``,
    i.e. when the message count is huge.
    """
    return ck_subjective(EmailGameModel(), event_b(), omega)


def check_monotone_ck(samples: Iterable[Union[int, HyperNat]]) -> CheckReport:
    """Persistence of the verdict one step along the chain.

    Where B is common knowledge at ``(b,t,t)`` it must stay so at
    ``(b,t-1,t-1)``; where it is not, it must stay not at ``(b,t+1,t+1)``.
    Samples below 1 have no valid state and are skipped with a note.
    """
    counts = [_as_count(s) for s in samples]
    report = CheckReport("monotone", {"samples": [str(c) for c in counts]})
    for tau in counts:
        if tau < _ONE:
            note = f"skipped: no state (b,{tau},{tau})"
            report.add({"t": str(tau)}, note, note, True)
            continue
        here = check_ast_possibility(state_b(tau))
        if here:
            neighbor = tau - _ONE
            persisted = check_ast_possibility(state_b(neighbor))
            report.add(
                {"t": str(tau), "ck": True, "neighbor": str(neighbor)},
                "still common knowledge one step down",
                "common knowledge" if persisted else "not common knowledge",
                persisted,
            )
        else:
            neighbor = tau + _ONE
            persisted = not check_ast_possibility(state_b(neighbor))
            report.add(
                {"t": str(tau), "ck": False, "neighbor": str(neighbor)},
                "still not common knowledge one step up",
                "not common knowledge" if persisted else "common knowledge",
                persisted,
            )
    return report


def _as_fraction(value: Union[Fraction, int, str]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("payoff parameters are Fractions, ints or strings")


@dataclass(frozen=True)
class PayoffParams:
    """Coordination payoffs and channel parameters, all exact rationals.

    ``M`` is the reward for coordinating on the right action, ``L`` the
    penalty for the mismatched risky action, ``p`` the prior probability of
    game b and ``eps`` the per-message loss probability.
    """

    M: Fraction
    L: Fraction
    p: Fraction
    eps: Fraction

    def __post_init__(self) -> None:
        for name in ("M", "L", "p", "eps"):
            object.__setattr__(self, name, _as_fraction(getattr(self, name)))
        if self.M <= 0 or self.L <= 0:
            raise ValueError("M and L must be positive")
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie strictly between 0 and 1")

    def as_dict(self) -> dict:
        return {"M": self.M, "L": self.L, "p": self.p, "eps": self.eps}


def payoff_pair(tag: str, action1: Action, action2: Action, params: PayoffParams) -> tuple:
    """Payoffs (agent 1, agent 2) of an action pair in game a or game b."""
    if action1 not in ACTIONS or action2 not in ACTIONS:
        raise ValueError("actions are 'A' and 'B'")
    M, L, zero = params.M, params.L, Fraction(0)
    if tag == "a":
        table = {
            ("A", "A"): (M, M),
            ("A", "B"): (zero, -L),
            ("B", "A"): (-L, zero),
            ("B", "B"): (zero, zero),
        }
    elif tag == "b":
        table = {
            ("A", "A"): (zero, zero),
            ("A", "B"): (zero, -L),
            ("B", "A"): (-L, zero),
            ("B", "B"): (M, M),
        }
    else:
        raise ValueError("tag must be 'a' or 'b'")
    return table[action1, action2]


def state_probability(s: EmailGameState, params: PayoffParams) -> Fraction:
    """Probability that the message protocol halts exactly in state ``s``.

    State a occurs with probability 1-p and no messages.  In state b the
    k-th message on the wire is the first lost one with probability
    (1-eps)**(k-1) * eps, and halting right after it leaves t + t' = k
    messages sent.  Huge counts carry no probability and are rejected.
    """
    if s.tag == "a":
        return 1 - params.p
    if s.t.is_huge:
        raise ValueError("probabilities are defined for finite message counts only")
    k = int(chain_position(s))
    return params.p * (1 - params.eps) ** (k - 1) * params.eps


@dataclass(frozen=True)
class CutoffStrategy:
    """Maps an agent's own message count to an action."""

    rule: Callable[[HyperNat], Action]

    @classmethod
    def play_a_while_finite(cls) -> "CutoffStrategy":
        """A at every finite count, B at every huge one."""
        return cls(rule=lambda count: "A" if count.is_finite else "B")

    def action(self, count: Union[int, HyperNat]) -> Action:
        act = self.rule(_as_count(count))
        if act not in ACTIONS:
            raise ValueError(f"strategy returned {act!r}, expected 'A' or 'B'")
        return act


def cell_by_own_count(agent: int, count: Union[int, HyperNat]) -> frozenset:
    """The information cell an agent sits in after sending ``count`` messages."""
    count = _as_count(count)
    if agent == 1:
        return cell(1, STATE_A if count == _ZERO else state_b(count, 0))
    if agent == 2:
        return cell(2, STATE_A if count == _ZERO else state_b(count, 0))
    raise ValueError("agents are 1 and 2")


def _own_count(agent: int, s: EmailGameState) -> HyperNat:
    return s.t if agent == 1 else s.t_prime


def best_response_check(
    strategies: Tuple[CutoffStrategy, CutoffStrategy],
    params: PayoffParams,
    finite_samples: Iterable[int],
    huge_samples: Iterable[HyperNat],
) -> CheckReport:
    """Cell-by-cell best-response audit of a strategy pair.

    Finite cells compare conditional expected payoffs, renormalized on the
    cell (exact rationals throughout: the comparisons are strict
    inequalities).  Huge cells carry no probabilities, so the comparison is
    pointwise per state; if the preference ever differed across one huge
    cell the verdict would depend on unassigned probabilities, which the
    report flags as insufficient information.
    """
    strat = tuple(strategies)
    if len(strat) != 2:
        raise ValueError("need exactly one strategy per agent")
    finite_counts = []
    for raw in finite_samples:
        c = _as_count(raw)
        if c.is_huge:
            raise ValueError(f"{c} is not a finite sample")
        finite_counts.append(c)
    huge_counts = []
    for raw in huge_samples:
        c = _as_count(raw)
        if not c.is_huge:
            raise ValueError(f"{c} is not a huge sample")
        huge_counts.append(c)

    report = CheckReport(
        "equilibrium",
        dict(
            params.as_dict(),
            finite_samples=[str(c) for c in finite_counts],
            huge_samples=[str(c) for c in huge_counts],
        ),
    )

    for agent in (1, 2):
        opp = 3 - agent
        for count in finite_counts:
            cellstates = sorted(cell_by_own_count(agent, count), key=str)
            prescribed = strat[agent - 1].action(count)
            deviation = "B" if prescribed == "A" else "A"
            weights = {s: state_probability(s, params) for s in cellstates}
            total = sum(weights.values())

            def conditional(action: Action) -> Fraction:
                acc = Fraction(0)
                for s in cellstates:
                    opp_action = strat[opp - 1].action(_own_count(opp, s))
                    pair = (action, opp_action) if agent == 1 else (opp_action, action)
                    acc += weights[s] * payoff_pair(s.tag, *pair, params)[agent - 1]
                return acc / total

            value = conditional(prescribed)
            dev_value = conditional(deviation)
            report.add(
                {"agent": agent, "own_count": str(count), "cell": [str(s) for s in cellstates]},
                "prescribed action is a best response",
                {
                    "basis": "expected",
                    "prescribed": prescribed,
                    "expected_payoff": value,
                    "deviation": deviation,
                    "deviation_payoff": dev_value,
                },
                dev_value <= value,
            )
        for count in huge_counts:
            cellstates = sorted(cell_by_own_count(agent, count), key=str)
            prescribed = strat[agent - 1].action(count)
            deviation = "B" if prescribed == "A" else "A"
            rows = []
            for s in cellstates:
                opp_action = strat[opp - 1].action(_own_count(opp, s))
                pres_pair = (prescribed, opp_action) if agent == 1 else (opp_action, prescribed)
                dev_pair = (deviation, opp_action) if agent == 1 else (opp_action, deviation)
                rows.append(
                    (
                        payoff_pair(s.tag, *pres_pair, params)[agent - 1],
                        payoff_pair(s.tag, *dev_pair, params)[agent - 1],
                    )
                )
            if all(dev <= pres for pres, dev in rows):
                verdict, ok = "no profitable deviation", True
            elif all(dev > pres for pres, dev in rows):
                verdict, ok = "profitable deviation", False
            else:
                verdict, ok = (
                    "insufficient information: preference depends on cell probabilities",
                    False,
                )
            report.add(
                {"agent": agent, "own_count": str(count), "cell": [str(s) for s in cellstates]},
                "prescribed action is a best response",
                {
                    "basis": "pointwise",
                    "prescribed": prescribed,
                    "prescribed_payoffs": [pres for pres, _ in rows],
                    "deviation": deviation,
                    "deviation_payoffs": [dev for _, dev in rows],
                    "verdict": verdict,
                },
                ok,
            )
    return report
