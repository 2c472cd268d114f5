from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from thickness import Interval, make_middle_cantor
from thickness.errors import DomainError, IllegalMoveError, ParamMismatchError, ParseError
from thickness.game import (PASS, AliceMove, Ball, CenterBob, GameParams, GameTranscript,
                            RandomBob, Strategy, alice_thickness_strategy, budget_used,
                            combine_strategies, relax_params, run_game, transport_similarity,
                            validate_alice_move, validate_bob_move, verify_winning_run)

M3 = make_middle_cantor(F(1, 3))
STOP = F(1, 10**12)


def test_envelope_of_thickness_strategy():
    S = alice_thickness_strategy(M3, F(1, 4))
    assert S.envelope == GameParams(4, F(1, 4), 0, F(1, 8))


def test_small_ball_targets_central_gap_but_budget_forbids_it():
    S = alice_thickness_strategy(M3, F(1, 4))
    ball = Ball(F(1, 2), F(1, 54))
    assert S.target_gap(ball).interval == Interval(F(1, 3), F(2, 3))
    # erasing radius 1/6 needs 1/6 <= 4 * 1/54
    assert S.respond([], ball) == PASS


def test_ball_inside_bridges_is_answered():
    S = alice_thickness_strategy(M3, F(1, 4))
    move = S.respond([], Ball(F(1, 2), F(1, 8)))
    assert move.erased == (Ball(F(1, 2), F(1, 6)),)


def test_bob_rules():
    p = GameParams(4, F(1, 4), 0, F(1, 8))
    assert not validate_bob_move(p, [], Ball(0, F(1, 16)))[0]
    hist = [(Ball(0, F(1, 2)), PASS)]
    assert validate_bob_move(p, hist, Ball(F(1, 4), F(1, 4)))[0]
    assert not validate_bob_move(p, hist, Ball(F(1, 4), F(1, 16)))[0]
    assert not validate_bob_move(p, hist, Ball(F(3, 8), F(1, 4)))[0]


def test_alice_budget_rules():
    p0 = GameParams(2, F(1, 4), 0, 1)
    two = AliceMove((Ball(0, F(1, 10)), Ball(1, F(1, 10))))
    assert not validate_alice_move(p0, 1, two)[0]
    p1 = GameParams(2, F(1, 4), 1, 1)
    assert validate_alice_move(p1, F(1, 10), two)[0]
    assert not validate_alice_move(p1, F(1, 20), two)[0]
    ph = GameParams(2, F(1, 4), F(1, 2), 1)
    # 2 * sqrt(1/10) <= sqrt(2 * rho) iff rho >= 1/5
    assert validate_alice_move(ph, F(1, 5), two)[0]
    assert not validate_alice_move(ph, F(19, 100), two)[0]


def test_game_against_center_bob_erases_target():
    S = alice_thickness_strategy(M3, F(1, 4))
    t = run_game(S, CenterBob(goal=0), S.envelope, STOP)
    assert verify_winning_run(t, S.target) in ("erased", "inside_S")
    assert t.outcome_enclosure.length < 4 * STOP


def test_illegal_strategy_is_caught():
    greedy = Strategy(lambda h, b: AliceMove((Ball(b.center, 10 * b.radius),)),
                      GameParams(1, F(1, 4), 0, F(1, 8)), name="greedy")
    with pytest.raises(IllegalMoveError) as exc:
        run_game(greedy, CenterBob(), greedy.envelope, STOP)
    assert exc.value.player == "Alice"


def test_combine_checks_parameters():
    S = alice_thickness_strategy(M3, F(1, 4))
    with pytest.raises(ParamMismatchError):
        combine_strategies([S, S], 1)
    with pytest.raises(DomainError):
        combine_strategies([], 1)


def test_combined_alpha():
    base = alice_thickness_strategy(M3, F(1, 4))
    e = base.envelope
    S1 = relax_params(base, GameParams(e.alpha, e.beta, 1, e.rho))
    S2 = transport_similarity(S1, 1, F(-1, 16))
    assert combine_strategies([S1, S2], 1).envelope.alpha == 8
    Sh = relax_params(base, GameParams(e.alpha, e.beta, F(1, 2), e.rho))
    assert combine_strategies([Sh, Sh, Sh], F(1, 2)).envelope.alpha == 36


def test_transcript_round_trip():
    S = alice_thickness_strategy(M3, F(1, 4))
    t = run_game(S, RandomBob(3), S.envelope, F(1, 10**6))
    back = GameTranscript.from_jsonl(t.to_jsonl())
    assert back.moves == t.moves and back.params == t.params and back.meta == t.meta
    with pytest.raises(ParseError):
        GameTranscript.from_jsonl("{}\n")


def test_random_bob_is_reproducible():
    S = alice_thickness_strategy(M3, F(1, 4))
    a = run_game(S, RandomBob(11), S.envelope, F(1, 10**6)).to_jsonl()
    b = run_game(S, RandomBob(11), S.envelope, F(1, 10**6)).to_jsonl()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F(1, 3), F(1, 4), F(1, 5)]))
def test_random_games_never_produce_counterexamples(seed, eps):
    S = alice_thickness_strategy(make_middle_cantor(eps), F(1, 4))
    t = run_game(S, RandomBob(seed), S.envelope, STOP)
    assert verify_winning_run(t, S.target) != "counterexample"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 1000), max_value=1, max_denominator=1000),
                min_size=1, max_size=5))
def test_budget_is_sum_of_radii_for_c1(radii):
    move = AliceMove(tuple(Ball(0, r) for r in radii))
    assert budget_used(move, F(1)) == sum(radii)
