"""The (alpha, beta, c, rho) potential game on the line.

Bob nests closed balls with radii shrinking by at least ``beta`` per turn;
after each of Bob's moves Alice may erase finitely many balls whose radii
obey the budget ``sum r_i**c <= (alpha * rho_m)**c`` (one ball of radius at
most ``alpha * rho_m`` when ``c == 0``). Games here are finite: play stops
once Bob's radius drops below a threshold and the last ball is the outcome
enclosure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .core1d import CutOutSet1D, Gap
from .errors import (DomainError, IllegalMoveError, NonterminationError,
                     ParamMismatchError, ParseError, UnknownError)
from .exact import INF, Interval, Q, fmt

BUDGET_PREC = 200
BUDGET_SLACK = mpmath.mpf("1e-15")
MAX_TURNS = 10_000


@dataclass(frozen=True)
class GameParams:
    alpha: Fraction
    beta: Fraction
    c: Fraction
    rho: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "c", "rho"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.alpha <= 0 or not 0 < self.beta < 1 or self.c < 0 or self.rho <= 0:
            raise DomainError(f"bad game parameters {self}")

    def to_json(self) -> dict:
        return {k: fmt(getattr(self, k)) for k in ("alpha", "beta", "c", "rho")}

    @classmethod
    def from_json(cls, d: dict) -> "GameParams":
        return cls(d["alpha"], d["beta"], d["c"], d["rho"])


@dataclass(frozen=True)
class Ball:
    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", Q(self.center))
        object.__setattr__(self, "radius", Q(self.radius))
        if self.radius <= 0:
            raise DomainError("ball radius must be positive")

    @property
    def interval(self) -> Interval:
        return Interval(self.center - self.radius, self.center + self.radius)

    @property
    def diameter(self) -> Fraction:
        return 2 * self.radius

    def map(self, ratio, offset) -> "Ball":
        return Ball(ratio * self.center + offset, abs(ratio) * self.radius)

    def to_json(self):
        return [fmt(self.center), fmt(self.radius)]

    @classmethod
    def from_json(cls, pair) -> "Ball":
        return cls(pair[0], pair[1])


@dataclass(frozen=True)
class AliceMove:
    erased: tuple = ()

    def map(self, ratio, offset) -> "AliceMove":
        return AliceMove(tuple(b.map(ratio, offset) for b in self.erased))


PASS = AliceMove()


@dataclass
class GameTranscript:
    params: GameParams
    moves: list = field(default_factory=list)  # (Ball, AliceMove) per turn
    meta: dict = field(default_factory=dict)

    @property
    def outcome_enclosure(self) -> Interval:
        return self.moves[-1][0].interval

    @property
    def turns(self) -> int:
        """Number of Bob moves after the opening ball."""
        return len(self.moves) - 1

    def erased_balls(self) -> list[Ball]:
        return [b for _, move in self.moves for b in move.erased]

    def to_jsonl(self) -> str:
        lines = [json.dumps({"params": self.params.to_json(), "meta": self.meta})]
        for m, (ball, move) in enumerate(self.moves):
            lines.append(json.dumps({"turn": m, "bob": ball.to_json(),
                                     "alice": [b.to_json() for b in move.erased]}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "GameTranscript":
        try:
            rows = [json.loads(line) for line in text.splitlines() if line.strip()]
            t = cls(GameParams.from_json(rows[0]["params"]), meta=rows[0].get("meta", {}))
            for row in rows[1:]:
                t.moves.append((Ball.from_json(row["bob"]),
                                AliceMove(tuple(Ball.from_json(b) for b in row["alice"]))))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ParseError(f"bad transcript: {exc}") from exc
        return t


# -- rules ---------------------------------------------------------------------

def validate_bob_move(params: GameParams, history, ball: Ball) -> tuple[bool, str]:
    """Bob's rules: ``rho_0 >= rho``, then nesting and shrink factor at least beta."""
    if not history:
        if ball.radius < params.rho:
            return False, "rho_0 >= rho violated"
        return True, ""
    prev = history[-1][0]
    if ball.radius < params.beta * prev.radius:
        return False, "rho_m >= beta * rho_(m-1) violated"
    outer, inner = prev.interval, ball.interval
    if not (outer.left <= inner.left and inner.right <= outer.right):
        return False, "B_m inside B_(m-1) violated"
    return True, ""


def validate_alice_move(params: GameParams, current_radius, move: AliceMove) -> tuple[bool, str]:
    """Alice's budget; exact unless ``c`` is a non-integer rational."""
    cap = params.alpha * Q(current_radius)
    radii = [b.radius for b in move.erased]
    if not radii:
        return True, ""
    c = params.c
    if c == 0:
        if len(radii) > 1:
            return False, "c = 0 allows a single erased ball"
        if radii[0] > cap:
            return False, "erased radius exceeds alpha * rho_m"
        return True, ""
    if c.denominator == 1:
        k = c.numerator
        ok = sum(r**k for r in radii) <= cap**k
    else:
        with mpmath.workprec(BUDGET_PREC):
            cm = mpmath.mpf(c.numerator) / c.denominator
            lhs = mpmath.fsum(_mp(r) ** cm for r in radii)
            rhs = _mp(cap) ** cm
            ok = lhs <= rhs * (1 + BUDGET_SLACK)
    return (True, "") if ok else (False, "budget sum r_i^c <= (alpha rho_m)^c violated")


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def budget_used(move: AliceMove, c: Fraction):
    """``sum r_i**c`` (exact for integer ``c``)."""
    if c.denominator == 1:
        return sum((b.radius ** c.numerator for b in move.erased), Fraction(0))
    with mpmath.workprec(BUDGET_PREC):
        return mpmath.fsum(_mp(b.radius) ** _mp(c) for b in move.erased)


# -- strategies ------------------------------------------------------------------

class Strategy:
    """Alice's response function together with its declared parameters.

    ``target`` describes the set the strategy is meant to win for, as a
    membership oracle on intervals (see :func:`verify_winning_run`).
    """

    def __init__(self, respond: Callable, envelope: GameParams, target=None, name="strategy"):
        self._respond = respond
        self.envelope = envelope
        self.target = target
        self.name = name

    def respond(self, history, ball: Ball) -> AliceMove:
        return self._respond(history, ball)

    def __repr__(self):
        return f"<{self.name} {self.envelope.to_json()}>"


class ThicknessStrategy(Strategy):
    """Erase the first gap meeting Bob's ball once the ball fits its bridges."""

    def __init__(self, C: CutOutSet1D, beta, depth: int = 20):
        beta = Q(beta)
        if C.hull != Interval(0, 1):
            raise DomainError(f"hull must be [0, 1], got {C.hull!r}")
        if not 0 < beta < 1:
            raise DomainError("beta must lie in (0, 1)")
        tau = C.thickness(depth).lo
        if tau <= 0:
            raise DomainError("thickness must be positive")
        # a gapless C leaves nothing to erase; any alpha works
        alpha = Fraction(1) if tau == INF else 1 / (tau * beta)
        self.C = C
        super().__init__(self._play, GameParams(alpha, beta, 0, beta / 2),
                         set_membership_oracle(C), "thickness")

    def target_gap(self, ball: Ball) -> Gap | None:
        """The gap Alice aims at, ignoring the budget."""
        B = ball.interval
        first = next(self.C.gaps_meeting(B), None)
        if first is None:
            return None
        lb, rb = self.C.bridges(first)
        if B.length > min(lb.length, rb.length):
            return None
        # uniqueness: the ball sits inside L_n, G_n and R_n, where no
        # earlier gap can reach it
        assert lb.left <= B.left and B.right <= rb.right, "target gap not unique"
        return first

    def _play(self, history, ball):
        g = self.target_gap(ball)
        if g is None:
            return PASS
        move = AliceMove((Ball(g.interval.midpoint, g.length / 2),))
        ok, _ = validate_alice_move(self.envelope, ball.radius, move)
        return move if ok else PASS


def alice_thickness_strategy(C: CutOutSet1D, beta) -> ThicknessStrategy:
    return ThicknessStrategy(C, beta)


def _alpha_from_power(total, c: Fraction) -> Fraction:
    """Smallest convenient rational alpha with ``alpha**c >= total``."""
    if c == 1:
        return Fraction(total)
    with mpmath.workprec(BUDGET_PREC):
        a = _mp(Fraction(total)) ** (1 / _mp(c))
        den = 2**150
        return Fraction(int(mpmath.ceil(a * den)), den)


def combine_strategies(strategies, c) -> Strategy:
    """Union of the component erasures; alpha**c is the sum of the alpha_j**c."""
    c = Q(c)
    if c <= 0:
        raise DomainError("combining needs c > 0")
    if not strategies:
        raise DomainError("nothing to combine")
    first = strategies[0].envelope
    for s in strategies:
        e = s.envelope
        if (e.beta, e.c, e.rho) != (first.beta, c, first.rho):
            raise ParamMismatchError(f"{s} does not share beta={first.beta}, c={c}, rho={first.rho}")
    if len(strategies) == 1:
        return strategies[0]
    if c.denominator == 1:
        power_sum = sum(s.envelope.alpha ** c.numerator for s in strategies)
    else:
        with mpmath.workprec(BUDGET_PREC):
            power_sum = mpmath.fsum(_mp(s.envelope.alpha) ** _mp(c) for s in strategies)
            power_sum = Fraction(int(mpmath.ceil(power_sum * 2**150)), 2**150)
    alpha = _alpha_from_power(power_sum, c)

    def play(history, ball):
        erased = []
        for s in strategies:
            erased.extend(s.respond(history, ball).erased)
        return AliceMove(tuple(erased))

    targets = [s.target for s in strategies]
    target = None
    if all(targets):
        target = _intersection_oracle(targets)
    out = Strategy(play, GameParams(alpha, first.beta, c, first.rho), target, "combined")
    out.components = list(strategies)
    out.alpha_power = power_sum
    return out


def transport_similarity(s: Strategy, ratio, offset) -> Strategy:
    """The strategy for ``f(S)`` with ``f(x) = ratio*x + offset``."""
    ratio, offset = Q(ratio), Q(offset)
    if ratio == 0:
        raise DomainError("ratio must be nonzero")
    if ratio == 1 and offset == 0:
        return s

    def pull(ball):
        return ball.map(1 / ratio, -offset / ratio)

    def play(history, ball):
        back = [(pull(b), m.map(1 / ratio, -offset / ratio)) for b, m in history]
        return s.respond(back, pull(ball)).map(ratio, offset)

    def moved_target(iv):
        return s.target(iv.map(1 / ratio, -offset / ratio))

    target = moved_target if s.target is not None else None
    e = s.envelope
    return Strategy(play, GameParams(e.alpha, e.beta, e.c, abs(ratio) * e.rho), target,
                    f"transported({s.name})")


def relax_params(s: Strategy, to: GameParams) -> Strategy:
    """Same responses under a looser envelope; legality is asserted per move."""
    e = s.envelope
    if to.alpha < e.alpha or to.beta < e.beta or to.c < e.c or to.rho < e.rho:
        raise DomainError(f"cannot relax {e.to_json()} to {to.to_json()}")
    if to == e:
        return s

    def play(history, ball):
        move = s.respond(history, ball)
        ok, why = validate_alice_move(to, ball.radius, move)
        assert ok, why
        return move

    return Strategy(play, to, s.target, f"relaxed({s.name})")


# -- Bob -------------------------------------------------------------------------

class BobPlayer:
    name = "bob"

    def __init__(self, first: Ball | None = None):
        self.first = first

    def opening(self, params: GameParams) -> Ball:
        return self.first or Ball(Fraction(1, 2), params.rho)

    def move(self, params: GameParams, history) -> Ball:
        if not history:
            return self.opening(params)
        return self.next_ball(params, history)

    def next_ball(self, params, history) -> Ball:
        raise NotImplementedError

    @staticmethod
    def steer(prev: Ball, radius, goal) -> Ball:
        """Nested ball of ``radius`` whose center is as close to ``goal`` as allowed."""
        slack = prev.radius - radius
        center = min(max(goal, prev.center - slack), prev.center + slack)
        return Ball(center, radius)

    def describe(self) -> dict:
        return {"bob": self.name}


class CenterBob(BobPlayer):
    """Shrinks by exactly beta, moving toward ``goal`` (default: stay put)."""

    name = "center"

    def __init__(self, first: Ball | None = None, goal=None):
        super().__init__(first)
        self.goal = None if goal is None else Q(goal)

    def next_ball(self, params, history):
        prev = history[-1][0]
        goal = prev.center if self.goal is None else self.goal
        return self.steer(prev, params.beta * prev.radius, goal)


class RandomBob(BobPlayer):
    """Random legal play with rational shrink factors and offsets."""

    name = "random"

    def __init__(self, seed: int, first: Ball | None = None):
        super().__init__(first)
        self.seed = seed
        self.rng = random.Random(seed)

    def opening(self, params):
        if self.first is not None:
            return self.first
        center = Fraction(self.rng.randint(-8, 72), 64)
        return Ball(center, params.rho * (1 + Fraction(self.rng.randint(0, 8), 8)))

    def next_ball(self, params, history):
        prev = history[-1][0]
        k = self.rng.randint(0, 15)
        radius = prev.radius * (params.beta + (1 - params.beta) * Fraction(k, 16))
        slack = prev.radius - radius
        shift = slack * Fraction(self.rng.randint(-64, 64), 64)
        return Ball(prev.center + shift, radius)

    def describe(self):
        return {"bob": self.name, "seed": self.seed}


class AdversaryBob(BobPlayer):
    """Dives toward the largest gap of ``C`` meeting the ball that Alice has not erased."""

    name = "adversary"

    def __init__(self, C: CutOutSet1D, first: Ball | None = None, lookahead: int = 16):
        super().__init__(first)
        self.C = C
        self.lookahead = lookahead

    def next_ball(self, params, history):
        prev = history[-1][0]
        erased = [b.interval for _, m in history for b in m.erased]
        goal = prev.center
        for n, g in enumerate(self.C.gaps_meeting(prev.interval)):
            if n >= self.lookahead:
                break
            if not any(e.left <= g.left and g.right <= e.right for e in erased):
                goal = g.interval.midpoint
                break
        return self.steer(prev, params.beta * prev.radius, goal)


def run_game(alice: Strategy, bob: BobPlayer, params: GameParams, stop_radius,
             max_turns: int = MAX_TURNS) -> GameTranscript:
    """Alternate moves until Bob's radius drops below ``stop_radius``."""
    stop_radius = Q(stop_radius)
    if stop_radius <= 0:
        raise DomainError("stop_radius must be positive")
    t = GameTranscript(params, meta={**bob.describe(), "alice": alice.name,
                                     "stop_radius": fmt(stop_radius)})
    for _ in range(max_turns):
        ball = bob.move(params, t.moves)
        ok, why = validate_bob_move(params, t.moves, ball)
        if not ok:
            raise IllegalMoveError("Bob", why)
        move = alice.respond(list(t.moves), ball)
        ok, why = validate_alice_move(params, ball.radius, move)
        if not ok:
            raise IllegalMoveError("Alice", why)
        t.moves.append((ball, move))
        if ball.radius < stop_radius:
            return t
    raise NonterminationError(f"Bob's radius stayed above {fmt(stop_radius)} for {max_turns} turns")


# -- verdicts --------------------------------------------------------------------

INSIDE, OUTSIDE, UNKNOWN = "inside_S", "outside", "unknown"


def set_membership_oracle(C: CutOutSet1D):
    """Classify intervals against ``(-inf, 0) ∪ C ∪ (1, inf)`` for hull ``[0, 1]``."""
    lo, hi = C.hull.left, C.hull.right

    def oracle(iv: Interval) -> str:
        if iv.left < lo or iv.right > hi:
            return INSIDE
        try:
            return INSIDE if C.meets(iv) else OUTSIDE
        except UnknownError:
            return UNKNOWN

    return oracle


def _intersection_oracle(oracles):
    # an interval meeting every S_j need not meet their intersection, so
    # only a single point common to all can certify "inside"
    def oracle(iv: Interval) -> str:
        verdicts = [o(iv) for o in oracles]
        if OUTSIDE in verdicts:
            return OUTSIDE
        if iv.length == 0 and all(v == INSIDE for v in verdicts):
            return INSIDE
        return UNKNOWN

    return oracle


def _covered(iv: Interval, pieces: list[Interval]) -> bool:
    if not any(p.contains(iv.left) for p in pieces):
        return False
    reach = iv.left
    for p in sorted(pieces):
        if p.left > reach:
            break
        reach = max(reach, p.right)
    return reach >= iv.right


def verify_winning_run(t: GameTranscript, membership) -> str:
    """``"erased"``, ``"inside_S"`` or ``"counterexample"`` for a finished game."""
    enc = t.outcome_enclosure
    if _covered(enc, [b.interval for b in t.erased_balls()]):
        return "erased"
    verdict = membership(enc)
    if verdict == INSIDE:
        return "inside_S"
    if verdict == UNKNOWN:
        raise UnknownError("enclosure too coarse for the membership oracle; lower stop_radius")
    return "counterexample"
