"""
Small-instance realizability oracle.

A two-player game over Omega cycles: the environment picks inputs that satisfy
the assumption, the system answers with outputs after seeing them. The
environment wins when every reply eventually yields a violation. After Omega
cycles the environment may extend the trace by the window depth with inputs
alone so that windows straddling the horizon settle.
"""
import logging
from functools import lru_cache
from itertools import product
from typing import Optional

import config
from errors import InstanceTooLarge
from formula.models import GxwSpec
from formula.omega import compute_omega
from validate.fuzz import input_valuations
from validate.models import Realizable, StrategyNode, Unrealizable
from validate.semantics import TraceChecker

logger = logging.getLogger(__name__)


def brute_force_realizability(spec: GxwSpec, omega: Optional[int] = None):
    """
    Decide the bounded game.

    Returns:
        Realizable, or Unrealizable with the environment's winning input tree

    Raises:
        InstanceTooLarge: too many variables or too deep a horizon
    """
    omega = compute_omega(spec) if omega is None else omega
    width = len(spec.inputs) + len(spec.outputs)
    if width > config.ORACLE_GUARD or omega > config.ORACLE_MAX_OMEGA:
        raise InstanceTooLarge(
            f"{width} variables and horizon {omega} exceed the oracle limits "
            f"({config.ORACLE_GUARD}, {config.ORACLE_MAX_OMEGA})")
    checker = TraceChecker(spec, check_assumption=False)
    moves = input_valuations(spec)
    replies = [dict(zip(spec.outputs, bits)) for bits in product((False, True), repeat=len(spec.outputs))]
    horizon = omega + checker.depth
    if not moves:
        logger.info("assumption excludes every input, the system wins vacuously")
        return Realizable()

    def frame(inputs, outputs):
        return {**inputs, **outputs} if outputs is not None else dict(inputs)

    def feed(t, state, inputs, outputs):
        return checker.feed(state, t, frame(inputs, outputs))

    @lru_cache(maxsize=None)
    def win_depth(t: int, state) -> Optional[int]:
        """Fewest cycles in which the environment forces a violation, None if it cannot."""
        if t >= horizon:
            return None
        best = None
        for inputs in moves:
            depth = move_depth(t, state, inputs)
            if depth is not None and (best is None or depth < best):
                best = depth
                if best == 1:
                    break
        return best

    def move_depth(t, state, inputs) -> Optional[int]:
        if t >= omega:
            return reply_depth(t, state, inputs, None)
        worst = 0
        for outputs in replies:
            depth = reply_depth(t, state, inputs, outputs)
            if depth is None:
                return None
            worst = max(worst, depth)
        return worst

    def reply_depth(t, state, inputs, outputs) -> Optional[int]:
        following, found = feed(t, state, inputs, outputs)
        if found:
            return 1
        depth = win_depth(t + 1, following)
        return None if depth is None else depth + 1

    def strategy(t: int, state) -> StrategyNode:
        target = win_depth(t, state)
        for inputs in moves:
            if move_depth(t, state, inputs) != target:
                continue
            key = tuple(sorted(inputs.items()))
            branches = []
            for outputs in (replies if t < omega else [None]):
                following, found = feed(t, state, inputs, outputs)
                child = None if found else strategy(t + 1, following)
                label = () if outputs is None else tuple(outputs[n] for n in spec.outputs)
                branches.append((label, child))
            return StrategyNode(t, key, tuple(branches))
        raise AssertionError("no winning move in a won position")

    initial = checker.initial()
    if win_depth(0, initial) is None:
        logger.debug("system survives %d cycles (+%d tail)", omega, checker.depth)
        return Realizable()
    tree = strategy(0, initial)
    logger.debug("environment wins within %d cycles", tree.depth())
    return Unrealizable(tree)
