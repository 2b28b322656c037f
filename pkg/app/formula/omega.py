from formula.models import GxwSpec, PatternId

BOUNDED = (PatternId.P1, PatternId.P2, PatternId.P3, PatternId.P4)


def compute_omega(spec: GxwSpec) -> int:
    """Unroll depth sufficient to expose a conflict: k' plus the sum of trigger depths."""
    bounded = spec.of_pattern(*BOUNDED)
    return max(1, len(bounded) + sum(s.depth for s in bounded))


def unroll_complete(spec: GxwSpec) -> bool:
    """True when there is no P5 conjunct and every P2 release is input-only."""
    if spec.of_pattern(PatternId.P5):
        return False
    return all(not s.release_out for s in spec.of_pattern(PatternId.P2))
