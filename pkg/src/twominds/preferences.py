"""Preference generators for trait-players in a two-person dilemma.

A generator turns (the trait's own internal action, its person's realized
action, the other persons' realized actions) into an ordinal rank on the
1..4 scale. Only the other person's realized action matters, never how
that person's traits split internally.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, Optional

from twominds.errors import InvalidArgumentError, UnsupportedConfigurationError

COOPERATE = "C"
DEFECT = "D"

# (own person action, other person action) -> rank, 4 = best
_DILEMMA_ORDER = {
    (COOPERATE, DEFECT): 1,
    (DEFECT, DEFECT): 2,
    (COOPERATE, COOPERATE): 3,
    (DEFECT, COOPERATE): 4,
}


def _check_action(action: str) -> None:
    if action not in (COOPERATE, DEFECT):
        raise InvalidArgumentError(f"action must be 'C' or 'D', got {action!r}")


def mercenary_rank(person_action: str, other_action: str) -> int:
    """Classic dilemma ordering over the two persons' realized actions."""
    _check_action(person_action)
    _check_action(other_action)
    return _DILEMMA_ORDER[person_action, other_action]


def altruistic_rank(own_action: str, person_action: str, other_action: str, guilt: int = 1) -> int:
    """Mercenary ordering, lowered by ``guilt`` when this trait itself defects.

    The result is clamped at 1 so larger penalties stay on the scale.
    """
    _check_action(own_action)
    if isinstance(guilt, bool) or not isinstance(guilt, int) or guilt < 0:
        raise InvalidArgumentError(f"guilt must be a non-negative integer, got {guilt!r}")
    base = mercenary_rank(person_action, other_action)
    if own_action == DEFECT:
        return max(1, base - guilt)
    return base


@dataclass(frozen=True)
class PreferenceGenerator:
    """One of the two built-in generators.

    ``guilt_penalty`` is set for altruistic generators only.
    """

    kind: Literal["mercenary", "altruistic"]
    guilt_penalty: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind == "mercenary":
            if self.guilt_penalty is not None:
                raise InvalidArgumentError("a mercenary generator takes no guilt penalty")
        elif self.kind == "altruistic":
            g = self.guilt_penalty
            if isinstance(g, bool) or not isinstance(g, int) or g < 0:
                raise InvalidArgumentError(
                    f"altruistic guilt penalty must be a non-negative integer, got {g!r}"
                )
        else:
            raise InvalidArgumentError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def mercenary(cls) -> PreferenceGenerator:
        return cls("mercenary")

    @classmethod
    def altruistic(cls, guilt: int = 1) -> PreferenceGenerator:
        return cls("altruistic", guilt)

    def __call__(self, own_action: str, person_action: str, other_actions: Sequence[str]) -> int:
        if len(other_actions) != 1:
            raise UnsupportedConfigurationError(
                f"built-in {self.kind} preferences are defined against exactly one "
                f"other person, got {len(other_actions)}"
            )
        (other,) = other_actions
        if self.kind == "mercenary":
            _check_action(own_action)
            return mercenary_rank(person_action, other)
        return altruistic_rank(own_action, person_action, other, self.guilt_penalty)
