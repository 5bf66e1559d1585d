"""Column simulations and a kind/side-generic front end."""

from __future__ import annotations

from dataclasses import replace

from ..games import BimatrixGame, MixedProfile, transpose_swap
from .common import PermutationPair, Side, SimKind, SimulationRecord
from .dual import build_dual, encode_dual, prepare_dual, simulate_dual, translate_back_dual
from .type_one import build_type_one, encode_type_one, prepare_type_one, simulate_type_one, translate_back_type_one
from .type_two import build_type_two, encode_type_two, prepare_type_two, simulate_type_two, translate_back_type_two

_SIMULATE = {
    SimKind.TYPE_ONE: simulate_type_one,
    SimKind.DUAL: simulate_dual,
    SimKind.TYPE_TWO: simulate_type_two,
}
_TRANSLATE = {
    SimKind.TYPE_ONE: translate_back_type_one,
    SimKind.DUAL: translate_back_dual,
    SimKind.TYPE_TWO: translate_back_type_two,
}


def apply_to_column_side(kind: SimKind, game: BimatrixGame, eps=None) -> tuple[BimatrixGame, SimulationRecord]:
    """Swap players, simulate the (new) row player's columns, swap back."""
    built, record = _SIMULATE[kind](transpose_swap(game), eps)
    return transpose_swap(built), replace(record, side=Side.COLUMN)


def simulate(kind: SimKind, game: BimatrixGame, side: Side = Side.ROW, eps=None) -> tuple[BimatrixGame, SimulationRecord]:
    if side is Side.COLUMN:
        return apply_to_column_side(kind, game, eps)
    return _SIMULATE[kind](game, eps)


def translate_back(record: SimulationRecord, profile: MixedProfile, eps=None,
                   enforce_regime: bool = True) -> MixedProfile:
    return _TRANSLATE[record.kind](record, profile, eps, enforce_regime)


__all__ = [
    "PermutationPair", "Side", "SimKind", "SimulationRecord",
    "apply_to_column_side", "simulate", "translate_back",
    "prepare_type_one", "encode_type_one", "build_type_one", "simulate_type_one", "translate_back_type_one",
    "prepare_dual", "encode_dual", "build_dual", "simulate_dual", "translate_back_dual",
    "prepare_type_two", "encode_type_two", "build_type_two", "simulate_type_two", "translate_back_type_two",
]
