"""Mechanism toggle set shared by the asset engine and the economy loop.

Each flag switches one defensive mechanism on or off. Ablation runs flip
them one at a time to attribute outcomes to individual mechanisms.
"""

from dataclasses import dataclass, replace, fields


@dataclass(frozen=True)
class MechanismToggles:
    identity_enforced: bool = True    # registration bound to held seeds, lapse gating
    asymmetric_decay: bool = True     # transferred assets run at half utility
    single_slot: bool = True          # at most one active asset per class per account
    entropy_enabled: bool = True      # durability decays and scales utility
    supply_scaled_entropy: bool = True  # decay rates scale with circulating asset supply

    def without(self, name: str) -> "MechanismToggles":
        if name not in {f.name for f in fields(self)}:
            raise KeyError(name)
        return replace(self, **{name: False})


ALL_ON = MechanismToggles()
ALL_OFF = MechanismToggles(
    identity_enforced=False,
    asymmetric_decay=False,
    single_slot=False,
    entropy_enabled=False,
    supply_scaled_entropy=False,
)

TOGGLE_NAMES = tuple(f.name for f in fields(MechanismToggles))
