"""Integer unit grids for conserved quantities.

Token, numeraire and repair-material amounts are stored as integers on a
fixed grid (like wei for ether). Every conserved-quantity update is then an
exact integer move, which makes the supply identity

    pool token reserve + sum of balances == minted - burned

hold exactly at every tick instead of drifting with float rounding.
Prices, utilities and durabilities stay ordinary floats.
"""

TOKEN_UNIT = 10**12      # grid units per token
NUMERAIRE_UNIT = 10**12  # grid units per numeraire
MATERIAL_UNIT = 10**6    # grid units per repair material


def to_token_units(amount: float) -> int:
    return round(amount * TOKEN_UNIT)


def from_token_units(units: int) -> float:
    return units / TOKEN_UNIT


def to_numeraire_units(amount: float) -> int:
    return round(amount * NUMERAIRE_UNIT)


def from_numeraire_units(units: int) -> float:
    return units / NUMERAIRE_UNIT


def to_material_units(amount: float) -> int:
    return round(amount * MATERIAL_UNIT)


def from_material_units(units: int) -> float:
    return units / MATERIAL_UNIT
