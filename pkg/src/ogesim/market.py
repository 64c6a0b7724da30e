"""Market: constant-product swap pool and the asset listing book.

Reserves and trade amounts live on the integer unit grid. Swap output is
the classic constant-product formula with the fee taken on the input side:

    out = reserve_out * in_eff // (reserve_in + in_eff)

Floor division rounds in the pool's favor, so the product of reserves never
decreases; with the fee at zero it stays within a hair of its start value.
Both reserves stay strictly positive after every swap.

Listings are one per asset. A buy matches the cheapest listing of the class
at or under the cap, ties broken by earliest listing then lowest asset id.
"""

from dataclasses import dataclass

from . import assets as asset_engine
from .assets import Asset
from .errors import AlreadyListed, InsufficientBalance, NonPositiveAmount, NotOwner
from .identity import IdentityRegistry
from .units import NUMERAIRE_UNIT, TOKEN_UNIT

_FEE_SCALE = 10**9  # fee resolution: parts per billion


@dataclass
class LiquidityPool:
    reserve_numeraire: int  # numeraire grid units
    reserve_token: int      # token grid units
    fee_ppb: int = 3_000_000  # 0.003

    @classmethod
    def from_amounts(cls, numeraire: float, token: float, fee_rate: float = 0.003) -> "LiquidityPool":
        if numeraire <= 0 or token <= 0:
            raise NonPositiveAmount("reserves must be positive")
        if not 0.0 <= fee_rate < 1.0:
            raise ValueError("fee rate must be in [0, 1)")
        return cls(
            reserve_numeraire=round(numeraire * NUMERAIRE_UNIT),
            reserve_token=round(token * TOKEN_UNIT),
            fee_ppb=round(fee_rate * _FEE_SCALE),
        )

    @property
    def fee_rate(self) -> float:
        return self.fee_ppb / _FEE_SCALE

    @property
    def invariant_k(self) -> int:
        return self.reserve_numeraire * self.reserve_token


def spot_price(pool: LiquidityPool) -> float:
    """Marginal price of the token in numeraire (no fee, no depth impact)."""
    return pool.reserve_numeraire / pool.reserve_token


def _swap(reserve_in: int, reserve_out: int, amount_in: int, fee_ppb: int) -> int:
    if amount_in <= 0:
        raise NonPositiveAmount(f"swap input {amount_in}")
    in_eff = amount_in * (_FEE_SCALE - fee_ppb) // _FEE_SCALE
    return reserve_out * in_eff // (reserve_in + in_eff)


def swap_numeraire_for_token(pool: LiquidityPool, amount_in: int) -> int:
    """Buy tokens with numeraire grid units; returns token units paid out."""
    out = _swap(pool.reserve_numeraire, pool.reserve_token, amount_in, pool.fee_ppb)
    pool.reserve_numeraire += amount_in
    pool.reserve_token -= out
    return out


def swap_token_for_numeraire(pool: LiquidityPool, amount_in: int) -> int:
    """Sell tokens for numeraire grid units; returns numeraire units paid out."""
    out = _swap(pool.reserve_token, pool.reserve_numeraire, amount_in, pool.fee_ppb)
    pool.reserve_token += amount_in
    pool.reserve_numeraire -= out
    return out


# --- listing book ---

@dataclass
class Listing:
    asset_id: int
    seller: str
    ask_price: int  # token grid units
    listed_tick: int


@dataclass
class Trade:
    asset_id: int
    class_id: str
    seller: str
    buyer: str
    price: int  # token grid units
    tick: int


class ListingBook:
    """At most one live listing per asset id."""

    def __init__(self):
        self._listings: dict[int, Listing] = {}

    def __len__(self) -> int:
        return len(self._listings)

    def __contains__(self, asset_id: int) -> bool:
        return asset_id in self._listings

    def get(self, asset_id: int) -> Listing | None:
        return self._listings.get(asset_id)

    def remove(self, asset_id: int) -> None:
        self._listings.pop(asset_id, None)

    def listings(self) -> list[Listing]:
        return [self._listings[k] for k in sorted(self._listings)]

    def add(self, listing: Listing) -> None:
        if listing.asset_id in self._listings:
            raise AlreadyListed(str(listing.asset_id))
        self._listings[listing.asset_id] = listing

    def best_ask(self, class_id: str, assets: dict[int, Asset]) -> Listing | None:
        """Cheapest live listing of a class; earliest tick then lowest id on ties."""
        best: Listing | None = None
        for asset_id in sorted(self._listings):
            listing = self._listings[asset_id]
            asset = assets.get(asset_id)
            if asset is None or asset.class_id != class_id:
                continue
            if best is None or (listing.ask_price, listing.listed_tick, listing.asset_id) < (
                best.ask_price,
                best.listed_tick,
                best.asset_id,
            ):
                best = listing
        return best


def list_asset(book: ListingBook, asset: Asset, seller: str, ask_price: int, tick: int) -> Listing:
    if asset.current_owner != seller:
        raise NotOwner(f"{seller} does not own asset {asset.asset_id}")
    if ask_price <= 0:
        raise NonPositiveAmount(f"ask {ask_price}")
    listing = Listing(asset_id=asset.asset_id, seller=seller, ask_price=ask_price, listed_tick=tick)
    book.add(listing)  # raises AlreadyListed
    return listing


def buy_asset(
    book: ListingBook,
    assets: dict[int, Asset],
    balances: dict[str, int],
    buyer: str,
    class_id: str,
    max_price: int,
    tick: int,
    registry: IdentityRegistry | None = None,
) -> Trade | None:
    """Match the cheapest listing of a class at or under max_price.

    On a match: tokens move buyer -> seller and the asset transfers (which
    deactivates it for the buyer until the next activation pass). Stale
    listings whose seller no longer owns the asset are dropped, not matched;
    the buyer's own listings are never matched. Returns None when nothing
    matches.
    """
    candidates = sorted(
        (l for l in book.listings() if assets.get(l.asset_id) is not None
         and assets[l.asset_id].class_id == class_id),
        key=lambda l: (l.ask_price, l.listed_tick, l.asset_id),
    )
    listing = None
    for candidate in candidates:
        if assets[candidate.asset_id].current_owner != candidate.seller:
            book.remove(candidate.asset_id)  # stale: owner changed since listing
            continue
        if candidate.seller == buyer:
            continue
        listing = candidate
        break
    if listing is None or listing.ask_price > max_price:
        return None
    asset = assets[listing.asset_id]
    if balances.get(buyer, 0) < listing.ask_price:
        raise InsufficientBalance(
            f"buyer {buyer} holds {balances.get(buyer, 0)}, ask {listing.ask_price}"
        )
    asset_engine.transfer(asset, buyer, tick, registry)
    balances[buyer] -= listing.ask_price
    balances[listing.seller] = balances.get(listing.seller, 0) + listing.ask_price
    book.remove(listing.asset_id)
    return Trade(
        asset_id=asset.asset_id,
        class_id=asset.class_id,
        seller=listing.seller,
        buyer=buyer,
        price=listing.ask_price,
        tick=tick,
    )
