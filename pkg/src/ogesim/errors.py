"""Rejection types raised by the mechanism layer.

Every error carries a short machine-readable code. The tick loop converts
raised errors into event rows instead of aborting the tick, so any code
below may show up in an event log under ``*_rejected`` entries.
"""


class SimError(Exception):
    """Base class for all mechanism-level rejections."""

    code = "error"


# --- identity registry ---

class DuplicateIdentity(SimError):
    code = "duplicate_identity"


class UnknownIdentity(SimError):
    code = "unknown_identity"


class TimeRegression(SimError):
    code = "time_regression"


class EmptyActiveSet(SimError):
    code = "empty_active_set"


# --- asset engine ---

class InsufficientEffort(SimError):
    code = "insufficient_effort"


class TimeLockActive(SimError):
    code = "time_lock_active"


class LapsedIdentity(SimError):
    code = "lapsed_identity"


class SelfTransfer(SimError):
    code = "self_transfer"


class ForeignAsset(SimError):
    code = "foreign_asset"


# --- market ---

class NonPositiveAmount(SimError):
    code = "non_positive_amount"


class InsufficientBalance(SimError):
    code = "insufficient_balance"


class NotOwner(SimError):
    code = "not_owner"


class AlreadyListed(SimError):
    code = "already_listed"


# --- metrics ---

class NoHumanPlayers(SimError):
    code = "no_human_players"


# --- scenario loading ---

class ParseError(SimError):
    code = "parse_error"


class ValidationError(SimError):
    code = "validation_error"

    def __init__(self, field: str, message: str = ""):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}" if message else field)
