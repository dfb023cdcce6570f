"""Domain errors shared by every module.

Each error carries a stable machine-readable code and the HTTP status the
gateway maps it to. Codes are part of the API contract and must not change.
"""


class FairpoolError(Exception):
    code = "error"
    http_status = 400


# ledger

class DuplicateKey(FairpoolError):
    code = "duplicate_key"
    http_status = 409


class UnknownAccount(FairpoolError):
    code = "unknown_account"
    http_status = 404


class InsufficientBalance(FairpoolError):
    code = "insufficient_balance"
    http_status = 422


class NonPositiveAmount(FairpoolError):
    code = "non_positive_amount"
    http_status = 400


# registry

class DuplicateUniqueId(FairpoolError):
    code = "duplicate_unique_id"
    http_status = 409


class UnknownUser(FairpoolError):
    code = "unknown_user"
    http_status = 404


class KeyAlreadyLinked(FairpoolError):
    code = "key_already_linked"
    http_status = 409


class OutOfRangeRating(FairpoolError):
    code = "out_of_range"
    http_status = 400


class MissingCategory(FairpoolError):
    code = "missing_category"
    http_status = 400


class UnknownEntity(FairpoolError):
    code = "unknown_entity"
    http_status = 404


class ValidationError(FairpoolError):
    code = "validation_error"
    http_status = 400


# recommender

class DimensionMismatch(FairpoolError):
    code = "dimension_mismatch"
    http_status = 400


class InterestsUnset(FairpoolError):
    code = "interests_unset"
    http_status = 409


class EmptyInput(FairpoolError):
    code = "empty_input"
    http_status = 400


# fairness

class EmptyGroup(FairpoolError):
    code = "empty_group"
    http_status = 400


class BothZero(FairpoolError):
    code = "both_zero"
    http_status = 400


class NoQualifiedMembers(FairpoolError):
    code = "no_qualified_members"
    http_status = 400


# experiment tooling

class FixtureParseError(FairpoolError):
    code = "fixture_parse_error"
    http_status = 400


class UnknownReference(FairpoolError):
    code = "unknown_reference"
    http_status = 404


class InvalidParams(FairpoolError):
    code = "invalid_params"
    http_status = 400
