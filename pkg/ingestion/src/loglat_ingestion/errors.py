class IngestionError(Exception):
    pass


class NotFound(IngestionError):
    pass


class SchemaDrift(IngestionError):
    """The upstream payload no longer matches the expected shape."""


class CASUnavailable(IngestionError):
    pass


class UnitRankDeficient(IngestionError):
    pass


class ValidationFailed(IngestionError):
    """The primary component's validate-bundle rejected the output."""
