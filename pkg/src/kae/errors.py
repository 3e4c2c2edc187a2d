"""Exception hierarchy shared by every stage of the toolkit."""


class KaeError(Exception):
    """Base class; ``stage`` names the pipeline stage that raised it."""

    stage = "kae"


class StructuralError(KaeError):
    stage = "model"


class UnknownIdError(KaeError, LookupError):
    stage = "model"

    def __init__(self, message: str, ident: str | None = None):
        super().__init__(message)
        self.ident = ident


class ParseError(KaeError):
    stage = "ingest"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            loc = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{message} ({loc})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnsupportedFeatureError(ParseError):
    pass


class SchemaValidationError(KaeError):
    stage = "ingest"

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ConfigError(KaeError):
    stage = "config"


class DimensionError(KaeError, ValueError):
    stage = "matcher"


class TrainingDataError(KaeError, ValueError):
    stage = "matcher"


class ModelFormatError(KaeError):
    stage = "matcher"
