"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all newscope errors."""


class CorpusError(EngineError, ValueError):
    """Raised when corpus input cannot be parsed or validated."""


class EmptyQueryError(EngineError, ValueError):
    """Raised when a query normalizes to zero searchable terms."""


class UnknownPhraseError(EngineError, KeyError):
    """Raised when a phrase is not present in the phrase index."""


class IndexPersistError(EngineError, OSError):
    """Raised when an index directory is missing files or corrupt."""


class IndexVersionError(IndexPersistError):
    """Raised when an on-disk index format version does not match the reader."""
