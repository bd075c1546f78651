from typing import Optional


class HeadlineError(Exception):
    """Base error. `exit_code` is what the CLI returns when this escapes."""

    exit_code = 1

    def __init__(self, message: str, *, record_id: Optional[str] = None):
        self.record_id = record_id
        if record_id is not None:
            message = f"record {record_id!r}: {message}"
        super().__init__(message)


class InputError(HeadlineError):
    exit_code = 1


# -----------------------------
# TEXT
# -----------------------------

class EmptyText(InputError):
    pass


class NoWords(InputError):
    pass


# -----------------------------
# LEXICONS
# -----------------------------

class MalformedLexicon(InputError):
    pass


class ConflictingEntry(InputError):
    pass


# -----------------------------
# TAGGING
# -----------------------------

class TagCountMismatch(InputError):
    pass


class UnknownTag(InputError):
    pass


# -----------------------------
# DATASETS
# -----------------------------

class ParseError(InputError):
    def __init__(self, message: str, *, line: Optional[int] = None, record_id: Optional[str] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, record_id=record_id)


class UnknownLabel(InputError):
    pass


class DuplicateId(InputError):
    pass


class MissingLabel(InputError):
    pass


# -----------------------------
# STATISTICS
# -----------------------------

class DegenerateGroup(InputError):
    pass


class NumericalFailure(HeadlineError):
    exit_code = 2


class ZeroVarianceWarning(UserWarning):
    """Pooled variance is zero; p-values for that matrix are set by rule, not by the test."""


def with_record(err: HeadlineError, record_id: str) -> HeadlineError:
    """Re-create `err` with the record id attached to its message."""
    if err.record_id is not None:
        return err
    return type(err)(str(err), record_id=record_id)
