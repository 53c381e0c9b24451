"""Exception hierarchy shared across the package."""


class CellformError(Exception):
    """Base class for every error raised by this package."""


# --- table ingestion -------------------------------------------------------

class TableError(CellformError):
    pass


class EmptyInput(TableError):
    """CSV source contains no header row."""


class RaggedRow(TableError):
    """A data row's cell count differs from the header length."""

    def __init__(self, row_index: int, expected: int, got: int):
        super().__init__(f"row {row_index} has {got} cells, expected {expected}")
        self.row_index = row_index
        self.expected = expected
        self.got = got


class DuplicateHeader(TableError):
    def __init__(self, name: str):
        super().__init__(f"duplicate column name: {name!r}")
        self.name = name


class EmptyHeaderName(TableError):
    """A header field is empty; column names must be non-empty."""


class IoFailure(TableError):
    pass


# --- standardizers ---------------------------------------------------------

class StandardizeError(CellformError):
    pass


class UnknownColumn(StandardizeError):
    def __init__(self, name: str):
        super().__init__(f"no such column: {name!r}")
        self.name = name


class UnsupportedType(StandardizeError):
    pass


class BadTargetFormat(StandardizeError):
    pass


# --- annotation ------------------------------------------------------------

class EmptyCandidates(CellformError):
    pass


class MalformedAnnotation(CellformError):
    """The annotation reply does not cover every column with a known class."""


# --- llm client ------------------------------------------------------------

class LlmError(CellformError):
    """Base for backend failures; all are retryable by the orchestrator."""


class LlmTimeout(LlmError):
    pass


class TransportError(LlmError):
    pass


class BadStatus(LlmError):
    def __init__(self, code: int, body: str):
        super().__init__(f"backend returned status {code}: {body[:200]}")
        self.code = code
        self.body = body


# --- orchestration ---------------------------------------------------------

class MalformedPlan(CellformError):
    """The plan reply failed parsing or validation; reason feeds the retry prompt."""


class ExecutionError(CellformError):
    pass


class SessionActive(CellformError):
    """A new requirement was submitted while the workflow is still running."""


# --- evaluation ------------------------------------------------------------

class ShapeMismatch(CellformError):
    pass


class EvaluationAborted(CellformError):
    def __init__(self, cause: BaseException, latency_s: float):
        super().__init__(f"standardization run failed after {latency_s:.3f}s: {cause}")
        self.cause = cause
        self.latency_s = latency_s
