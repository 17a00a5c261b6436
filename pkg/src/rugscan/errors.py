"""Exception types shared across the analyzer."""


class FrontendError(Exception):
    """Base for source-level failures; carries a 1-based position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, col {col})")
        self.message = message
        self.line = line
        self.col = col


class LexError(FrontendError):
    """Unterminated string/comment or illegal character."""


class ParseError(FrontendError):
    """File-level structure (pragma, contract or function header) unrecoverable."""


class ManifestError(Exception):
    """Malformed deployment manifest row; names the offending row."""

    def __init__(self, message: str, row: int):
        super().__init__(f"{message} (row {row})")
        self.row = row


class DuplicateContract(Exception):
    """The same contract_id was aggregated twice."""
