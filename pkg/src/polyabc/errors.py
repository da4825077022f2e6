"""Errors raised across the package, each carrying a stable machine-readable code."""


class CasError(Exception):
    """Base error. ``code`` is stable and ends up in CLI diagnostics."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(message or code)


class NotDivisible(CasError):
    def __init__(self, message: str = ""):
        super().__init__("NOT_DIVISIBLE", message)


class SearchExhausted(CasError):
    """Certificate search ran out of admissible multi-indices (step too small)."""

    def __init__(self, message: str = "", last_degree: int = 0):
        self.last_degree = last_degree
        super().__init__("SEARCH_EXHAUSTED", message)


class ParseError(CasError):
    def __init__(self, message: str = "", line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__("PARSE_ERROR", message)
