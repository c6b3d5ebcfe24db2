class DfsqcException(Exception):
    """Root of every error raised by dfsqc; ``code`` doubles as the CLI exit code"""

    code = 1
    message = "Internal error"

    def __init__(self, *, code: int | None = None, message: str | None = None, details: str | None = None) -> None:
        if code is not None:
            self.code = code
        if message is not None:
            self.message = message
        self.details = details
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message

    @classmethod
    def from_error(cls, code: int, message: str, details: str | None):
        return cls(code=code, message=message, details=details)
