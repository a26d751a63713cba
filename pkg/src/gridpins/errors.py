class DomainError(Exception):
    """Error carrying a machine-readable code (PARSE, PARAM, EMPTY_SET, ...)."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code

    def as_json(self):
        return {"error": self.code, "message": str(self)}
