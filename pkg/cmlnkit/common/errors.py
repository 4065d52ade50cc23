class CmlnError(Exception):
    exit_code = 1


class ModelParseError(CmlnError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        location = '' if line is None else ' (line {}, column {})'.format(line, column)
        super().__init__(message + location)
        self.line = line
        self.column = column


class SizeLimitError(CmlnError):
    exit_code = 3

    def __init__(self, message, required=None, limit=None):
        super().__init__(message)
        self.required = required
        self.limit = limit


class ImproperModelError(CmlnError):
    exit_code = 4

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateModelError(ImproperModelError):
    pass


class NotLiftableError(CmlnError):
    pass


class NotRealError(CmlnError, ValueError):
    pass


class NotRationalError(CmlnError, ValueError):
    pass


class BackendMismatchError(CmlnError, TypeError):
    pass


class UnreachableCountError(CmlnError, ValueError):
    pass


class SelfcheckError(CmlnError):
    exit_code = 5
