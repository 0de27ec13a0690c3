"""Exception hierarchy. Every error carries the CLI exit code it maps to."""


class PermhomError(Exception):
    exit_code = 2


class MalformedSimplexError(PermhomError, ValueError):
    pass


class MissingSimplexError(PermhomError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing simplex"


class UndefinedInputError(PermhomError, ValueError):
    pass


class NotASubcomplexError(PermhomError, ValueError):
    pass


class NotPrincipalError(PermhomError, ValueError):
    pass


class NotAFaceError(PermhomError, ValueError):
    pass


class FiltrationError(PermhomError, ValueError):
    pass


class PermutationError(PermhomError, ValueError):
    """Malformed permutation or perversity."""


class NotAllowableError(PermutationError):
    pass


class CannotReduceError(PermutationError):
    pass


class ParseError(PermhomError, ValueError):
    pass


class SizeLimitError(PermhomError):
    exit_code = 3
