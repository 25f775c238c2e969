"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI emits it verbatim in
its error JSON, so renaming a code is a breaking change.
"""


class HopfAdjError(Exception):
    code = "Error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, str, float, bool)) or v is None:
        return v
    return str(v)


class ParseError(HopfAdjError):
    code = "ParseError"


class NotPrime(HopfAdjError):
    code = "NotPrime"


class FieldMismatch(HopfAdjError):
    code = "FieldMismatch"


class ArityMismatch(HopfAdjError):
    code = "ArityMismatch"


class NotSquare(HopfAdjError):
    code = "NotSquare"


class NotContained(HopfAdjError):
    code = "NotContained"


class MalformedAlgebra(HopfAdjError):
    code = "MalformedAlgebra"


class NotHopfAlgebra(HopfAdjError):
    code = "NotHopfAlgebra"


class AntipodeNotInvertible(HopfAdjError):
    code = "AntipodeNotInvertible"


class NotAGroup(HopfAdjError):
    code = "NotAGroup"


class NotAGroupoid(HopfAdjError):
    code = "NotAGroupoid"


class IndexOutOfRange(HopfAdjError):
    code = "IndexOutOfRange"


class CharTwoUnsupported(HopfAdjError):
    code = "CharTwoUnsupported"


class NotInC1(HopfAdjError):
    code = "NotInC1"


class TooLarge(HopfAdjError):
    code = "TooLarge"


class UnsupportedDegree(HopfAdjError):
    code = "UnsupportedDegree"


class NotACocycle(HopfAdjError):
    code = "NotACocycle"


class SingularMatrix(HopfAdjError):
    code = "SingularMatrix"
