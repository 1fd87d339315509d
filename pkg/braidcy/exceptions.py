class BraidcyError(Exception):
    """Base error. ``code`` is the stable name written into reports."""

    code = "BraidcyError"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def as_dict(self):
        payload = {"code": self.code, "message": self.message}
        payload.update({key: str(value) for key, value in sorted(self.details.items())})
        return payload


# Problems with the input document itself.

class InputRejected(BraidcyError):
    code = "InputRejected"


class ParseError(InputRejected):
    code = "ParseError"

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}", line=line, reason=reason)
        self.line = line
        self.reason = reason


class DimensionMismatch(InputRejected):
    code = "DimensionMismatch"


class BadScalar(InputRejected):
    code = "BadScalar"

    def __init__(self, token):
        super().__init__(f"not an exact rational: {token!r}", token=token)
        self.token = token


class BadFamilyParams(InputRejected):
    code = "BadFamilyParams"


# A mathematical hypothesis of the analysis does not hold for the input.

class HypothesisFailed(BraidcyError):
    code = "HypothesisFailed"


class NotBraided(HypothesisFailed):
    code = "NotBraided"


class NotRigid(HypothesisFailed):
    code = "NotRigid"


class NotHecke(HypothesisFailed):
    code = "NotHecke"


class LabelAmbiguous(HypothesisFailed):
    code = "LabelAmbiguous"


class BadLabel(HypothesisFailed):
    code = "BadLabel"


class CapExceeded(HypothesisFailed):
    code = "CapExceeded"


class NotFrobeniusShape(HypothesisFailed):
    code = "NotFrobeniusShape"


class DegenerateForm(HypothesisFailed):
    code = "DegenerateForm"

    def __init__(self, degree):
        super().__init__(f"Frobenius form degenerate on degree {degree}", degree=degree)
        self.degree = degree


class NotExact(HypothesisFailed):
    code = "NotExact"

    def __init__(self, internal_degree, position):
        super().__init__(
            f"Koszul complex not exact at internal degree {internal_degree}, position {position}",
            internal_degree=internal_degree,
            position=position,
        )
        self.internal_degree = internal_degree
        self.position = position


class NotASRegular(HypothesisFailed):
    code = "NotASRegular"

    def __init__(self, position, internal_degree):
        super().__init__(
            f"unexpected Ext at position {position}, internal degree {internal_degree}",
            position=position,
            internal_degree=internal_degree,
        )
        self.position = position
        self.internal_degree = internal_degree


# The computation contradicted itself: a bug, never a property of the input.

class InconsistentResult(BraidcyError):
    code = "InconsistentResult"


class NotInvariant(InconsistentResult):
    code = "NotInvariant"


class NotScalar(InconsistentResult):
    code = "NotScalar"


class NotMultiplicative(InconsistentResult):
    code = "NotMultiplicative"
