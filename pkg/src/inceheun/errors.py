"""Exception hierarchy.

Validation errors map to CLI exit code 2, numerical failures to exit code 3.
"""


class InceHeunError(Exception):
    exit_code = 1

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(InceHeunError, ValueError):
    exit_code = 2


class NumericalError(InceHeunError, ArithmeticError):
    exit_code = 3


class InvalidParams(ValidationError):
    pass


class SingularEvaluation(ValidationError):
    pass


class InvalidEndpoint(ValidationError):
    pass


class PoleError(ValidationError):
    pass


class UndefinedF(ValidationError):
    pass


class BranchError(ValidationError):
    pass


class InadmissibleIndex(ValidationError):
    pass


class ForbiddenNu(ValidationError):
    pass


class ApplicabilityError(ValidationError):
    def __init__(self, message, sibling=None):
        super().__init__(message)
        self.sibling = sibling

    def to_dict(self):
        d = super().to_dict()
        d["sibling"] = self.sibling
        return d


class OutsideDomain(ValidationError):
    pass


class BasisBranchError(ValidationError):
    pass


class RuleInapplicable(ValidationError):
    pass


class NotDegenerate(ValidationError):
    pass


class ChargedTargetUnsupported(ValidationError):
    pass


class DegeneratePotential(ValidationError):
    pass


class InvalidPotential(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class NoRoot(NumericalError):
    pass


class NotConverged(NumericalError):
    pass


class StepFailure(NumericalError):
    pass
