"""Exception types shared across the package."""


class InjhomError(Exception):
    """Base class for all package errors."""


# graph construction / parsing
class MalformedLine(InjhomError):
    pass


class VertexOutOfRange(InjhomError):
    pass


class DigonViolation(InjhomError):
    pass


class DuplicateArc(InjhomError):
    pass


class SelfMergeCycle(InjhomError):
    pass


# catalog
class BoundExceeded(InjhomError):
    pass


# solver
class PartialColouring(InjhomError):
    pass


class InvalidFixedAssignment(InjhomError):
    pass


# poly decider
class TargetTooLarge(InjhomError):
    pass


# reductions
class DegreeTooHigh(InjhomError):
    pass


class DegreeTooLow(InjhomError):
    pass


class SquareExhausted(InjhomError):
    pass


class PortColourMismatch(InjhomError):
    pass


class NormalizationFailed(InjhomError):
    pass


class TemplateNotFound(InjhomError):
    pass


# gadget lab
class AssetMissing(InjhomError):
    pass


GadgetMissing = AssetMissing  # the reduction builders surface it under this name


class ContractMalformed(InjhomError):
    pass


class UnknownPort(InjhomError):
    pass


class SynthesisNotFound(InjhomError):
    pass
