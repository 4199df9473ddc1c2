"""Exception hierarchy shared by all conekit modules."""


class ConekitError(Exception):
    """Base class for all conekit errors."""


# cross-section models
class NonPositiveParameter(ConekitError):
    pass


class MalformedTabulatedData(ConekitError):
    pass


class TabulatedExhausted(ConekitError):
    pass


class OutOfChart(ConekitError):
    pass


# special functions
class OutOfEnvelope(ConekitError):
    pass


class NonConvergence(ConekitError):
    pass


class RegimeViolation(ConekitError):
    pass


# quadrature
class BadSpec(ConekitError):
    pass


# radial ODE / scattering
class StiffnessFailure(ConekitError):
    pass


class RegimeUnreachable(ConekitError):
    pass


class IllConditionedFit(ConekitError):
    pass


class GeometricPairRejected(ConekitError):
    pass


class SumNotSettled(ConekitError):
    pass


# symbol fitting
class IllConditioned(ConekitError):
    pass


class WindowTooWide(ConekitError):
    pass


# radiation fields
class NotConverging(ConekitError):
    pass


class BandViolation(ConekitError):
    pass


# experiment runner
class ConfigInvalid(ConekitError):
    pass
