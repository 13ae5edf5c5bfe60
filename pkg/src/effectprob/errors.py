"""Exception hierarchy shared across the package.

Every error raised by this package derives from :class:`EffectProbError`,
so callers (and the CLI) can catch one base class and report the concrete
class name as a machine-parsable error code.
"""


class EffectProbError(Exception):
    """Base class for all errors raised by this package."""


# --- draw storage and validation ------------------------------------------

class InvalidDraws(EffectProbError):
    """Candidate draw matrix violates the structural contract."""


class NonFiniteValue(InvalidDraws):
    """A draw is NaN or infinite; the input is corrupt."""


class RaggedChains(InvalidDraws):
    """Chain lengths or chain counts differ where they must match."""


class DuplicateParameter(InvalidDraws):
    """Two parameters share a name."""


class UnknownParameter(EffectProbError):
    """Requested parameter does not exist in the draws."""


class EmptyDraws(EffectProbError):
    """Operation requires at least one draw."""


# --- summaries -------------------------------------------------------------

class InvalidRange(EffectProbError):
    """Range bounds are not ordered a < b."""


class InvalidLevel(EffectProbError):
    """Credible level must lie strictly between 0 and 1."""


class DegenerateDraws(EffectProbError):
    """Draws have zero variance; a density estimate is undefined."""


# --- convergence diagnostics ----------------------------------------------

class TooFewIterations(EffectProbError):
    """Chains are too short for split-half diagnostics."""


class ZeroWithinVariance(EffectProbError):
    """All split sequences are constant; R-hat is undefined."""


# --- regression ------------------------------------------------------------

class InvalidArgument(EffectProbError):
    """Argument outside its documented domain."""


class DegenerateDesign(EffectProbError):
    """All units share one treatment arm; the effect is unidentified."""


class NonFiniteData(EffectProbError):
    """Dataset contains NaN or infinite outcome values."""


class InvalidSigma(EffectProbError):
    """Residual scale must be a positive finite number."""


# --- file interchange ------------------------------------------------------

class ParseError(EffectProbError):
    """Input text does not match the documented file grammar."""


class NonBinaryTreatment(EffectProbError):
    """Treatment column contains a value other than 0 or 1."""


class MissingColumn(EffectProbError):
    """Required column is absent from the file header."""


# --- rendering -------------------------------------------------------------

class EmptyCurve(EffectProbError):
    """Curve has no points to plot."""
