"""Exception hierarchy for the lunaprop model."""


class ModelError(Exception):
    """Base class for all model-level failures."""


class InfeasibleLegError(ModelError):
    """A transport leg's payload fraction is <= 0: the leg cannot fly.

    Raised instead of returning infinity so a misconfigured architecture
    fails loudly inside scenario runs.
    """


class MissingDeltaVError(ModelError):
    """A node pair used by a leg has no delta-v table entry."""


class DomainError(ModelError):
    """An input lies outside an operation's mathematical domain."""


class DegenerateScaleError(ModelError):
    """The shared-asset scope factor dropped to zero or below."""


class UnknownStudyError(ModelError):
    """Requested study id is not in the catalog."""


class ConflictingOverridesError(ModelError):
    """A study variant combines overrides that cannot commute."""


class UnknownExhibitError(ModelError):
    """Requested table/figure id has no canonical configuration."""


class ConfigError(ModelError):
    """Run configuration failed schema validation."""
