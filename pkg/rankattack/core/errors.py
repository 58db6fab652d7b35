class RankAttackError(Exception):
    """
    Base class for every error raised by the attack framework.
    """


class ConfigurationError(RankAttackError):
    """
    Raised when a campaign configuration is invalid. The CLI exits with status 1.
    """


class DataError(RankAttackError):
    """
    Raised when an input file cannot be read or parsed. The CLI exits with status 2.
    """


class NoQueryCenterError(RankAttackError):
    """
    Raised when none of the query tokens is in the embedding vocabulary.
    """


class NoCandidateError(RankAttackError):
    """
    Raised when a substitution attack finds no eligible token to replace.
    """


class CapabilityError(RankAttackError):
    """
    Raised when a gradient-guided attack is run against a ranker without gradients.
    """


class DegenerateInputError(RankAttackError):
    """
    Raised when an operation receives an input it cannot be defined on (e.g. an empty document).
    """
