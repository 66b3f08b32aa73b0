"""
Exceptions raised while building, validating and using configurations.
"""

from kernel.errors import PmlError


class ConfigError(PmlError):
    """Base class for configuration errors."""


class ConfigurationShapeError(ConfigError):
    """Components are missing or their counts disagree."""


class SynthesisFailed(ConfigError):
    """A generated equivalence component does not type check.

    `criterion` names the component (f, g, section or retraction).
    """

    def __init__(self, criterion, message):
        super().__init__(f'{criterion}: {message}')
        self.criterion = criterion
        self.message = message
