"""Shared exception types."""


class GuardLimitError(ValueError):
    """An exact routine was asked to run past its instance-size guard."""


class ConfigError(ValueError):
    """An experiment configuration or input file is malformed."""
