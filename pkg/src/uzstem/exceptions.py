"""Exception hierarchy for uzstem."""


class UzstemError(Exception):
    """Base class for all errors raised by this package."""


class LexiconError(UzstemError, ValueError):
    """The affix lexicon could not be loaded."""


class MalformedXml(LexiconError):
    pass


class SchemaViolation(LexiconError):
    pass


class DuplicateEntry(LexiconError):
    pass


class EmptySurface(LexiconError):
    pass


class ExpansionError(LexiconError):
    """A generic affix name could not be expanded."""


class UnknownPlaceholder(ExpansionError):
    pass


class UnbalancedParentheses(ExpansionError):
    pass


class AutomatonError(UzstemError, ValueError):
    """An automaton topology is invalid."""


class DanglingState(AutomatonError):
    pass


class UnknownLabel(AutomatonError):
    pass


class TopologyFormatError(AutomatonError):
    pass


class ConfigError(UzstemError, ValueError):
    """The path configuration is invalid."""


class UnknownPath(ConfigError):
    pass


class EmptyInput(UzstemError, ValueError):
    """The word to stem is empty after normalization."""
