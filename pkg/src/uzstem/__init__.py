"""Rule-based, dictionary-free affix-stripping stemmer for Uzbek."""

from .estimator import UzbekStemmer
from .exceptions import (
    ConfigError,
    DanglingState,
    DuplicateEntry,
    EmptyInput,
    EmptySurface,
    MalformedXml,
    SchemaViolation,
    UnbalancedParentheses,
    UnknownLabel,
    UnknownPath,
    UnknownPlaceholder,
    UzstemError,
)
from .fsm import Dfa, LtrFsm, Nfa, build_ltr, determinize, epsilon_closure, export_dot, reverse
from .lexicon import Lexicon, expand_generic, parse_lexicon, serialize_lexicon, validate_counts
from .resources import load_resources
from .stemmer import MainFsm, PathSpec, StemResult, normalize, run_path, stem, strip_class

__version__ = "0.1.0"
