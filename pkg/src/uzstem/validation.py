"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

import numbers
from collections.abc import Iterable


def check_tokens(X) -> list[str]:
    """Return ``X`` as a list of strings.

    A bare string is rejected: it would otherwise be iterated character by
    character.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of tokens, got a single string")
    if not isinstance(X, Iterable):
        raise TypeError(f"expected an iterable of tokens, got {type(X).__name__}")
    tokens = list(X)
    for i, token in enumerate(tokens):
        if not isinstance(token, str):
            raise TypeError(f"token {i} is {type(token).__name__}, expected str")
    return tokens


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
