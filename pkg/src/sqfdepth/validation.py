"""Input coercion shared by the estimators and the command line."""
from __future__ import annotations

import json
from pathlib import Path

from .generate import corpus
from .homology import FieldSpec
from .ideal import IdealError, SquarefreeIdeal, parse_ideal

CORPUS_PREFIX = "corpus:"


def check_ideal(obj) -> SquarefreeIdeal:
    """Accept an ideal, its JSON form (dict or text), ``(n, primes)`` or
    ``"corpus:NAME"``."""
    if isinstance(obj, SquarefreeIdeal):
        return obj
    if isinstance(obj, str) and obj.startswith(CORPUS_PREFIX):
        return corpus(obj[len(CORPUS_PREFIX):])
    if isinstance(obj, (str, bytes, dict)):
        return parse_ideal(obj)
    if isinstance(obj, tuple) and len(obj) == 2:
        n, primes = obj
        return SquarefreeIdeal(n, tuple(primes))
    raise IdealError(f"cannot interpret {type(obj).__name__} as a squarefree ideal")


def check_ideals(X) -> list:
    """A single ideal or an iterable of them, as a list."""
    if isinstance(X, (SquarefreeIdeal, dict, str, bytes)) or (
        isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], int)
    ):
        return [check_ideal(X)]
    return [check_ideal(x) for x in X]


def load_ideal(path: str) -> SquarefreeIdeal:
    """Read the JSON ideal format from a file or a ``corpus:`` pseudo-path."""
    if path.startswith(CORPUS_PREFIX):
        return check_ideal(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IdealError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IdealError(f"{path}: invalid JSON: {exc}") from None
    return parse_ideal(data)


def check_field(characteristic) -> FieldSpec:
    try:
        return characteristic if isinstance(characteristic, FieldSpec) else FieldSpec(int(characteristic))
    except (TypeError, ValueError) as exc:
        raise IdealError(str(exc)) from None


def check_budget(budget_ms) -> float:
    budget = float(budget_ms)
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget_ms}")
    return budget
