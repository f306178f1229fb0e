"""Conditional probability tensors for the three-party chain network.

A correlation is a tensor p(a,b,c|x,z) over the chain A -- B -- C in which
the middle party has no input.  Storage order is fixed to (x, z, a, b, c)
with the flat offset ((((x*|Z| + z)*|A| + a)*|B| + b)*|C| + c), which is
plain C-order ravelling; the on-disk format below depends on it.

General cardinalities of x, z, a, b, c are representable.  Bob's input is
trivial throughout (card_y == 1); it is carried only as file metadata.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

FORMAT_NAME = "nncert-corr-v1"

_OUTPUT_AXES = {"a": 2, "b": 3, "c": 4}
_INPUT_AXES = {"x": 0, "z": 1}


class CorrelationError(ValueError):
    """Base class for data-model errors."""


class ShapeError(CorrelationError):
    """Tensor dimensions inconsistent with the declared scenario shape."""


class FormatError(CorrelationError):
    """Malformed nncert-corr-v1 document."""


@dataclass(frozen=True)
class ScenarioShape:
    """Input/output cardinalities of a chain experiment.

    The minimal configuration (and the only one the oracles accept) is
    2-1-2 inputs and 2-2-2 outputs.
    """

    card_x: int = 2
    card_y: int = 1
    card_z: int = 2
    card_a: int = 2
    card_b: int = 2
    card_c: int = 2

    def __post_init__(self):
        for name in ("card_x", "card_y", "card_z", "card_a", "card_b", "card_c"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ShapeError(f"{name} must be an integer >= 1, got {v!r}")
        if self.card_y != 1:
            raise ShapeError("the chain model has no input for the middle party; card_y must be 1")

    @property
    def tensor_shape(self) -> tuple[int, int, int, int, int]:
        return (self.card_x, self.card_z, self.card_a, self.card_b, self.card_c)

    @property
    def is_minimal(self) -> bool:
        return self.tensor_shape == (2, 2, 2, 2, 2)


MINIMAL_SHAPE = ScenarioShape()


@dataclass(frozen=True)
class Correlation:
    """A conditional probability tensor with its validation tolerance.

    Construction only enforces structure (matching dimensions, finite
    entries); probabilistic validity is checked separately by
    :func:`validate` so that structurally sound but invalid documents can
    still be represented and reported on.
    """

    shape: ScenarioShape
    values: np.ndarray
    atol: float = 1e-9

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.shape != self.shape.tensor_shape:
            raise ShapeError(
                f"tensor shape {arr.shape} does not match scenario {self.shape.tensor_shape}")
        if not np.all(np.isfinite(arr)):
            raise CorrelationError("probabilities must be finite")
        if not (isinstance(self.atol, (int, float)) and self.atol >= 0):
            raise CorrelationError("atol must be a nonnegative real")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)


@dataclass(frozen=True)
class ValidationReport:
    is_valid: bool
    max_negativity: float
    max_normalization_error: float
    offending_indices: list


@dataclass(frozen=True)
class S2Report:
    """Verdict on membership in the no-signalling set of the chain.

    Membership requires (i) the A-C marginal to factorize,
    p(a,c|x,z) = p(a|x) p(c|z); (ii) the A-B marginal p(a,b|x,z) to be
    independent of z; (iii) the B-C marginal p(b,c|x,z) to be independent
    of x.  All three within the caller-supplied tolerance.
    """

    in_s2: bool
    max_factorization_violation: float
    max_ns_violation_z: float
    max_ns_violation_x: float


def from_flat(shape: ScenarioShape, flat, atol: float = 1e-9) -> Correlation:
    """Build a Correlation from a flat array in the canonical offset order."""
    arr = np.asarray(flat, dtype=float)
    expected = int(np.prod(shape.tensor_shape))
    if arr.ndim != 1 or arr.size != expected:
        raise ShapeError(f"expected a flat array of length {expected}, got {arr.shape}")
    return Correlation(shape, arr.reshape(shape.tensor_shape), atol)


def uniform(shape: ScenarioShape = MINIMAL_SHAPE, atol: float = 1e-9) -> Correlation:
    n_out = shape.card_a * shape.card_b * shape.card_c
    return Correlation(shape, np.full(shape.tensor_shape, 1.0 / n_out), atol)


def validate(corr: Correlation) -> ValidationReport:
    """Report nonnegativity and per-(x,z) normalization deviations."""
    v = corr.values
    if v.shape != corr.shape.tensor_shape:  # unreachable through the constructor
        raise ShapeError("tensor dimensions do not match the scenario shape")
    neg = np.minimum(v, 0.0)
    max_negativity = float(-neg.min()) if neg.size else 0.0
    sums = v.sum(axis=(2, 3, 4))
    norm_err = np.abs(sums - 1.0)
    max_norm = float(norm_err.max())
    offending: list = [idx for idx in zip(*np.nonzero(v < -corr.atol))]
    offending += [idx for idx in zip(*np.nonzero(norm_err > corr.atol))]
    is_valid = max_negativity <= corr.atol and max_norm <= corr.atol
    return ValidationReport(is_valid, max_negativity, max_norm,
                            [tuple(int(i) for i in idx) for idx in offending])


def marginalize(corr: Correlation, keep: Iterable[str], given: Mapping[str, int] | None = None) -> np.ndarray:
    """Sum out all outputs not in `keep` at the given input assignment.

    Inputs missing from `given` are averaged uniformly, so e.g.
    ``marginalize(p, {"c"}, {"z": 0})`` is the full marginal p(c|z=0).
    The returned tensor carries the kept outputs in (a, b, c) order and
    sums to 1 (for a valid correlation).
    """
    keep = set(keep)
    if not keep <= set(_OUTPUT_AXES):
        raise CorrelationError(f"keep must be a subset of {{'a','b','c'}}, got {keep}")
    given = dict(given or {})
    if not set(given) <= set(_INPUT_AXES):
        raise CorrelationError(f"given must assign inputs from {{'x','z'}}, got {set(given)}")
    cards = {"x": corr.shape.card_x, "z": corr.shape.card_z}
    v = corr.values
    for name in ("z", "x"):  # reduce higher axes first
        axis = _INPUT_AXES[name]
        if name in given:
            val = given[name]
            if not 0 <= val < cards[name]:
                raise CorrelationError(f"input {name}={val} outside cardinality {cards[name]}")
            v = np.take(v, val, axis=axis)
        else:
            v = v.mean(axis=axis)
    drop = tuple(sorted(_OUTPUT_AXES[o] - 2 for o in _OUTPUT_AXES if o not in keep))
    return v.sum(axis=drop) if drop else v


def check_s2(corr: Correlation, tol: float) -> S2Report:
    """Decide no-signalling-set membership (see :class:`S2Report`)."""
    v = corr.values
    pa = v.sum(axis=(3, 4)).mean(axis=1)        # p(a|x), z averaged out
    pc = v.sum(axis=(2, 3)).mean(axis=0)        # p(c|z), x averaged out
    pac = v.sum(axis=3)                         # (x, z, a, c)
    fact = float(np.abs(pac - pa[:, None, :, None] * pc[None, :, None, :]).max())
    pab = v.sum(axis=4)                         # (x, z, a, b)
    ns_z = float((pab.max(axis=1) - pab.min(axis=1)).max())
    pbc = v.sum(axis=2)                         # (x, z, b, c)
    ns_x = float((pbc.max(axis=0) - pbc.min(axis=0)).max())
    in_s2 = fact <= tol and ns_z <= tol and ns_x <= tol
    return S2Report(in_s2, fact, ns_z, ns_x)


def mix(corrs: Sequence[Correlation], weights: Sequence[float]) -> Correlation:
    """Entrywise convex combination of same-shape correlations."""
    if len(corrs) == 0 or len(corrs) != len(weights):
        raise CorrelationError("need one weight per correlation")
    shape = corrs[0].shape
    atol = corrs[0].atol
    if any(c.shape != shape for c in corrs):
        raise ShapeError("mixed correlations must share one scenario shape")
    w = np.asarray(weights, dtype=float)
    if np.any(w < -atol):
        raise CorrelationError("mixture weights must be nonnegative")
    if abs(w.sum() - 1.0) > atol:
        raise CorrelationError(f"mixture weights must sum to 1, got {w.sum()!r}")
    out = np.zeros(shape.tensor_shape)
    for wi, ci in zip(w, corrs):
        out += wi * ci.values
    return Correlation(shape, out, atol)


def mirror(corr: Correlation) -> Correlation:
    """Relabel (a, x, A) <-> (c, z, C): mirror(p)(a,b,c|x,z) = p(c,b,a|z,x)."""
    v = np.transpose(corr.values, (1, 0, 4, 3, 2))
    shape = replace(corr.shape, card_x=corr.shape.card_z, card_z=corr.shape.card_x,
                    card_a=corr.shape.card_c, card_c=corr.shape.card_a)
    return Correlation(shape, np.ascontiguousarray(v), corr.atol)


def serialize(corr: Correlation) -> bytes:
    """Encode as a nncert-corr-v1 JSON document (UTF-8 bytes).

    Floats are written with shortest round-trip decimal representation, so
    serialize -> deserialize reproduces the tensor bit for bit.
    """
    doc = {
        "format": FORMAT_NAME,
        "cardinalities": {
            "x": corr.shape.card_x, "y": corr.shape.card_y, "z": corr.shape.card_z,
            "a": corr.shape.card_a, "b": corr.shape.card_b, "c": corr.shape.card_c,
        },
        "probabilities": [float(p) for p in corr.values.ravel(order="C")],
    }
    return json.dumps(doc).encode("utf-8")


def _reject_constant(name: str):
    raise FormatError(f"non-finite number {name!r} is not allowed")


def deserialize(data: bytes | str, atol: float = 1e-9) -> Correlation:
    """Parse a nncert-corr-v1 document.

    Parsing is purely structural: a document whose probabilities are
    negative or do not sum to 1 is accepted here and flagged by
    :func:`validate`.  Unknown top-level keys, wrong cardinality metadata
    and non-finite numbers are rejected.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top-level value must be an object")
    expected_keys = {"format", "cardinalities", "probabilities"}
    if set(doc) != expected_keys:
        raise FormatError(f"top-level keys must be exactly {sorted(expected_keys)}, "
                          f"got {sorted(doc)}")
    if doc["format"] != FORMAT_NAME:
        raise FormatError(f"unknown format {doc['format']!r}")
    cards = doc["cardinalities"]
    if not isinstance(cards, dict) or set(cards) != {"x", "y", "z", "a", "b", "c"}:
        raise FormatError("cardinalities must carry exactly the keys x, y, z, a, b, c")
    for k, v in cards.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise FormatError(f"cardinality {k!r} must be an integer >= 1, got {v!r}")
    try:
        shape = ScenarioShape(card_x=cards["x"], card_y=cards["y"], card_z=cards["z"],
                              card_a=cards["a"], card_b=cards["b"], card_c=cards["c"])
    except ShapeError as exc:
        raise FormatError(str(exc)) from exc
    probs = doc["probabilities"]
    if not isinstance(probs, list):
        raise FormatError("probabilities must be an array")
    n = int(np.prod(shape.tensor_shape))
    if len(probs) != n:
        raise FormatError(f"expected {n} probabilities for these cardinalities, got {len(probs)}")
    for p in probs:
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not math.isfinite(p):
            raise FormatError(f"probability entries must be finite numbers, got {p!r}")
    return from_flat(shape, np.array(probs, dtype=float), atol)
