"""Canonical storage of posterior draws, organized by chain and iteration.

All downstream summaries consume this representation. Draws are validated
once at construction and are immutable afterwards, so they can be shared
freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DuplicateParameter,
    InvalidDraws,
    NonFiniteValue,
    RaggedChains,
    UnknownParameter,
)


@dataclass(frozen=True, eq=False)
class Draws:
    """Post-warmup posterior draws for a set of parameters.

    ``values`` has shape ``(parameters, chains, iterations)``. Iteration
    order within a chain is preserved (required by autocorrelation-based
    diagnostics) and the array is read-only once constructed.
    """

    parameter_names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.ndim != 3 or self.values.shape[0] != len(self.parameter_names):
            raise InvalidDraws("values must have shape (parameters, chains, iterations)")
        self.values.setflags(write=False)

    @property
    def chains(self) -> int:
        return self.values.shape[1]

    @property
    def iterations_per_chain(self) -> int:
        return self.values.shape[2]


@dataclass(frozen=True, eq=False)
class ParameterView:
    """One parameter's draws, both chain-separated and pooled.

    ``pooled`` is the concatenation of the per-chain series in
    (chain-major, iteration-minor) order, so its length is always
    ``chains * iterations_per_chain``.
    """

    name: str
    per_chain: np.ndarray
    pooled: np.ndarray


RawDraws = Mapping[str, object] | Iterable[tuple[str, object]]


def validate(raw: RawDraws) -> Draws:
    """Build :class:`Draws` from a candidate draw matrix, or reject it.

    ``raw`` maps parameter names to their per-chain series: either a
    2-d layout ``(chains, iterations)`` or a single 1-d chain. Every
    chain must have the same length across all parameters, every value
    must be finite, and names must be unique and non-empty.

    Raises
    ------
    NonFiniteValue
        Any NaN or infinity in the values.
    RaggedChains
        Chains of unequal length, or chain/iteration counts that differ
        between parameters.
    DuplicateParameter
        A repeated parameter name.
    InvalidDraws
        Structural problems: no parameters, empty names, fewer than two
        iterations per chain.
    """
    items = list(raw.items()) if isinstance(raw, Mapping) else [(n, v) for n, v in raw]
    if not items:
        raise InvalidDraws("at least one parameter is required")

    names: list[str] = []
    blocks: list[np.ndarray] = []
    for name, series in items:
        if not isinstance(name, str) or not name:
            raise InvalidDraws(f"parameter name must be a non-empty string, got {name!r}")
        if name in names:
            raise DuplicateParameter(name)
        names.append(name)
        try:
            block = np.asarray(series, dtype=float)
        except (TypeError, ValueError) as exc:
            probe = np.asarray(series, dtype=object)
            if probe.ndim == 1 and probe.size and hasattr(probe[0], "__len__"):
                raise RaggedChains(f"parameter {name!r}: chains have unequal lengths") from exc
            raise InvalidDraws(f"parameter {name!r}: {exc}") from exc
        if block.ndim == 1:
            block = block.reshape(1, -1)
        if block.ndim != 2:
            raise InvalidDraws(f"parameter {name!r}: expected a (chains, iterations) layout")
        blocks.append(block)

    shape = blocks[0].shape
    for name, block in zip(names, blocks):
        if block.shape != shape:
            raise RaggedChains(
                f"parameter {name!r} has layout {block.shape}, expected {shape}"
            )
    if shape[0] < 1 or shape[1] < 2:
        raise InvalidDraws(
            f"need at least 1 chain and 2 iterations per chain, got {shape}"
        )

    values = np.stack(blocks, axis=0)
    if not np.isfinite(values).all():
        bad = np.argwhere(~np.isfinite(values))[0]
        raise NonFiniteValue(
            f"parameter {names[bad[0]]!r}, chain {bad[1] + 1}, iteration {bad[2] + 1}"
        )
    return Draws(parameter_names=tuple(names), values=values)


def view(d: Draws, name: str) -> ParameterView:
    """Return the chain-separated and pooled series for one parameter.

    Raises :class:`UnknownParameter` if ``name`` is not in ``d``.
    """
    try:
        idx = d.parameter_names.index(name)
    except ValueError:
        raise UnknownParameter(name) from None
    per_chain = d.values[idx]
    return ParameterView(name=name, per_chain=per_chain, pooled=per_chain.reshape(-1))
