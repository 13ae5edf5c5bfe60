"""Text interchange for draw matrices and experiment datasets.

Both formats are plain comma-separated text. Draw files carry a fixed
``chain,iter`` prefix followed by one column per parameter; dataset files
carry one outcome column and one 0/1 treatment column. Numbers are
written with 17 significant digits, which is lossless for 64-bit floats,
so write-then-read reproduces values bit-exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

from .draws import Draws, validate
from .errors import MissingColumn, NonBinaryTreatment, ParseError
from .regress import Dataset

# Strict decimal grammar: optional sign, digits with optional fraction or
# bare fraction, optional exponent. Deliberately excludes nan/inf text,
# underscores, and surrounding whitespace that float() would coerce.
_FLOAT_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_INT_RE = re.compile(r"^\d+$")


def _format_value(x: float) -> str:
    return format(x, ".17g")


def _parse_float(token: str, line: int, column: str) -> float:
    if not _FLOAT_RE.match(token):
        raise ParseError(f"line {line}, column {column}: not a decimal number: {token!r}")
    return float(token)


def _parse_index(token: str, line: int, column: str) -> int:
    if not _INT_RE.match(token) or int(token) < 1:
        raise ParseError(f"line {line}, column {column}: expected a positive integer, got {token!r}")
    return int(token)


def _read_rows(path: str | Path, expected_fields: int) -> list[tuple[int, list[str]]]:
    text = Path(path).read_text(encoding="utf-8")
    rows = []
    for lineno, line in enumerate(text.splitlines()[1:], start=2):
        parts = line.split(",")
        if len(parts) != expected_fields:
            raise ParseError(
                f"line {lineno}: expected {expected_fields} fields, found {len(parts)}"
            )
        rows.append((lineno, parts))
    return rows


def _header(path: str | Path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file")
    return lines[0].split(",")


def write_draws(d: Draws, path: str | Path) -> None:
    """Write a draws file: header ``chain,iter,<params>``, chain-major rows."""
    names = d.parameter_names
    lines = ["chain,iter," + ",".join(names)]
    for c in range(d.chains):
        for i in range(d.iterations_per_chain):
            cells = [str(c + 1), str(i + 1)]
            cells += [_format_value(x) for x in d.values[:, c, i]]
            lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_draws(path: str | Path) -> Draws:
    """Parse a draws file and validate it into :class:`Draws`.

    Grammar errors (bad header, non-numeric cells, non-contiguous
    iteration numbers, repeated chain blocks) raise :class:`ParseError`
    with the offending line; structural violations (ragged chains,
    non-finite values, duplicate parameters) propagate from draw
    validation.
    """
    header = _header(path)
    if len(header) < 3:
        raise ParseError(f"header must be chain,iter,<param,...>, got {header!r}")
    if header[0] != "chain" or header[1] != "iter":
        raise ParseError(f"header must start with 'chain,iter', got {header[0]!r},{header[1]!r}")
    names = header[2:]

    rows = _read_rows(path, len(header))
    if not rows:
        raise ParseError("no draw rows after the header")

    chains: dict[int, list[list[float]]] = {}
    current: int | None = None
    for lineno, parts in rows:
        chain = _parse_index(parts[0], lineno, "chain")
        iteration = _parse_index(parts[1], lineno, "iter")
        if chain != current:
            if chain in chains:
                raise ParseError(f"line {lineno}: chain {chain} rows are not contiguous")
            chains[chain] = []
            current = chain
        expected = len(chains[chain]) + 1
        if iteration != expected:
            raise ParseError(
                f"line {lineno}: chain {chain}: expected iter {expected}, found {iteration}"
            )
        chains[chain].append(
            [_parse_float(tok, lineno, name) for tok, name in zip(parts[2:], names)]
        )

    per_param = []
    for p, name in enumerate(names):
        per_param.append((name, [[row[p] for row in block] for block in chains.values()]))
    return validate(per_param)


def write_dataset(
    data: Dataset,
    path: str | Path,
    outcome_column: str = "outcome",
    treatment_column: str = "treatment",
) -> None:
    """Write a dataset file: one header row, one row per unit."""
    lines = [f"{outcome_column},{treatment_column}"]
    for y, d in zip(data.outcome, data.treatment):
        lines.append(f"{_format_value(y)},{d}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_dataset(
    path: str | Path, outcome_column: str = "outcome", treatment_column: str = "treatment"
) -> Dataset:
    """Parse a dataset file, enforcing the binary-treatment contract.

    Raises
    ------
    MissingColumn
        Either named column is absent from the header.
    ParseError
        A cell does not parse as a decimal number.
    NonBinaryTreatment
        A treatment cell parses to something other than 0 or 1.
    """
    header = _header(path)
    for column in (outcome_column, treatment_column):
        if header.count(column) == 0:
            raise MissingColumn(column)
        if header.count(column) > 1:
            raise ParseError(f"column {column!r} appears more than once in the header")
    y_idx = header.index(outcome_column)
    d_idx = header.index(treatment_column)

    outcomes: list[float] = []
    treatments: list[int] = []
    for lineno, parts in _read_rows(path, len(header)):
        outcomes.append(_parse_float(parts[y_idx], lineno, outcome_column))
        value = _parse_float(parts[d_idx], lineno, treatment_column)
        if value not in (0.0, 1.0):
            raise NonBinaryTreatment(
                f"line {lineno}: treatment must be 0 or 1, got {parts[d_idx]!r}"
            )
        treatments.append(int(value))
    return Dataset(outcome=outcomes, treatment=treatments)
