"""Text formats: QMX v1 matrices and weighted pure-state ensembles.

QMX v1::

    qmx 1
    dims <dA> <dB>
    <re>,<im> <re>,<im> ...   (dA*dB entries per line, dA*dB lines)

Entries are decimal with optional exponent notation; writers emit 17
significant digits so doubles round-trip exactly.

Ensemble files::

    dims <d1> <d2> ... <dm>
    <weight> | <re>,<im> <re>,<im> ...   (prod(dims) amplitudes per member)

Blank lines and lines starting with '#' are ignored in both formats.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

from .errors import ParseError
from .states import DensityMatrix, Dims, Ensemble, PureState, as_dims


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_complex(token: str, lineno: int, column: int) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected '<re>,<im>', got {token!r}", lineno, column)
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ParseError(f"bad numeric literal in {token!r}", lineno, column) from None


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, raw, line


def _token_column(raw_line: str, tokens: list[str], index: int) -> int:
    # 1-based column of the index-th whitespace token in the raw line
    pos = 0
    for k, tok in enumerate(tokens):
        pos = raw_line.find(tok, pos)
        if k == index:
            return pos + 1
        pos += len(tok)
    return 1


def write_qmx(path, rho: DensityMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(qmx_dumps(rho))


def qmx_dumps(rho: DensityMatrix) -> str:
    da, db = rho.dims.as_tuple()
    lines = ["qmx 1", f"dims {da} {db}"]
    for row in rho.matrix:
        lines.append(" ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def read_qmx(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return qmx_loads(fh.read())


def qmx_loads(text: str) -> DensityMatrix:
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty file, expected 'qmx 1' header", 1)
    lineno, raw, line = lines[0]
    if line.split() != ["qmx", "1"]:
        raise ParseError(f"expected 'qmx 1' header, got {line!r}", lineno)
    if len(lines) < 2:
        raise ParseError("missing 'dims <dA> <dB>' line", lineno + 1)
    lineno, raw, line = lines[1]
    tokens = line.split()
    if len(tokens) != 3 or tokens[0] != "dims":
        raise ParseError(f"expected 'dims <dA> <dB>', got {line!r}", lineno)
    try:
        dims = Dims(int(tokens[1]), int(tokens[2]))
    except ValueError:
        raise ParseError(f"dimensions must be integers, got {line!r}", lineno) from None
    n = dims.total
    body = lines[2:]
    if len(body) != n:
        where = body[-1][0] if body else lineno
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", where)
    mat = np.zeros((n, n), dtype=complex)
    for i, (lineno, raw, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries in row {i + 1}, found {len(tokens)}", lineno)
        for j, tok in enumerate(tokens):
            mat[i, j] = _parse_complex(tok, lineno, _token_column(raw, tokens, j))
    return DensityMatrix(mat, dims)


@dataclasses.dataclass(frozen=True)
class EnsembleFile:
    """Parsed ensemble file: weights, raw amplitude vectors, subsystem dims."""

    weights: tuple[float, ...]
    vectors: tuple[np.ndarray, ...]
    dims: tuple[int, ...]

    def to_ensemble(self) -> Ensemble:
        if len(self.dims) != 2:
            raise ParseError(f"need exactly 2 subsystems to build an Ensemble, file has {len(self.dims)}", 1)
        dims = as_dims(self.dims)
        members = [(w, PureState(v, dims)) for w, v in zip(self.weights, self.vectors)]
        return Ensemble(tuple(members), dims)


def write_ensemble(path, weights: Sequence[float], vectors: Sequence[np.ndarray], dims: Sequence[int]) -> None:
    lines = ["dims " + " ".join(str(int(d)) for d in dims)]
    for w, v in zip(weights, vectors):
        amps = " ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in np.asarray(v, dtype=complex))
        lines.append(f"{_fmt(w)} | {amps}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_ensemble(path) -> EnsembleFile:
    with open(path, "r", encoding="utf-8") as fh:
        return ensemble_loads(fh.read())


def ensemble_loads(text: str) -> EnsembleFile:
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty file, expected 'dims ...' header", 1)
    lineno, raw, line = lines[0]
    tokens = line.split()
    if len(tokens) < 3 or tokens[0] != "dims":
        raise ParseError(f"expected 'dims <d1> <d2> ...', got {line!r}", lineno)
    try:
        dims = tuple(int(t) for t in tokens[1:])
    except ValueError:
        raise ParseError(f"dimensions must be integers, got {line!r}", lineno) from None
    if any(d < 1 for d in dims):
        raise ParseError(f"dimensions must be positive, got {dims}", lineno)
    total = math.prod(dims)
    weights, vectors = [], []
    for lineno, raw, line in lines[1:]:
        head, sep, tail = line.partition("|")
        if not sep:
            raise ParseError("expected '<weight> | <amplitudes>'", lineno)
        try:
            w = float(head.strip())
        except ValueError:
            raise ParseError(f"bad weight {head.strip()!r}", lineno) from None
        tokens = tail.split()
        if len(tokens) != total:
            raise ParseError(f"expected {total} amplitudes, found {len(tokens)}", lineno)
        vec = np.array(
            [_parse_complex(tok, lineno, _token_column(raw, tokens, j)) for j, tok in enumerate(tokens)]
        )
        weights.append(w)
        vectors.append(vec)
    if not weights:
        raise ParseError("ensemble file has no members", lineno if lines else 1)
    return EnsembleFile(tuple(weights), tuple(vectors), dims)
