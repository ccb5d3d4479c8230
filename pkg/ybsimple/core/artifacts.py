"""Solution and brace files.

Both formats are JSON objects with a fixed key order and one table row per
line, so identical objects always serialize to identical bytes.
"""
import json
import logging
from pathlib import Path

import numpy as np

from .brace import DEFAULT_MAX_BRACE_SIZE, FiniteBrace, make_brace
from .errors import DescriptorError
from .ybcore import Solution, make_solution

logger = logging.getLogger('YBSimple')


def _rows(table) -> str:
    return ',\n'.join('    ' + json.dumps([int(v) for v in row]) for row in np.asarray(table))


def dump_solution(S: Solution) -> str:
    return (
        '{\n'
        '  "kind": "solution",\n'
        f'  "size": {S.size},\n'
        f'  "labels": {json.dumps(S.labels, ensure_ascii=False)},\n'
        '  "sigma": [\n'
        f'{_rows(S.sigma)}\n'
        '  ]\n'
        '}\n'
    )


def dump_brace(B: FiniteBrace) -> str:
    return (
        '{\n'
        '  "kind": "brace",\n'
        f'  "size": {B.size},\n'
        '  "add": [\n'
        f'{_rows(B.add)}\n'
        '  ],\n'
        '  "mul": [\n'
        f'{_rows(B.mul)}\n'
        '  ],\n'
        f'  "labels": {json.dumps(B.labels, ensure_ascii=False)}\n'
        '}\n'
    )


def _write(text: str, path):
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as e:
        raise DescriptorError(f"cannot write {path}: {e}")
    logger.debug(f"wrote {path}")


def save_solution(S: Solution, path):
    _write(dump_solution(S), path)


def save_brace(B: FiniteBrace, path):
    _write(dump_brace(B), path)


def _read(path, kind: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise DescriptorError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise DescriptorError(f"{path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise DescriptorError(f"{path}: top level must be an object")
    if data.get('kind') != kind:
        raise DescriptorError(f"{path}: expected kind {kind!r}, found {data.get('kind')!r}")
    return data


def _table(data: dict, key: str, size: int, path) -> np.ndarray:
    try:
        table = np.array(data[key], dtype=np.int64)
    except KeyError:
        raise DescriptorError(f"{path}: missing {key!r}")
    except (TypeError, ValueError):
        raise DescriptorError(f"{path}: {key!r} is not an integer table")
    if table.shape != (size, size):
        raise DescriptorError(f"{path}: {key!r} has shape {table.shape}, expected ({size}, {size})")
    return table


def _size_and_labels(data: dict, path) -> tuple[int, list[str] | None]:
    size = data.get('size')
    if not isinstance(size, int) or size < 1:
        raise DescriptorError(f"{path}: 'size' must be a positive integer")
    labels = data.get('labels')
    if labels is not None and (not isinstance(labels, list) or len(labels) != size):
        raise DescriptorError(f"{path}: 'labels' must list {size} entries")
    return size, labels


def kind_of(path) -> str:
    """``solution`` or ``brace``, read from the file's ``kind`` field."""
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise DescriptorError(f"cannot read {path}: {e}")
    kind = data.get('kind') if isinstance(data, dict) else None
    if kind not in ('solution', 'brace'):
        raise DescriptorError(f"{path}: unknown kind {kind!r}")
    return kind


def load_solution(path) -> Solution:
    """Read and validate a solution file.

    Raises:
        DescriptorError: the file is missing or malformed.
        SolutionError: the table is not an involutive non-degenerate solution.
    """
    data = _read(path, 'solution')
    size, labels = _size_and_labels(data, path)
    sigma = _table(data, 'sigma', size, path)
    if ((sigma < 0) | (sigma >= size)).any():
        raise DescriptorError(f"{path}: 'sigma' entries must lie in 0..{size - 1}")
    return make_solution(sigma, labels)


def load_brace(path, max_size: int = DEFAULT_MAX_BRACE_SIZE) -> FiniteBrace:
    data = _read(path, 'brace')
    size, labels = _size_and_labels(data, path)
    add = _table(data, 'add', size, path)
    mul = _table(data, 'mul', size, path)
    for table in (add, mul):
        if ((table < 0) | (table >= size)).any():
            raise DescriptorError(f"{path}: table entries must lie in 0..{size - 1}")
    return make_brace(add, mul, labels, max_size)
