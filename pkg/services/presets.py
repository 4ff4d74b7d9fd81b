"""Named central extensions used throughout the examples.

Each preset is an elementary abelian base (optionally times Z3) with a
bilinear cocycle σ(a, b) = (-1)^(aᵀ B b). Coordinates:

- D4: (v, w); s(vw) has order 4 and s(v), s(w) have order 2.
- D4xZ2: (v, w, z); D4xZ2^2: (v, w, z, w').
- D4cD4: (x, y, x', y'), the central product of two D4.
- Z2sqxD4: (z, z', x, y).
- Z3xD4: (a, v, w) with a of order 3.
"""

import logging
import re
from functools import cache
from pathlib import Path

import numpy as np

from services.exceptions import MalformedInputError
from services.groups import AbelianGroup, CentralExtension, Cocycle2, central_extension

logger = logging.getLogger(__name__)


def _bilinear(factors: tuple[int, ...], entries: list[tuple[int, int]]) -> tuple[AbelianGroup, Cocycle2]:
    group = AbelianGroup(factors)
    B = np.zeros((group.rank, group.rank), dtype=np.int64)
    for row, col in entries:
        B[row, col] = 1
    return group, Cocycle2.bilinear(group, B)


PRESETS: dict[str, tuple[tuple[int, ...], list[tuple[int, int]]]] = {
    "D4": ((2, 2), [(1, 0)]),
    "Q8": ((2, 2), [(0, 0), (1, 0), (1, 1)]),
    "D4xZ2": ((2, 2, 2), [(1, 0)]),
    "D4xZ2^2": ((2, 2, 2, 2), [(1, 0)]),
    "D4cD4": ((2, 2, 2, 2), [(1, 0), (3, 2)]),
    "Z2sqxD4": ((2, 2, 2, 2), [(3, 2)]),
    "Z3xD4": ((3, 2, 2), [(2, 1)]),
}

ALIASES = {"D4*D4": "D4cD4", "Z2^2xD4": "Z2sqxD4", "D4xZ2sq": "D4xZ2^2"}

_ELEMENTARY = re.compile(r"^Z2\^(\d+)$")


@cache
def preset_extension(name: str) -> CentralExtension:
    """Build a named extension; "Z2^n" gives the trivial (split) extension of Z2^n."""
    key = ALIASES.get(name, name)
    match = _ELEMENTARY.match(key)
    if match:
        group = AbelianGroup.elementary(int(match.group(1)))
        return central_extension(group, Cocycle2.trivial(group), key)
    if key not in PRESETS:
        raise MalformedInputError(f"Unknown group preset: {name!r}")
    factors, entries = PRESETS[key]
    group, cocycle = _bilinear(factors, entries)
    return central_extension(group, cocycle, key)


def resolve_extension(spec: str) -> CentralExtension:
    """A preset name or the path of a cocycle text file."""
    key = ALIASES.get(spec, spec)
    if key in PRESETS or _ELEMENTARY.match(key):
        return preset_extension(key)
    path = Path(spec)
    if not path.is_file():
        raise MalformedInputError(f"Unknown group preset or missing cocycle file: {spec!r}")
    logger.info("Loading cocycle file: path=%s", path)
    cocycle = Cocycle2.from_text(path.read_text(encoding="utf-8"))
    return central_extension(cocycle.group, cocycle, path.stem)


def preset_names() -> list[str]:
    return list(PRESETS)
