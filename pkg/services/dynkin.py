"""Standard Dynkin diagrams and their Cartan matrices.

Nodes follow Bourbaki numbering, zero-based in arrays. Cartan entries are
a_ij = 2(α_i, α_j) / (α_i, α_i), so a short root's row carries the -2 or -3.
"""

import re

import numpy as np

from services.exceptions import MalformedInputError

_LABEL = re.compile(r"^\s*([A-Ga-g])_?(\d+)\s*$")

# classification tries candidates in this order
TYPE_ORDER = ("A", "D", "E", "F", "G", "C", "B")


def parse_label(label: str) -> tuple[str, int]:
    """Split "A4" / "E_6" into ("A", 4), validating that the type exists."""
    match = _LABEL.match(label)
    if not match:
        raise MalformedInputError(f"Unknown diagram label: {label!r}")
    kind, n = match.group(1).upper(), int(match.group(2))
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": 6 <= n <= 8,
        "F": n == 4,
        "G": n == 2,
    }[kind]
    if not valid:
        raise MalformedInputError(f"No Dynkin diagram of type {kind}{n}")
    return kind, n


def label(kind: str, n: int) -> str:
    return f"{kind}{n}"


def edges(diagram: str) -> list[tuple[int, int]]:
    """Undirected edges of the underlying graph."""
    kind, n = parse_label(diagram)
    chain = [(i, i + 1) for i in range(n - 1)]
    if kind in {"A", "B", "C", "F", "G"}:
        return chain
    if kind == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E_n: 1-3-4-5-...-n with 2 attached to 4
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


def adjacency_matrix(diagram: str) -> np.ndarray:
    kind, n = parse_label(diagram)
    adjacency = np.zeros((n, n), dtype=np.uint8)
    for i, j in edges(diagram):
        adjacency[i, j] = adjacency[j, i] = 1
    return adjacency


def cartan_matrix(diagram: str) -> np.ndarray:
    """Cartan matrix of a connected finite-type diagram."""
    kind, n = parse_label(diagram)
    C = 2 * np.eye(n, dtype=np.int64)
    for i, j in edges(diagram):
        C[i, j] = C[j, i] = -1
    if kind == "B":
        C[n - 1, n - 2] = -2
    elif kind == "C":
        C[n - 2, n - 1] = -2
    elif kind == "F":
        C[2, 1] = -2
    elif kind == "G":
        C[0, 1] = -3
    return C


def positive_root_count(diagram: str) -> int:
    kind, n = parse_label(diagram)
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[kind]


def candidates(size: int) -> list[str]:
    """Every connected finite type of the given rank, in classification order."""
    result = []
    for kind in TYPE_ORDER:
        try:
            parse_label(label(kind, size))
        except MalformedInputError:
            continue
        result.append(label(kind, size))
    return result
