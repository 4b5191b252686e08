"""Reference table of path-count classes for string lengths 1..5.

The translation classes with nonzero counts at these lengths are the pure
point classes m*delta (m = 1..5), the adjacent pair delta+delta^e, and the
weighted pairs 2delta+delta^(+-e). Counts per class:

    k=1  delta: 1
    k=2  2delta: 1
    k=3  delta: 6d                3delta: 1
    k=4  2delta: 8d               4delta: 1    delta+delta^e: 4
    k=5  delta: 60d^2-30d         3delta: 10d  5delta: 1   2delta+delta^(+-e): 5

Classes that only differ by the axis or the orientation of the off-origin
point are distinct canonical classes but share one count; the verification
folds them under coordinate permutations and reflections for display and
checks the multiplicity of each folded group (d axes for delta+delta^e,
2d orientations for 2delta+delta^(+-e)) as well as the absence of anything
unlisted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .lattice import MultiIndex, canonicalize, delta
from .walks import path_counts

MAX_TABLE_POWER = 5


@dataclass(frozen=True)
class ReferenceRow:
    k: int
    label: str
    exemplar: MultiIndex
    count: int
    classes: int


def _unit(d: int, axis: int) -> tuple[int, ...]:
    return tuple(1 if i == axis else 0 for i in range(d))


def reference_rows(d: int) -> list[ReferenceRow]:
    """Expected folded rows for dimension d, lengths 1..5."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    origin = (0,) * d
    e1 = _unit(d, 0)

    def pure(m: int) -> MultiIndex:
        return delta(d, origin, m)

    adjacent = delta(d, origin) + delta(d, e1)
    weighted = delta(d, origin, 2) + delta(d, e1)
    return [
        ReferenceRow(1, "delta", pure(1), 1, 1),
        ReferenceRow(2, "2delta", pure(2), 1, 1),
        ReferenceRow(3, "delta", pure(1), 6 * d, 1),
        ReferenceRow(3, "3delta", pure(3), 1, 1),
        ReferenceRow(4, "2delta", pure(2), 8 * d, 1),
        ReferenceRow(4, "4delta", pure(4), 1, 1),
        ReferenceRow(4, "delta+delta^e", adjacent, 4, d),
        ReferenceRow(5, "delta", pure(1), 60 * d * d - 30 * d, 1),
        ReferenceRow(5, "3delta", pure(3), 10 * d, 1),
        ReferenceRow(5, "5delta", pure(5), 1, 1),
        ReferenceRow(5, "2delta+delta^(+-e)", weighted, 5, 2 * d),
    ]


def fold_key(index: MultiIndex) -> tuple:
    """Orbit key of the translation class under coordinate permutations and
    per-axis reflections: the lexicographically smallest canonical form."""
    if index.is_zero:
        raise ValueError("the zero multi-index has no fold key")
    d = index.d
    best = None
    for perm in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            mapped = MultiIndex.from_map(
                d,
                {
                    tuple(signs[i] * point[perm[i]] for i in range(d)): e
                    for point, e in index.entries
                },
            )
            rep, _ = canonicalize(mapped)
            if best is None or rep.entries < best:
                best = rep.entries
    assert best is not None
    return best


@dataclass
class TableVerification:
    """Outcome of re-enumerating lengths 1..5 against the reference rows."""

    d: int
    match: bool
    rows: list[dict] = field(default_factory=list)
    diffs: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"d": self.d, "match": self.match, "rows": self.rows, "diffs": self.diffs}


def verify_reference_table(d: int, budget: int | None = None) -> TableVerification:
    """Recompute every class for k = 1..5 and compare with the reference.

    Checks each folded group's common count and multiplicity, rejects groups
    with non-uniform counts, and flags any computed class the reference does
    not list (absence is part of the contract).
    """
    expected_by_k: dict[int, dict[tuple, ReferenceRow]] = {}
    for row in reference_rows(d):
        expected_by_k.setdefault(row.k, {})[fold_key(row.exemplar)] = row

    result = TableVerification(d, True)
    for k in range(1, MAX_TABLE_POWER + 1):
        table = path_counts(k, d, budget)
        groups: dict[tuple, dict] = {}
        for index, count in table.counts.items():
            group = groups.setdefault(fold_key(index), {"counts": set(), "classes": 0})
            group["counts"].add(count)
            group["classes"] += 1

        expected = expected_by_k.get(k, {})
        for key, row in expected.items():
            group = groups.pop(key, None)
            if group is None:
                result.diffs.append(f"k={k}: class {row.label} missing")
                result.rows.append(
                    {"k": k, "class": row.label, "count": None, "classes": 0,
                     "expected_count": row.count, "expected_classes": row.classes,
                     "match": False}
                )
                continue
            counts = group["counts"]
            uniform = len(counts) == 1
            count = counts.pop() if uniform else None
            ok = uniform and count == row.count and group["classes"] == row.classes
            result.rows.append(
                {"k": k, "class": row.label, "count": count,
                 "classes": group["classes"], "expected_count": row.count,
                 "expected_classes": row.classes, "match": ok}
            )
            if not ok:
                result.diffs.append(
                    f"k={k}: class {row.label} computed count={count} "
                    f"classes={group['classes']}, expected count={row.count} "
                    f"classes={row.classes}"
                )
        for key, group in groups.items():
            exemplar = MultiIndex(d, key)
            result.diffs.append(
                f"k={k}: unexpected class {exemplar.format()} with counts "
                f"{sorted(group['counts'])} over {group['classes']} classes"
            )

    result.match = not result.diffs
    return result
