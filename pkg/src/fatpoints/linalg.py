"""Exact row reduction over QQ or QQ(w), on sparse rows ``{column: value}``."""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence


def rref(rows: Iterable[dict], columns: Sequence[Hashable]) -> list[dict]:
    """Reduced row echelon form of ``rows``; pivots follow the order of ``columns``.

    Zero rows are dropped, so the length of the result is the rank.
    """
    position = {c: i for i, c in enumerate(columns)}
    pivots: dict[Hashable, dict] = {}
    for row in rows:
        v = {c: x for c, x in row.items() if x}
        # eliminate existing pivot columns, in column order
        for col in sorted((c for c in v if c in pivots), key=position.__getitem__):
            x = v.get(col)
            if not x:
                continue
            for c2, y in pivots[col].items():
                new = v.get(c2, 0) - x * y
                if new:
                    v[c2] = new
                else:
                    v.pop(c2, None)
        if not v:
            continue
        lead = min(v, key=position.__getitem__)
        inv = 1 / v[lead]
        v = {c: x * inv for c, x in v.items()}
        # back-substitute into earlier pivot rows
        for col, prow in pivots.items():
            x = prow.get(lead)
            if x:
                for c2, y in v.items():
                    new = prow.get(c2, 0) - x * y
                    if new:
                        prow[c2] = new
                    else:
                        prow.pop(c2, None)
        pivots[lead] = v
    return [pivots[c] for c in sorted(pivots, key=position.__getitem__)]


def rank(rows: Iterable[dict], columns: Sequence[Hashable]) -> int:
    return len(rref(rows, columns))
