"""Shared helpers for the test suite."""

import random

from tablekit.grammar import VOCAB, cell_tokens


def random_table_ids(rng: random.Random, max_rows: int = 5, max_cols: int = 5) -> list[int]:
    """Random grammar-valid table token sequence (no framing)."""
    ids: list[int] = []
    use_thead = rng.random() < 0.3
    use_tbody = rng.random() < 0.3
    rows = rng.randint(1, max_rows)
    head_rows = rng.randint(1, max(1, rows // 2)) if use_thead else 0

    def emit_row():
        ids.append(VOCAB.id("<tr>"))
        for _ in range(rng.randint(1, max_cols)):
            roll = rng.random()
            if roll < 0.15:
                ids.extend(cell_tokens(rowspan=rng.randint(2, 10)))
            elif roll < 0.3:
                ids.extend(cell_tokens(colspan=rng.randint(2, 10)))
            elif roll < 0.35:
                ids.extend(cell_tokens(rowspan=rng.randint(2, 10), colspan=rng.randint(2, 10)))
            else:
                ids.extend(cell_tokens())
        ids.append(VOCAB.id("</tr>"))

    if use_thead:
        ids.append(VOCAB.id("<thead>"))
        for _ in range(head_rows):
            emit_row()
        ids.append(VOCAB.id("</thead>"))
    body_rows = rows - head_rows
    if use_tbody:
        ids.append(VOCAB.id("<tbody>"))
        for _ in range(body_rows):
            emit_row()
        ids.append(VOCAB.id("</tbody>"))
    else:
        for _ in range(body_rows):
            emit_row()
    return ids
