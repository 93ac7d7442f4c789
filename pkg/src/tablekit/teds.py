"""Tree edit distance and the TEDS similarity score for table structures.

TEDS(pred, gt) = 1 - dist(T_pred, T_gt) / max(|T_pred|, |T_gt|), clamped at
zero, where dist is the ordered-tree edit distance under unit insert/delete
costs and a 0/1 relabel cost on the (label, rowspan, colspan) triple, and
|T| counts nodes including the synthetic table root.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import EmptyCorpus, InvalidGroundTruth, MalformedStructure
from .grammar import COMPLEX, SIMPLE, TableNode, classify, parse_tree


def _annotate(root: TableNode) -> tuple[list[tuple], list[int]]:
    """Postorder identity labels and leftmost-leaf-descendant indices."""
    labels: list[tuple] = []
    lmld: list[int] = []

    def visit(node: TableNode) -> int:
        first_lm = None
        for child in node.children:
            ci = visit(child)
            if first_lm is None:
                first_lm = lmld[ci]
        idx = len(labels)
        labels.append(node.identity())
        lmld.append(idx if first_lm is None else first_lm)
        return idx

    visit(root)
    return labels, lmld


def _keyroots(lmld: np.ndarray) -> list[int]:
    last: dict[int, int] = {}
    for i, lm in enumerate(lmld.tolist()):
        last[lm] = i
    return sorted(last.values())


def tree_edit_distance(a: TableNode, b: TableNode) -> int:
    """Minimum-cost edit script between two ordered labeled trees.

    Zhang-Shasha keyroot decomposition. Inner forest-distance rows are
    vectorized: with unit insert cost the recurrence
    fd[x][y] = min(cand[y], fd[x][y-1] + 1) unrolls to the prefix scan
    fd[x][y] = min_{k<=y}(cand[k] - k) + y, one numpy.minimum.accumulate
    per row. Relabel costs 1 iff the (label, rowspan, colspan) identity
    triples differ.
    """
    labels_a, lmld_a = _annotate(a)
    labels_b, lmld_b = _annotate(b)
    interned: dict[tuple, int] = {}
    la = np.array([interned.setdefault(t, len(interned)) for t in labels_a], dtype=np.int64)
    lb = np.array([interned.setdefault(t, len(interned)) for t in labels_b], dtype=np.int64)
    al = np.array(lmld_a, dtype=np.int64)
    bl = np.array(lmld_b, dtype=np.int64)
    na, nb = len(la), len(lb)

    td = np.zeros((na, nb), dtype=np.int64)

    for i in _keyroots(al):
        m = int(i - al[i] + 2)
        ioff = int(al[i] - 1)
        a_sub = np.arange(1, m) + ioff  # postorder indices of A's subforest
        a_anchor = al[a_sub] == al[i]  # prefix forms a whole subtree of the keyroot
        p_rows = al[a_sub] - 1 - ioff  # forest-prefix row holding the left siblings
        for j in _keyroots(bl):
            n = int(j - bl[j] + 2)
            joff = int(bl[j] - 1)
            b_sub = np.arange(1, n) + joff
            b_anchor = bl[b_sub] == bl[j]
            q_cols = bl[b_sub] - 1 - joff
            b_labels = lb[b_sub]

            fd = np.empty((m, n), dtype=np.int64)
            fd[0] = np.arange(n)  # pure inserts
            offsets = np.arange(n, dtype=np.int64)
            cand = np.empty(n, dtype=np.int64)
            for x in range(1, m):
                ax = int(a_sub[x - 1])
                cand[0] = x  # pure deletes
                delete = fd[x - 1, 1:] + 1
                subtree = fd[p_rows[x - 1], q_cols] + td[ax, b_sub]
                if a_anchor[x - 1]:
                    diag = fd[x - 1, :-1] + (la[ax] != b_labels)
                    sub = np.where(b_anchor, diag, subtree)
                else:
                    sub = subtree
                np.minimum(delete, sub, out=cand[1:])
                row = np.minimum.accumulate(cand - offsets) + offsets
                fd[x] = row
                if a_anchor[x - 1]:
                    td[ax, b_sub[b_anchor]] = row[1:][b_anchor]
    return int(td[na - 1, nb - 1])


def teds(pred: Sequence[int], gt: Sequence[int]) -> float:
    """TEDS score in [0, 1] between predicted and ground-truth token ids.

    A malformed prediction scores 0; a malformed ground truth raises
    InvalidGroundTruth.
    """
    try:
        gt_tree = parse_tree(gt)
    except MalformedStructure as exc:
        raise InvalidGroundTruth(str(exc)) from exc
    try:
        pred_tree = parse_tree(pred)
    except MalformedStructure:
        return 0.0
    dist = tree_edit_distance(pred_tree, gt_tree)
    return max(0.0, 1.0 - dist / max(pred_tree.size(), gt_tree.size()))


@dataclass
class TedsSample:
    sample_id: str
    score: float
    table_class: str  # Simple or Complex, classified from the ground truth


@dataclass
class TedsReport:
    """Per-sample scores plus Simple/Complex/All means in percent."""

    samples: list[TedsSample]
    mean_simple: Optional[float]
    mean_complex: Optional[float]
    mean_all: float

    def to_dict(self) -> dict:
        return {
            "mean_simple": self.mean_simple,
            "mean_complex": self.mean_complex,
            "mean_all": self.mean_all,
            "samples": [
                {"id": s.sample_id, "score": s.score, "class": s.table_class}
                for s in self.samples
            ],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def format_table(self) -> str:
        """Aligned Simple / Complex / All text table."""
        cells = [
            "-" if v is None else f"{v:.2f}"
            for v in (self.mean_simple, self.mean_complex, self.mean_all)
        ]
        header = f"{'Simple':>8}  {'Complex':>8}  {'All':>8}"
        values = f"{cells[0]:>8}  {cells[1]:>8}  {cells[2]:>8}"
        return header + "\n" + values


def _percent(scores: list[float]) -> Optional[float]:
    if not scores:
        return None
    return round(100.0 * sum(scores) / len(scores), 2)


def evaluate_corpus(
    pairs: Sequence[tuple[Sequence[int], Sequence[int]]],
    ids: Optional[Sequence[str]] = None,
) -> TedsReport:
    """Score (pred, gt) pairs and aggregate by ground-truth table class.

    mean_all averages over every sample, not over the two class means.
    Samples are sorted by id before aggregation so the report is independent
    of evaluation order.
    """
    if not pairs:
        raise EmptyCorpus("no samples to evaluate")
    if ids is None:
        ids = [f"{i:06d}" for i in range(len(pairs))]
    samples = []
    for sample_id, (pred, gt) in zip(ids, pairs):
        try:
            gt_tree = parse_tree(gt)
        except MalformedStructure as exc:
            raise InvalidGroundTruth(f"sample {sample_id}: {exc}") from exc
        samples.append(TedsSample(str(sample_id), teds(pred, gt), classify(gt_tree)))
    samples.sort(key=lambda s: s.sample_id)
    simple = [s.score for s in samples if s.table_class == SIMPLE]
    complex_ = [s.score for s in samples if s.table_class == COMPLEX]
    return TedsReport(
        samples=samples,
        mean_simple=_percent(simple),
        mean_complex=_percent(complex_),
        mean_all=_percent([s.score for s in samples]),
    )
