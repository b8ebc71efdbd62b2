"""Deterministic node featurization for text-attributed graph nodes.

Each node maps to a fixed-length vector: operator counts, expression depth,
support size, a one-hot cell kind, hashed truth-table signature buckets
(computed positionally so bijective input renaming keeps the signature), and
node-kind flags.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

import numpy as np

from netreason.core.boolexpr import truth_table
from netreason.core.taggraph import GATE, PI, PO, REG, TAGNode, TAGraph

CELL_KINDS = (
    "INV", "BUF", "AND", "NAND", "OR", "NOR", "XOR", "XNOR",
    "AOI", "OAI", "MUX", "DFF", "OTHER",
)
NODE_KINDS = (PI, GATE, REG, PO)

_TRAILING_DIGITS = re.compile(r"\d+$")


@dataclass(frozen=True)
class FeatureConfig:
    sig_buckets: int = 16
    max_sig_support: int = 6

    @property
    def length(self) -> int:
        # 4 op counts + depth + support + cell kinds + sig buckets + node kinds
        return 4 + 2 + len(CELL_KINDS) + self.sig_buckets + len(NODE_KINDS)


def cell_kind(cell_type: str | None) -> str:
    if cell_type is None:
        return "OTHER"
    base = _TRAILING_DIGITS.sub("", cell_type.upper())
    return base if base in CELL_KINDS else "OTHER"


def _signature_bucket(node: TAGNode, cfg: FeatureConfig) -> int | None:
    support = node.expr.support_in_order()
    if len(support) > cfg.max_sig_support:
        return None
    tt = truth_table(node.expr, order=support)
    digest = hashlib.blake2b(tt.encode("ascii"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % cfg.sig_buckets


def featurize(node: TAGNode, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:
    vec = np.zeros(cfg.length, dtype=np.float64)
    counts = node.expr.op_counts()
    vec[0:4] = [counts["NOT"], counts["AND"], counts["OR"], counts["XOR"]]
    vec[4] = node.expr.depth()
    vec[5] = len(node.expr.support())
    base = 6
    vec[base + CELL_KINDS.index(cell_kind(node.cell_type))] = 1.0 if node.kind in (GATE, REG) else 0.0
    base += len(CELL_KINDS)
    if node.kind == GATE:
        bucket = _signature_bucket(node, cfg)
        if bucket is not None:
            vec[base + bucket] = 1.0
    base += cfg.sig_buckets
    vec[base + NODE_KINDS.index(node.kind)] = 1.0
    return vec


def featurize_graph(g: TAGraph, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Stacked node features in node-id order, shape [n_nodes, cfg.length]."""
    return np.stack([featurize(nd, cfg) for nd in g.nodes]) if g.nodes else np.zeros((0, cfg.length))
