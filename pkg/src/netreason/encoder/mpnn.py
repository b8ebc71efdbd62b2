"""Message-passing graph encoder producing per-node and pooled embeddings.

Round update: h' = tanh(W [h ; sum_in ; sum_out] + b), where sum_in/sum_out
aggregate predecessor/successor embeddings. The graph embedding is the mean
over all node embeddings. `rounds=0` degenerates to a per-node feature
projection (the "weak" encoder used in ablations).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from netreason.encoder.features import FeatureConfig, featurize_graph
from netreason.core.taggraph import GATE, TAGraph
from netreason.errors import ShapeMismatch


@dataclass(frozen=True)
class EncoderConfig:
    d_enc: int = 64
    rounds: int = 3
    seed: int = 0
    init_scale: float = 0.1
    features: FeatureConfig = field(default_factory=FeatureConfig)

    def to_dict(self) -> dict:
        return {
            "d_enc": self.d_enc,
            "rounds": self.rounds,
            "seed": self.seed,
            "init_scale": self.init_scale,
            "sig_buckets": self.features.sig_buckets,
            "max_sig_support": self.features.max_sig_support,
        }


@dataclass
class GraphBatch:
    """Tensor view of one graph: features plus edge endpoints."""
    feats: torch.Tensor  # [N, F] float64
    src: torch.Tensor  # [E] long
    dst: torch.Tensor  # [E] long
    node_ids: list[int]
    gate_ids: list[int]

    @classmethod
    def from_graph(cls, g: TAGraph, cfg: FeatureConfig) -> "GraphBatch":
        feats = torch.from_numpy(featurize_graph(g, cfg))
        src = torch.tensor([e[0] for e in g.edges], dtype=torch.long)
        dst = torch.tensor([e[1] for e in g.edges], dtype=torch.long)
        gate_ids = [nd.node_id for nd in g.nodes if nd.kind == GATE]
        return cls(feats=feats, src=src, dst=dst,
                   node_ids=[nd.node_id for nd in g.nodes], gate_ids=gate_ids)


class GraphEncoder(nn.Module):
    def __init__(self, cfg: EncoderConfig = EncoderConfig()):
        super().__init__()
        self.cfg = cfg
        gen = torch.Generator().manual_seed(cfg.seed)
        self.input_proj = nn.Linear(cfg.features.length, cfg.d_enc, dtype=torch.float64)
        self.layers = nn.ModuleList(
            nn.Linear(3 * cfg.d_enc, cfg.d_enc, dtype=torch.float64)
            for _ in range(cfg.rounds)
        )
        with torch.no_grad():
            for p in self.parameters():
                p.uniform_(-cfg.init_scale, cfg.init_scale, generator=gen)

    def forward(self, batch: GraphBatch) -> torch.Tensor:
        """Node embeddings [N, d_enc]."""
        if batch.feats.shape[1] != self.input_proj.in_features:
            raise ShapeMismatch(
                f"feature length {batch.feats.shape[1]} != expected {self.input_proj.in_features}"
            )
        h = torch.tanh(self.input_proj(batch.feats))
        n = h.shape[0]
        for layer in self.layers:
            agg_in = torch.zeros_like(h)
            agg_out = torch.zeros_like(h)
            if batch.src.numel():
                agg_in = agg_in.index_add(0, batch.dst, h[batch.src])
                agg_out = agg_out.index_add(0, batch.src, h[batch.dst])
            h = torch.tanh(layer(torch.cat([h, agg_in, agg_out], dim=1)))
        return h

    def graph_embedding(self, batch: GraphBatch) -> torch.Tensor:
        """Mean pooling over all node embeddings."""
        return self.forward(batch).mean(dim=0)


@dataclass(frozen=True)
class EmbeddingSet:
    gate_embeddings: dict[int, np.ndarray]  # gate node id -> vector
    graph_embedding: np.ndarray


def encode(g: TAGraph, encoder: GraphEncoder) -> EmbeddingSet:
    """Inference wrapper; detached numpy vectors for downstream consumers."""
    batch = GraphBatch.from_graph(g, encoder.cfg.features)
    with torch.no_grad():
        h = encoder(batch)
        pooled = h.mean(dim=0)
    return EmbeddingSet(
        gate_embeddings={nid: h[nid].numpy().copy() for nid in batch.gate_ids},
        graph_embedding=pooled.numpy().copy(),
    )


def encoder_grad_check(
    g: TAGraph,
    encoder: GraphEncoder,
    probe: torch.Tensor | None = None,
    step: float = 1e-4,
    max_coords_per_tensor: int | None = None,
    seed: int = 0,
) -> float:
    """Max relative error between autograd and central finite differences.

    The scalar probe is dot(probe, N_g). Checks every coordinate unless
    `max_coords_per_tensor` caps the sample (seeded choice).
    """
    batch = GraphBatch.from_graph(g, encoder.cfg.features)
    if probe is None:
        gen = torch.Generator().manual_seed(seed)
        probe = torch.randn(encoder.cfg.d_enc, generator=gen, dtype=torch.float64)

    def scalar() -> torch.Tensor:
        return torch.dot(probe, encoder.graph_embedding(batch))

    encoder.zero_grad()
    scalar().backward()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for param in encoder.parameters():
        grad = param.grad
        flat = param.data.view(-1)
        gflat = torch.zeros_like(flat) if grad is None else grad.view(-1)
        idxs = range(flat.numel())
        if max_coords_per_tensor is not None and flat.numel() > max_coords_per_tensor:
            idxs = rng.choice(flat.numel(), size=max_coords_per_tensor, replace=False)
        for i in idxs:
            orig = flat[i].item()
            flat[i] = orig + step
            hi = scalar().item()
            flat[i] = orig - step
            lo = scalar().item()
            flat[i] = orig
            fd = (hi - lo) / (2 * step)
            an = gflat[i].item()
            denom = max(abs(fd), abs(an), 1e-8)
            err = abs(fd - an) / denom
            if abs(fd) < 1e-10 and abs(an) < 1e-10:
                err = 0.0
            worst = max(worst, err)
    encoder.zero_grad()
    return worst
