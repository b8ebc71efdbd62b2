"""Connector MLP projecting graph embeddings into decoder token space."""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
from torch import nn

from netreason.errors import ShapeMismatch


@dataclass(frozen=True)
class ConnectorConfig:
    dims: tuple[int, ...] = (64, 128, 128)  # d_enc -> hidden -> d_model
    seed: int = 0
    init_scale: float = 0.1

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "seed": self.seed, "init_scale": self.init_scale}


class Connector(nn.Module):
    """Affine chain with tanh between layers (none after the last)."""

    def __init__(self, cfg: ConnectorConfig = ConnectorConfig()):
        super().__init__()
        if len(cfg.dims) < 2:
            raise ValueError("connector needs at least input and output dims")
        self.cfg = cfg
        gen = torch.Generator().manual_seed(cfg.seed)
        self.layers = nn.ModuleList(
            nn.Linear(cfg.dims[i], cfg.dims[i + 1], dtype=torch.float64)
            for i in range(len(cfg.dims) - 1)
        )
        with torch.no_grad():
            for p in self.parameters():
                p.uniform_(-cfg.init_scale, cfg.init_scale, generator=gen)

    def forward(self, n_g: torch.Tensor) -> torch.Tensor:
        if n_g.shape[-1] != self.cfg.dims[0]:
            raise ShapeMismatch(f"graph embedding dim {n_g.shape[-1]} != connector input {self.cfg.dims[0]}")
        h = n_g
        for i, layer in enumerate(self.layers):
            h = layer(h)
            if i < len(self.layers) - 1:
                h = torch.tanh(h)
        return h


def project(n_g: torch.Tensor, connector: Connector) -> torch.Tensor:
    """Single graph token H_g for one pooled embedding N_g."""
    return connector(n_g)
