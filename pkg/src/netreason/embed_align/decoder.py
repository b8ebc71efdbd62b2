"""Toy byte-level causal transformer decoder.

Small pre-norm transformer over the 260-token byte vocabulary. The forward
pass consumes embedding sequences rather than token ids so that projected
graph tokens (or the learned null slot used by the alignment ablation) can
occupy the graph-slot position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn

from netreason.embed_align.tokenizer import GRAPH, VOCAB_SIZE
from netreason.errors import AllMasked, ContextOverflow, ShapeMismatch


@dataclass(frozen=True)
class DecoderConfig:
    d_model: int = 128
    n_heads: int = 4
    n_layers: int = 2
    d_ff: int = 512
    context: int = 512
    vocab: int = VOCAB_SIZE
    tied_output: bool = False
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "d_model": self.d_model, "n_heads": self.n_heads, "n_layers": self.n_layers,
            "d_ff": self.d_ff, "context": self.context, "vocab": self.vocab,
            "tied_output": self.tied_output, "seed": self.seed,
        }


class _Attention(nn.Module):
    def __init__(self, cfg: DecoderConfig):
        super().__init__()
        if cfg.d_model % cfg.n_heads != 0:
            raise ShapeMismatch(f"d_model {cfg.d_model} not divisible by heads {cfg.n_heads}")
        self.n_heads = cfg.n_heads
        self.d_head = cfg.d_model // cfg.n_heads
        self.qkv = nn.Linear(cfg.d_model, 3 * cfg.d_model, dtype=torch.float64)
        self.out = nn.Linear(cfg.d_model, cfg.d_model, dtype=torch.float64)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        b, t, d = x.shape
        qkv = self.qkv(x).view(b, t, 3, self.n_heads, self.d_head)
        q, k, v = qkv[:, :, 0], qkv[:, :, 1], qkv[:, :, 2]  # [b, t, h, dh]
        q = q.transpose(1, 2)  # [b, h, t, dh]
        k = k.transpose(1, 2)
        v = v.transpose(1, 2)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.d_head)
        mask = torch.triu(torch.ones(t, t, dtype=torch.bool), diagonal=1)
        scores = scores.masked_fill(mask, float("-inf"))
        att = torch.softmax(scores, dim=-1)
        y = att @ v  # [b, h, t, dh]
        y = y.transpose(1, 2).reshape(b, t, d)
        return self.out(y)


class _Block(nn.Module):
    def __init__(self, cfg: DecoderConfig):
        super().__init__()
        self.ln1 = nn.LayerNorm(cfg.d_model, dtype=torch.float64)
        self.attn = _Attention(cfg)
        self.ln2 = nn.LayerNorm(cfg.d_model, dtype=torch.float64)
        self.mlp = nn.Sequential(
            nn.Linear(cfg.d_model, cfg.d_ff, dtype=torch.float64),
            nn.Tanh(),
            nn.Linear(cfg.d_ff, cfg.d_model, dtype=torch.float64),
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        x = x + self.attn(self.ln1(x))
        return x + self.mlp(self.ln2(x))


class ToyDecoder(nn.Module):
    def __init__(self, cfg: DecoderConfig = DecoderConfig()):
        super().__init__()
        self.cfg = cfg
        self.tok_emb = nn.Embedding(cfg.vocab, cfg.d_model, dtype=torch.float64)
        self.pos_emb = nn.Embedding(cfg.context, cfg.d_model, dtype=torch.float64)
        self.null_slot = nn.Parameter(torch.zeros(cfg.d_model, dtype=torch.float64))
        self.blocks = nn.ModuleList(_Block(cfg) for _ in range(cfg.n_layers))
        self.ln_f = nn.LayerNorm(cfg.d_model, dtype=torch.float64)
        if cfg.tied_output:
            self.head = None
        else:
            self.head = nn.Linear(cfg.d_model, cfg.vocab, bias=False, dtype=torch.float64)
        self._init_params(cfg.seed)

    def _init_params(self, seed: int) -> None:
        gen = torch.Generator().manual_seed(seed)
        with torch.no_grad():
            for name, p in self.named_parameters():
                if p.dim() >= 2 or "emb" in name or name == "null_slot":
                    p.normal_(0.0, 0.02, generator=gen)
                elif "ln" in name and name.endswith("weight"):
                    p.fill_(1.0)
                else:
                    p.zero_()
            for block in self.blocks:
                block.ln1.weight.fill_(1.0)
                block.ln2.weight.fill_(1.0)
            self.ln_f.weight.fill_(1.0)

    def embed_tokens(self, token_ids: torch.Tensor, graph_token: torch.Tensor | None) -> torch.Tensor:
        """Token embeddings with GRAPH positions substituted.

        graph_token=None substitutes the learned null slot (ablation arm),
        keeping sequence lengths identical between arms.
        """
        emb = self.tok_emb(token_ids)
        slot = (token_ids == GRAPH)
        if slot.any():
            fill = self.null_slot if graph_token is None else graph_token
            if fill.shape[-1] != self.cfg.d_model:
                raise ShapeMismatch(f"graph token dim {fill.shape[-1]} != d_model {self.cfg.d_model}")
            emb = torch.where(slot.unsqueeze(-1), fill.expand_as(emb), emb)
        return emb

    def forward(self, embeddings: torch.Tensor) -> torch.Tensor:
        """Per-position logits; accepts [T, d] or [B, T, d]."""
        squeeze = embeddings.dim() == 2
        x = embeddings.unsqueeze(0) if squeeze else embeddings
        b, t, d = x.shape
        if d != self.cfg.d_model:
            raise ShapeMismatch(f"embedding dim {d} != d_model {self.cfg.d_model}")
        if t > self.cfg.context:
            raise ContextOverflow(f"sequence length {t} exceeds context {self.cfg.context}")
        pos = torch.arange(t)
        x = x + self.pos_emb(pos).unsqueeze(0)
        for block in self.blocks:
            x = block(x)
        x = self.ln_f(x)
        if self.head is not None:
            logits = self.head(x)
        else:
            logits = x @ self.tok_emb.weight.T
        return logits.squeeze(0) if squeeze else logits


def ar_loss(logits: torch.Tensor, targets: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    """Mean of -log softmax(correct token) over masked positions.

    Positions outside the mask (prompt, graph slot, padding) never touch the
    value. Raises AllMasked when the mask selects nothing.
    """
    flat_logits = logits.reshape(-1, logits.shape[-1])
    flat_targets = targets.reshape(-1)
    flat_mask = mask.reshape(-1).to(torch.bool)
    if not torch.any(flat_mask):
        raise AllMasked("loss mask selects no positions")
    logp = torch.log_softmax(flat_logits[flat_mask], dim=-1)
    picked = logp.gather(1, flat_targets[flat_mask].unsqueeze(1)).squeeze(1)
    return -picked.mean()
