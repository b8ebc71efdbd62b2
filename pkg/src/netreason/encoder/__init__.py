"""Feature extraction and the message-passing netlist encoder."""

from netreason.encoder.features import CELL_KINDS, FeatureConfig, cell_kind, featurize, featurize_graph
from netreason.encoder.mpnn import (
    EmbeddingSet,
    EncoderConfig,
    GraphBatch,
    GraphEncoder,
    encode,
    encoder_grad_check,
)

__all__ = [
    "CELL_KINDS", "FeatureConfig", "cell_kind", "featurize", "featurize_graph",
    "EmbeddingSet", "EncoderConfig", "GraphBatch", "GraphEncoder", "encode", "encoder_grad_check",
]
