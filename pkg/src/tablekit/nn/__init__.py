"""Numeric substrate: tensors with reverse-mode autodiff, transformer
layers, AdamW, LR schedules, gradient checking, and checkpoint I/O."""

from . import tensor as functional
from .checkpoint import load_checkpoint, params_hash, save_checkpoint
from .gradcheck import GradCheckReport, grad_check
from .layers import (
    DecoderLayer,
    Dropout,
    Embedding,
    EncoderLayer,
    FeedForward,
    LayerConfig,
    LayerNorm,
    Linear,
    Module,
    ModuleList,
    MultiHeadAttention,
    causal_mask,
)
from .optim import AdamW, LrSchedule, cosine_warmup_lr
from .tensor import Tensor, no_grad

__all__ = [
    "AdamW",
    "DecoderLayer",
    "Dropout",
    "Embedding",
    "EncoderLayer",
    "FeedForward",
    "GradCheckReport",
    "LayerConfig",
    "LayerNorm",
    "Linear",
    "LrSchedule",
    "Module",
    "ModuleList",
    "MultiHeadAttention",
    "Tensor",
    "causal_mask",
    "cosine_warmup_lr",
    "functional",
    "grad_check",
    "load_checkpoint",
    "no_grad",
    "params_hash",
    "save_checkpoint",
]
