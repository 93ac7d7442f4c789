"""Parameterized layers: linear, layer norm, embeddings, attention, and
pre-norm transformer encoder/decoder blocks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ..errors import ConfigError, ShapeMismatch
from . import tensor as T
from .tensor import Tensor


@dataclass
class LayerConfig:
    """Transformer dimensions. Defaults follow the full-scale recipe."""

    d_model: int = 768
    ffn_dim: int = 3072
    heads: int = 12
    dropout: float = 0.5
    enc_layers: int = 12
    dec_layers: int = 4

    def __post_init__(self):
        if min(self.d_model, self.ffn_dim, self.heads, self.enc_layers, self.dec_layers) < 1:
            raise ConfigError("all dimensions must be >= 1")
        if self.d_model % self.heads != 0:
            raise ConfigError(f"d_model {self.d_model} not divisible by heads {self.heads}")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError(f"dropout must be in [0, 1), got {self.dropout}")

    @classmethod
    def desk(cls, dropout: float = 0.1) -> "LayerConfig":
        """Laptop-scale profile used by tests and the synthetic benchmark."""
        return cls(d_model=64, ffn_dim=256, heads=4, dropout=dropout, enc_layers=2, dec_layers=2)


class Module:
    """Minimal parameter container with recursive registration."""

    def __init__(self):
        object.__setattr__(self, "_params", {})
        object.__setattr__(self, "_children", {})
        object.__setattr__(self, "training", True)

    def __setattr__(self, name, value):
        if isinstance(value, Tensor) and value.requires_grad:
            self._params[name] = value
        elif isinstance(value, Module):
            self._children[name] = value
        object.__setattr__(self, name, value)

    def named_parameters(self, prefix: str = "") -> Iterator[tuple[str, Tensor]]:
        for name, p in self._params.items():
            yield prefix + name, p
        for name, child in self._children.items():
            yield from child.named_parameters(prefix + name + ".")

    def parameters(self) -> Iterator[Tensor]:
        for _, p in self.named_parameters():
            yield p

    def state_dict(self) -> dict[str, np.ndarray]:
        return {name: p.data.copy() for name, p in self.named_parameters()}

    def load_state_dict(self, state: dict[str, np.ndarray]) -> None:
        own = dict(self.named_parameters())
        missing = own.keys() - state.keys()
        extra = state.keys() - own.keys()
        if missing or extra:
            raise ShapeMismatch(f"state dict mismatch: missing={sorted(missing)}, extra={sorted(extra)}")
        for name, p in own.items():
            arr = np.asarray(state[name])
            if arr.shape != p.data.shape:
                raise ShapeMismatch(f"{name}: shape {arr.shape} != {p.data.shape}")
            p.data = arr.astype(p.data.dtype, copy=True)

    def train(self, mode: bool = True) -> "Module":
        object.__setattr__(self, "training", mode)
        for child in self._children.values():
            child.train(mode)
        return self

    def eval(self) -> "Module":
        return self.train(False)

    def zero_grad(self) -> None:
        for p in self.parameters():
            p.grad = None


class ModuleList(Module):
    def __init__(self, modules):
        super().__init__()
        self._list = list(modules)
        for i, m in enumerate(self._list):
            setattr(self, str(i), m)

    def __iter__(self):
        return iter(self._list)

    def __len__(self):
        return len(self._list)

    def __getitem__(self, i):
        return self._list[i]


def _param(rng: np.random.Generator, shape, dtype, std: float = 0.02) -> Tensor:
    return Tensor(rng.normal(0.0, std, size=shape).astype(dtype), requires_grad=True)


class Linear(Module):
    def __init__(self, in_dim: int, out_dim: int, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        self.weight = _param(rng, (in_dim, out_dim), dtype)
        self.bias = Tensor(np.zeros(out_dim, dtype=dtype), requires_grad=True)

    def forward(self, x: Tensor) -> Tensor:
        return x @ self.weight + self.bias

    __call__ = forward


class LayerNorm(Module):
    def __init__(self, dim: int, dtype=np.float32, eps: float = 1e-5):
        super().__init__()
        self.gamma = Tensor(np.ones(dim, dtype=dtype), requires_grad=True)
        self.beta = Tensor(np.zeros(dim, dtype=dtype), requires_grad=True)
        self.eps = eps

    def forward(self, x: Tensor) -> Tensor:
        return T.layer_norm(x, self.gamma, self.beta, self.eps)

    __call__ = forward


class Embedding(Module):
    def __init__(self, num: int, dim: int, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        self.weight = _param(rng, (num, dim), dtype)

    def forward(self, ids: np.ndarray) -> Tensor:
        return T.embedding(self.weight, ids)

    __call__ = forward


class Dropout(Module):
    """Inverted dropout; identity in eval mode."""

    def __init__(self, p: float, rng: np.random.Generator):
        super().__init__()
        self.p = p
        self.rng = rng

    def forward(self, x: Tensor) -> Tensor:
        return T.dropout(x, self.p, self.rng, self.training)

    __call__ = forward


class MultiHeadAttention(Module):
    """Scaled dot-product attention over [batch, time, d_model] tensors.

    The mask is a boolean array, True where attention is allowed; disallowed
    positions are filled with -inf before the softmax and therefore receive
    exactly zero weight.
    """

    def __init__(self, d_model: int, heads: int, dropout: float, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        if d_model % heads:
            raise ConfigError(f"d_model {d_model} not divisible by heads {heads}")
        self.heads = heads
        self.head_dim = d_model // heads
        self.scale = 1.0 / np.sqrt(self.head_dim)
        self.wq = Linear(d_model, d_model, rng, dtype)
        self.wk = Linear(d_model, d_model, rng, dtype)
        self.wv = Linear(d_model, d_model, rng, dtype)
        self.wo = Linear(d_model, d_model, rng, dtype)
        self.drop = Dropout(dropout, rng)

    def _split(self, x: Tensor) -> Tensor:
        b, t, d = x.shape
        return x.reshape((b, t, self.heads, self.head_dim)).transpose((0, 2, 1, 3))

    def forward(self, q: Tensor, k: Tensor, v: Tensor, mask: Optional[np.ndarray] = None) -> Tensor:
        if q.ndim != 3 or k.ndim != 3 or v.ndim != 3:
            raise ShapeMismatch("attention expects [batch, time, d_model] inputs")
        if k.shape != v.shape or q.shape[0] != k.shape[0] or q.shape[2] != k.shape[2]:
            raise ShapeMismatch(f"attention shapes incompatible: q={q.shape} k={k.shape} v={v.shape}")
        b, tq, d = q.shape
        tk = k.shape[1]
        qh = self._split(self.wq(q))
        kh = self._split(self.wk(k))
        vh = self._split(self.wv(v))
        scores = (qh @ kh.transpose((0, 1, 3, 2))) * self.scale  # [b, h, tq, tk]
        if mask is not None:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape[-2:] != (tq, tk):
                raise ShapeMismatch(f"mask shape {mask.shape} incompatible with ({tq}, {tk})")
            scores = T.where(mask, scores, -np.inf)
        weights = self.drop(T.softmax(scores, axis=-1))
        out = (weights @ vh).transpose((0, 2, 1, 3)).reshape((b, tq, d))
        return self.wo(out)

    __call__ = forward


class FeedForward(Module):
    def __init__(self, d_model: int, ffn_dim: int, dropout: float, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        self.lin1 = Linear(d_model, ffn_dim, rng, dtype)
        self.lin2 = Linear(ffn_dim, d_model, rng, dtype)
        self.drop = Dropout(dropout, rng)

    def forward(self, x: Tensor) -> Tensor:
        return self.lin2(self.drop(T.gelu(self.lin1(x))))

    __call__ = forward


class EncoderLayer(Module):
    """Pre-norm self-attention block."""

    def __init__(self, cfg: LayerConfig, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        self.ln1 = LayerNorm(cfg.d_model, dtype)
        self.attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout, rng, dtype)
        self.ln2 = LayerNorm(cfg.d_model, dtype)
        self.ffn = FeedForward(cfg.d_model, cfg.ffn_dim, cfg.dropout, rng, dtype)
        self.drop = Dropout(cfg.dropout, rng)

    def forward(self, x: Tensor) -> Tensor:
        h = self.ln1(x)
        x = x + self.drop(self.attn(h, h, h))
        x = x + self.drop(self.ffn(self.ln2(x)))
        return x

    __call__ = forward


class DecoderLayer(Module):
    """Pre-norm block: causal self-attention, cross-attention, feed-forward."""

    def __init__(self, cfg: LayerConfig, rng: np.random.Generator, dtype=np.float32):
        super().__init__()
        self.ln1 = LayerNorm(cfg.d_model, dtype)
        self.self_attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout, rng, dtype)
        self.ln2 = LayerNorm(cfg.d_model, dtype)
        self.cross_attn = MultiHeadAttention(cfg.d_model, cfg.heads, cfg.dropout, rng, dtype)
        self.ln3 = LayerNorm(cfg.d_model, dtype)
        self.ffn = FeedForward(cfg.d_model, cfg.ffn_dim, cfg.dropout, rng, dtype)
        self.drop = Dropout(cfg.dropout, rng)

    def forward(self, x: Tensor, memory: Tensor, causal_mask: np.ndarray) -> Tensor:
        h = self.ln1(x)
        x = x + self.drop(self.self_attn(h, h, h, mask=causal_mask))
        h = self.ln2(x)
        x = x + self.drop(self.cross_attn(h, memory, memory))
        x = x + self.drop(self.ffn(self.ln3(x)))
        return x

    __call__ = forward


def causal_mask(t: int) -> np.ndarray:
    """Lower-triangular boolean mask: position i may attend to j <= i."""
    return np.tril(np.ones((t, t), dtype=bool))
