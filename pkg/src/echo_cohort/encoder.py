"""The trainable bi-encoder: word-level vocabulary, mean-pooled embedding
bag with an optional linear projection, similarity, masked-token
pretraining, and the versioned parameter file.

One encoder serves both queries and passages.  encode(x) is
W @ mean(E[t] for t in tokens(x)); with projection disabled it is the bare
mean.  Empty input encodes to the zero vector, which dot similarity treats
as score 0 and cosine rejects.

Parameters live in "echo-params v1" files: a JSON meta line, a JSON vocab
line, then row-major little-endian float32 matrices (E, then W when the
projection is enabled).  The vocab hash in the meta line binds the
matrices to the exact token list they were trained with.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EncoderError, ParamsError, TrainingError
from .optim import AdamW
from .text import tokenize

PARAMS_HEADER = "echo-params v1"

PAD_ID = 0
OOV_ID = 1
_N_RESERVED = 2

SIM_KINDS = ("dot", "cosine")


@dataclass(frozen=True)
class Vocab:
    """Token list with dense ids; 0 and 1 are reserved for PAD and OOV."""

    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        ids = {t: i + _N_RESERVED for i, t in enumerate(self.tokens)}
        if len(ids) != len(self.tokens):
            raise EncoderError("vocabulary contains duplicate tokens")
        object.__setattr__(self, "_ids", ids)

    @property
    def size(self) -> int:
        return len(self.tokens) + _N_RESERVED

    def id_of(self, token: str) -> int:
        return self._ids.get(token, OOV_ID)

    def encode_ids(self, text: str, max_len: int) -> list[int]:
        return [self.id_of(t) for t in tokenize(text)[:max_len]]

    def content_hash(self) -> str:
        joined = "\n".join(self.tokens).encode("utf-8")
        return hashlib.sha256(joined).hexdigest()


def build_vocab(texts: Iterable[str]) -> Vocab:
    tokens: set[str] = set()
    for text in texts:
        tokens.update(tokenize(text))
    return Vocab(tokens=tuple(sorted(tokens)))


@dataclass(frozen=True)
class EncoderConfig:
    dim: int = 64
    max_len: int = 300
    sim_kind: str = "dot"
    use_projection: bool = True

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise EncoderError(f"dim must be at least 2, got {self.dim}")
        if self.max_len < 1:
            raise EncoderError(f"max_len must be at least 1, got {self.max_len}")
        if self.sim_kind not in SIM_KINDS:
            raise EncoderError(f"sim_kind must be one of {SIM_KINDS}, got {self.sim_kind!r}")


@dataclass
class EncoderModel:
    """Bundle of vocabulary, config, and the live parameter arrays.

    E is (vocab.size, dim); W is (dim, dim) or None when the projection is
    disabled.  Arrays are float64 at runtime and float32 on disk.
    """

    vocab: Vocab
    config: EncoderConfig
    E: np.ndarray
    W: np.ndarray | None

    def check_shapes(self) -> None:
        if self.E.shape != (self.vocab.size, self.config.dim):
            raise EncoderError(
                f"E has shape {self.E.shape}, expected {(self.vocab.size, self.config.dim)}"
            )
        if self.config.use_projection:
            if self.W is None or self.W.shape != (self.config.dim, self.config.dim):
                raise EncoderError("projection enabled but W missing or mis-shaped")
        elif self.W is not None:
            raise EncoderError("projection disabled but W present")
        if not np.all(np.isfinite(self.E)) or (
            self.W is not None and not np.all(np.isfinite(self.W))
        ):
            raise EncoderError("parameters contain non-finite entries")


def init_model(vocab: Vocab, config: EncoderConfig, seed: int = 0) -> EncoderModel:
    """Fresh parameters: E uniform in [-0.5/d, 0.5/d], W the identity.

    The identity projection makes an untrained model equal the bare
    embedding-bag, so v0-vs-untrained comparisons start from the same map.
    """
    rng = np.random.default_rng(seed)
    half = 0.5 / config.dim
    E = rng.uniform(-half, half, size=(vocab.size, config.dim)).astype(np.float64)
    W = np.eye(config.dim, dtype=np.float64) if config.use_projection else None
    model = EncoderModel(vocab=vocab, config=config, E=E, W=W)
    model.check_shapes()
    return model


def encode_ids(ids: Sequence[int], E: np.ndarray, W: np.ndarray | None) -> np.ndarray:
    if len(ids) == 0:
        return np.zeros(E.shape[1], dtype=E.dtype)
    m = E[np.asarray(ids, dtype=np.intp)].mean(axis=0)
    return m if W is None else W @ m


def encode(text: str, model: EncoderModel) -> np.ndarray:
    ids = model.vocab.encode_ids(text, model.config.max_len)
    return encode_ids(ids, model.E, model.W)


def encode_batch(texts: Sequence[str], model: EncoderModel) -> np.ndarray:
    out = np.empty((len(texts), model.config.dim), dtype=model.E.dtype)
    for i, text in enumerate(texts):
        out[i] = encode(text, model)
    return out


def similarity(u: np.ndarray, v: np.ndarray, sim_kind: str = "dot") -> float:
    if sim_kind == "dot":
        return float(np.dot(u, v))
    if sim_kind == "cosine":
        nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
        if nu == 0.0 or nv == 0.0:
            raise EncoderError("cosine similarity of a zero vector is undefined")
        return float(np.dot(u, v) / (nu * nv))
    raise EncoderError(f"unknown sim_kind: {sim_kind!r}")


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    e = np.exp(shifted)
    return e / e.sum()


def mlm_loss_and_grads(
    E: np.ndarray,
    O: np.ndarray,
    ids: Sequence[int],
    masked: Sequence[bool],
) -> tuple[float, np.ndarray, np.ndarray]:
    """Masked-token loss for one passage and its exact gradients.

    Each masked token id is predicted from the mean embedding of the
    unmasked tokens through output matrix O with softmax cross-entropy;
    loss and gradients are averaged over the masked positions.
    """
    ids = np.asarray(ids, dtype=np.intp)
    masked = np.asarray(masked, dtype=bool)
    if ids.shape != masked.shape:
        raise TrainingError("ids and mask lengths differ")
    ctx = ids[~masked]
    targets = ids[masked]
    if len(ctx) == 0 or len(targets) == 0:
        raise TrainingError("degenerate example: need both context and masked tokens")
    h = E[ctx].mean(axis=0)
    dE = np.zeros_like(E)
    dO = np.zeros_like(O)
    dh = np.zeros_like(h)
    loss = 0.0
    for t in targets:
        p = _softmax(O @ h)
        loss -= float(np.log(p[t]))
        delta = p.copy()
        delta[t] -= 1.0
        dO += np.outer(delta, h)
        dh += O.T @ delta
    k = float(len(targets))
    loss /= k
    dO /= k
    dh /= k
    contrib = dh / float(len(ctx))
    np.add.at(dE, ctx, contrib)
    return loss, dE, dO


def masked_token_pretrain(
    texts: Sequence[str],
    vocab: Vocab,
    dim: int = 64,
    steps: int = 500,
    mask_prob: float = 0.15,
    lr: float = 1e-2,
    max_len: int = 300,
    seed: int = 0,
) -> tuple[np.ndarray, list[float]]:
    """Warm-start E by predicting masked tokens from their passage context.

    Returns (E, per-step losses); the output matrix O is internal and
    discarded.  Word-level vocabulary makes whole-word masking the same as
    token masking.
    """
    if not texts:
        raise TrainingError("cannot pretrain on an empty corpus")
    if vocab.size - _N_RESERVED < 2:
        raise EncoderError(
            f"vocabulary of size {vocab.size - _N_RESERVED} is too small to pretrain"
        )
    if not 0.0 < mask_prob < 1.0:
        raise TrainingError(f"mask_prob must lie in (0, 1), got {mask_prob}")
    if steps < 1:
        raise TrainingError(f"steps must be positive, got {steps}")
    rng = np.random.default_rng(seed)
    half = 0.5 / dim
    E = rng.uniform(-half, half, size=(vocab.size, dim)).astype(np.float64)
    O = rng.uniform(-half, half, size=(vocab.size, dim)).astype(np.float64)
    opt = AdamW({"E": E, "O": O}, lr=lr, weight_decay=0.0)
    encoded = [vocab.encode_ids(t, max_len) for t in texts]
    usable = [ids for ids in encoded if len(ids) >= 2]
    if not usable:
        raise TrainingError("no passage has at least two tokens to mask over")
    losses: list[float] = []
    for _ in range(steps):
        for _attempt in range(100):
            ids = usable[int(rng.integers(len(usable)))]
            masked = rng.random(len(ids)) < mask_prob
            if masked.any() and not masked.all():
                break
        else:
            raise TrainingError("could not draw a usable mask in 100 attempts")
        loss, dE, dO = mlm_loss_and_grads(E, O, ids, masked)
        opt.step({"E": dE, "O": dO})
        losses.append(loss)
    return E, losses


def _meta_dict(model: EncoderModel) -> dict:
    return {
        "kind": "encoder-params",
        "dim": model.config.dim,
        "max_len": model.config.max_len,
        "sim_kind": model.config.sim_kind,
        "use_projection": model.config.use_projection,
        "vocab_size": model.vocab.size,
        "vocab_hash": model.vocab.content_hash(),
    }


def dump_params(model: EncoderModel) -> bytes:
    model.check_shapes()
    head = PARAMS_HEADER.encode("ascii") + b"\n"
    meta = json.dumps(_meta_dict(model), sort_keys=True).encode("utf-8") + b"\n"
    vocab_line = json.dumps({"vocab": list(model.vocab.tokens)}).encode("utf-8") + b"\n"
    body = model.E.astype("<f4").tobytes(order="C")
    if model.W is not None:
        body += model.W.astype("<f4").tobytes(order="C")
    return head + meta + vocab_line + body


def parse_params(data: bytes) -> EncoderModel:
    header, _, rest = data.partition(b"\n")
    if header.decode("ascii", errors="replace") != PARAMS_HEADER:
        raise ParamsError(
            f"bad params header: expected {PARAMS_HEADER!r}, got {header[:40]!r}"
        )
    meta_line, _, rest = rest.partition(b"\n")
    vocab_line, _, body = rest.partition(b"\n")
    try:
        meta = json.loads(meta_line)
        vocab_tokens = json.loads(vocab_line)["vocab"]
    except (json.JSONDecodeError, KeyError) as exc:
        raise ParamsError(f"bad params meta or vocab line: {exc}") from exc
    if meta.get("kind") != "encoder-params":
        raise ParamsError(f"unexpected params kind: {meta.get('kind')!r}")
    vocab = Vocab(tokens=tuple(vocab_tokens))
    if vocab.content_hash() != meta.get("vocab_hash"):
        raise ParamsError("vocab hash mismatch: token list does not match meta line")
    if vocab.size != meta.get("vocab_size"):
        raise ParamsError(
            f"vocab size mismatch: meta says {meta.get('vocab_size')}, "
            f"token list gives {vocab.size}"
        )
    try:
        config = EncoderConfig(
            dim=int(meta["dim"]),
            max_len=int(meta["max_len"]),
            sim_kind=str(meta["sim_kind"]),
            use_projection=bool(meta["use_projection"]),
        )
    except KeyError as exc:
        raise ParamsError(f"params meta missing field: {exc}") from exc
    dim = config.dim
    n_e = vocab.size * dim
    expected = n_e * 4 + (dim * dim * 4 if config.use_projection else 0)
    if len(body) != expected:
        raise ParamsError(
            f"params body has {len(body)} bytes, expected {expected}"
        )
    flat = np.frombuffer(body, dtype="<f4")
    E = flat[:n_e].astype(np.float64).reshape(vocab.size, dim)
    W = None
    if config.use_projection:
        W = flat[n_e:].astype(np.float64).reshape(dim, dim)
    model = EncoderModel(vocab=vocab, config=config, E=E, W=W)
    model.check_shapes()
    return model


def save_params(model: EncoderModel, path: str | Path) -> None:
    Path(path).write_bytes(dump_params(model))


def load_params(path: str | Path) -> EncoderModel:
    return parse_params(Path(path).read_bytes())


def with_embeddings(model: EncoderModel, E: np.ndarray) -> EncoderModel:
    """Copy of the model with a replacement embedding table (warm start)."""
    out = replace(model, E=np.array(E, dtype=np.float64))
    out.check_shapes()
    return out
