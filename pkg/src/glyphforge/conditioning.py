"""Character attribute encoding into the 512-dim condition vector.

A character is described by up to three attributes: a content token (learned
embedding), a style vector (from the frozen style encoder, passed through a
trainable MLP), and an optional stroke/component count vector (trainable
affine projection). Dropped attributes contribute exact zeros to their
segment. Layout: [content(128) | style(128) | optional(256)] with counts
enabled, [content(256) | style(256)] without.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

import torch
from torch import nn

from .errors import ConfigError, DataError, VocabularyError
from .tables import COUNT_DIMS

CONDITION_DIM = 512
STYLE_FEATURE_DIM = 128
OPTIONAL_DIM = 256
DEFAULT_DROP_P = 0.3


class _Dropped:
    def __repr__(self):
        return "DROPPED"


DROPPED = _Dropped()


def encode_one_bit(counts) -> tuple[int, ...]:
    """Presence/absence variant of a count vector (ablation baseline)."""
    vec = tuple(int(c) for c in counts)
    if len(vec) != COUNT_DIMS:
        raise DataError(f"expected {COUNT_DIMS} counts, got {len(vec)}")
    if any(c < 0 for c in vec):
        raise DataError("counts must be non-negative")
    return tuple(min(c, 1) for c in vec)


@dataclass(frozen=True)
class AttributeBundle:
    """A character's attributes, each either present or DROPPED.

    ``optional`` is None when the model configuration has no stroke/component
    attribute at all (as opposed to DROPPED, which is a trained zero branch).
    """

    content: int | _Dropped
    style: torch.Tensor | _Dropped
    optional: tuple[int, ...] | _Dropped | None

    def __post_init__(self):
        if (
            isinstance(self.content, _Dropped)
            and isinstance(self.optional, _Dropped)
            and not isinstance(self.style, _Dropped)
        ):
            raise DataError(
                "invalid bundle: style must be dropped when both content and "
                "optional attributes are dropped"
            )

    @property
    def has_optional(self) -> bool:
        return self.optional is not None

    def with_drops(self, drop_content: bool, drop_optional: bool) -> "AttributeBundle":
        """Apply a drop decision; style drops iff both others drop."""
        return replace(
            self,
            content=DROPPED if drop_content else self.content,
            optional=DROPPED if drop_optional else self.optional,
            style=DROPPED if (drop_content and drop_optional) else self.style,
        )


def draw_drop_mask(rng: random.Random, p: float) -> tuple[bool, bool]:
    """Independent Bernoulli(p) decisions for (content, optional)."""
    return rng.random() < p, rng.random() < p


def apply_drop(bundle: AttributeBundle, rng: random.Random, p: float = DEFAULT_DROP_P) -> AttributeBundle:
    """Training-time attribute drop: content and optional drop independently
    with probability p; style drops exactly when both are dropped."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"drop probability must be in [0, 1], got {p}")
    if not bundle.has_optional:
        raise DataError("attribute drop is defined only when optional attributes are enabled")
    if (
        isinstance(bundle.content, _Dropped)
        or isinstance(bundle.style, _Dropped)
        or isinstance(bundle.optional, _Dropped)
    ):
        raise DataError("apply_drop expects a bundle with no dropped fields")
    drop_content, drop_optional = draw_drop_mask(rng, p)
    return bundle.with_drops(drop_content, drop_optional)


class Vocabulary:
    """Bijection between codepoints and content token ids (sorted order)."""

    def __init__(self, codepoints):
        self.codepoints = tuple(sorted(set(int(c) for c in codepoints)))
        if not self.codepoints:
            raise VocabularyError("empty vocabulary")
        self._ids = {cp: i for i, cp in enumerate(self.codepoints)}

    def __len__(self) -> int:
        return len(self.codepoints)

    def __contains__(self, codepoint: int) -> bool:
        return codepoint in self._ids

    def token(self, codepoint: int) -> int:
        try:
            return self._ids[codepoint]
        except KeyError:
            raise VocabularyError(
                f"character {chr(codepoint)!r} (U+{codepoint:04X}) is not in the vocabulary"
            ) from None

    def codepoint(self, token: int) -> int:
        if not 0 <= token < len(self.codepoints):
            raise VocabularyError(f"token id {token} out of range [0, {len(self.codepoints)})")
        return self.codepoints[token]

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            "".join(f"U+{cp:04X}\n" for cp in self.codepoints), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        cps = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line:
                cps.append(int(line[2:], 16) if line.upper().startswith("U+") else ord(line))
        return cls(cps)


class AttributeEncoder(nn.Module):
    """Trainable embeddings mapping an AttributeBundle to the condition vector."""

    def __init__(self, vocab_size: int, use_counts: bool):
        super().__init__()
        self.vocab_size = vocab_size
        self.use_counts = use_counts
        self.content_dim = 128 if use_counts else 256
        self.style_dim = 128 if use_counts else 256
        self.content = nn.Embedding(vocab_size, self.content_dim)
        self.style_mlp = nn.Sequential(
            nn.Linear(STYLE_FEATURE_DIM, self.style_dim),
            nn.SiLU(),
            nn.Linear(self.style_dim, self.style_dim),
        )
        if use_counts:
            self.count_proj = nn.Linear(COUNT_DIMS, OPTIONAL_DIM)

    def embed_content(self, token: int) -> torch.Tensor:
        if not 0 <= int(token) < self.vocab_size:
            raise VocabularyError(f"token id {token} out of range [0, {self.vocab_size})")
        return self.content(torch.tensor(int(token)))

    def project_counts(self, counts) -> torch.Tensor:
        vec = torch.as_tensor(counts, dtype=torch.float32)
        if vec.shape[-1] != COUNT_DIMS:
            raise DataError(f"count vector must have {COUNT_DIMS} dims, got {vec.shape[-1]}")
        if not self.use_counts:
            raise ConfigError("this encoder was built without optional attributes")
        return self.count_proj(vec)

    def assemble_batch(
        self,
        tokens: torch.Tensor,
        style: torch.Tensor,
        counts: torch.Tensor | None,
        drop_content: torch.Tensor,
        drop_style: torch.Tensor,
        drop_optional: torch.Tensor | None,
    ) -> torch.Tensor:
        batch = tokens.shape[0]
        keep = lambda m: (~m).float().unsqueeze(1)
        segments = [
            self.content(tokens) * keep(drop_content),
            self.style_mlp(style) * keep(drop_style),
        ]
        if self.use_counts:
            if counts is None or drop_optional is None:
                raise DataError("optional attribute required by this encoder configuration")
            segments.append(self.count_proj(counts.float()) * keep(drop_optional))
        elif counts is not None:
            raise ConfigError("this encoder was built without optional attributes")
        z = torch.cat(segments, dim=1)
        assert z.shape == (batch, CONDITION_DIM)
        return z

    def assemble(self, bundle: AttributeBundle) -> torch.Tensor:
        """Condition vector for one bundle; dropped segments are exact zeros."""
        if self.use_counts and not bundle.has_optional:
            raise DataError("bundle has no optional attribute but the encoder expects one")
        if not self.use_counts and bundle.has_optional:
            raise ConfigError("bundle carrying optional attributes fed to a no-optional encoder")
        drop_content = isinstance(bundle.content, _Dropped)
        drop_style = isinstance(bundle.style, _Dropped)
        drop_optional = isinstance(bundle.optional, _Dropped)
        tokens = torch.tensor([0 if drop_content else int(bundle.content)])
        if not drop_content and not 0 <= tokens.item() < self.vocab_size:
            raise VocabularyError(f"token id {tokens.item()} out of range [0, {self.vocab_size})")
        style = (
            torch.zeros(1, STYLE_FEATURE_DIM)
            if drop_style
            else torch.as_tensor(bundle.style, dtype=torch.float32).reshape(1, -1)
        )
        if style.shape[1] != STYLE_FEATURE_DIM:
            raise DataError(f"style vector must have {STYLE_FEATURE_DIM} dims")
        counts = None
        mask_optional = None
        if self.use_counts:
            counts = (
                torch.zeros(1, COUNT_DIMS)
                if drop_optional
                else torch.as_tensor(bundle.optional, dtype=torch.float32).reshape(1, -1)
            )
            mask_optional = torch.tensor([drop_optional])
        return self.assemble_batch(
            tokens,
            style,
            counts,
            torch.tensor([drop_content]),
            torch.tensor([drop_style]),
            mask_optional,
        )[0]
