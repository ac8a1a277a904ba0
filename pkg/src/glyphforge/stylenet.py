"""Frozen style encoder.

A small convolutional network with four downsampling stages and global
average pooling to a 128-dim style vector. It is pretrained with a
font-classification head on the training fonts, then the head is discarded
and the encoder parameters are frozen for diffusion training.
"""

from __future__ import annotations

import hashlib
import logging

import torch
from torch import nn

from .conditioning import STYLE_FEATURE_DIM
from .corpus import GlyphCorpus
from .errors import ConfigError, DataError, NumericError

log = logging.getLogger(__name__)


class StyleEncoder(nn.Module):
    def __init__(self, image_size: int, base_channels: int = 32):
        super().__init__()
        if image_size < 16:
            raise ConfigError(f"style encoder needs image_size >= 16, got {image_size}")
        self.image_size = image_size
        self.base_channels = base_channels
        chans = [base_channels, base_channels * 2, base_channels * 4, STYLE_FEATURE_DIM]
        stages = []
        in_ch = 1
        for out_ch in chans:
            stages.append(
                nn.Sequential(
                    nn.Conv2d(in_ch, out_ch, 3, stride=2, padding=1),
                    nn.GroupNorm(min(8, out_ch), out_ch),
                    nn.SiLU(),
                )
            )
            in_ch = out_ch
        self.stages = nn.ModuleList(stages)
        self.frozen = False

    def features(self, x: torch.Tensor) -> list[torch.Tensor]:
        """Per-stage feature maps for images in [0, 1]."""
        if x.ndim != 4 or x.shape[1] != 1:
            raise DataError(f"expected (B, 1, H, W) images, got {tuple(x.shape)}")
        if x.shape[2] != self.image_size or x.shape[3] != self.image_size:
            raise DataError(
                f"style encoder expects {self.image_size}x{self.image_size} images, "
                f"got {x.shape[2]}x{x.shape[3]}"
            )
        h = x * 2.0 - 1.0
        outs = []
        for stage in self.stages:
            h = stage(h)
            outs.append(h)
        return outs

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        """Pooled 128-dim style vectors for a batch of [0, 1] images."""
        return self.features(x)[-1].mean(dim=(2, 3))

    def encode(self, x: torch.Tensor) -> torch.Tensor:
        """Frozen evaluation path: no gradients flow into the encoder."""
        with torch.no_grad():
            return self.forward(x)

    def freeze(self) -> None:
        self.requires_grad_(False)
        self.eval()
        self.frozen = True


def parameter_checksum(module: nn.Module) -> str:
    """sha256 over the serialized state dict, in key order."""
    digest = hashlib.sha256()
    for key, tensor in sorted(module.state_dict().items()):
        digest.update(key.encode())
        digest.update(tensor.detach().cpu().contiguous().numpy().tobytes())
    return digest.hexdigest()


def pretrain_style_encoder(
    corpus: GlyphCorpus,
    epochs: int = 40,
    seed: int = 0,
    batch_size: int = 64,
    learning_rate: float = 1e-3,
    holdout_fraction: float = 0.2,
    min_accuracy: float = 0.9,
) -> StyleEncoder:
    """Train a font classifier, discard the head, freeze the encoder.

    Held-out characters of the training fonts are used to verify that the
    encoder separates fonts (accuracy >= min_accuracy, or NumericError).
    """
    n_fonts = len(corpus.fonts)
    if n_fonts < 2:
        raise DataError("style pretraining needs at least 2 fonts")

    with torch.random.fork_rng():
        torch.manual_seed(seed)
        encoder = StyleEncoder(image_size=corpus.image_size)
        head = nn.Linear(STYLE_FEATURE_DIM, n_fonts)
        params = list(encoder.parameters()) + list(head.parameters())
        optim = torch.optim.Adam(params, lr=learning_rate)

        g = torch.Generator().manual_seed(seed)
        chars = sorted(set(corpus.codepoints.tolist()))
        n_hold = max(1, int(len(chars) * holdout_fraction))
        order = torch.randperm(len(chars), generator=g).tolist()
        held = {chars[i] for i in order[:n_hold]}
        hold_mask = torch.tensor([int(cp) in held for cp in corpus.codepoints])
        train_idx = (~hold_mask).nonzero().flatten()
        hold_idx = hold_mask.nonzero().flatten()
        if train_idx.numel() == 0 or hold_idx.numel() == 0:
            raise DataError("corpus too small to hold out characters for validation")

        loss_fn = nn.CrossEntropyLoss()
        max_shift = max(1, corpus.image_size // 10)
        for _ in range(epochs):
            perm = train_idx[torch.randperm(train_idx.numel(), generator=g)]
            for start in range(0, perm.numel(), batch_size):
                idx = perm[start : start + batch_size]
                batch = _shift_augment(corpus.images[idx], max_shift, g)
                optim.zero_grad()
                logits = head(encoder(batch))
                loss = loss_fn(logits, corpus.font_index[idx])
                loss.backward()
                optim.step()

        encoder.eval()
        with torch.no_grad():
            logits = head(encoder(corpus.images[hold_idx]))
            accuracy = (logits.argmax(dim=1) == corpus.font_index[hold_idx]).float().mean().item()
    log.info("style encoder held-out font accuracy: %.3f", accuracy)
    if accuracy < min_accuracy:
        raise NumericError(
            f"style pretraining reached {accuracy:.3f} held-out accuracy "
            f"(< {min_accuracy}); increase epochs or check the corpus"
        )
    encoder.freeze()
    return encoder
