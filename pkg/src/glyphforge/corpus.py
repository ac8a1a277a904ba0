"""In-memory glyph corpus: tensors for training and evaluation loops."""

from __future__ import annotations

from dataclasses import dataclass

import torch

from .conditioning import Vocabulary, encode_one_bit
from .errors import DataError
from .manifest import DatasetView
from .tables import CountTable


@dataclass
class GlyphCorpus:
    """All (font, codepoint) glyphs of a dataset view, loaded as tensors."""

    images: torch.Tensor  # (N, 1, H, W) float32 in [0, 1]
    font_index: torch.Tensor  # (N,) long, index into fonts
    codepoints: torch.Tensor  # (N,) long
    fonts: tuple[str, ...]
    vocab: Vocabulary
    image_size: int

    def __len__(self) -> int:
        return self.images.shape[0]

    @property
    def tokens(self) -> torch.Tensor:
        return torch.tensor([self.vocab.token(int(cp)) for cp in self.codepoints])

    def count_matrix(self, table: CountTable, one_bit: bool = False) -> torch.Tensor:
        """(N, 32) float matrix of per-sample count vectors."""
        rows = []
        for cp in self.codepoints.tolist():
            counts = table.counts(cp)
            if one_bit:
                counts = encode_one_bit(counts)
            rows.append(counts)
        return torch.tensor(rows, dtype=torch.float32)

    def find(self, font_id: str, codepoint: int) -> int:
        font_i = self.fonts.index(font_id)
        mask = (self.font_index == font_i) & (self.codepoints == codepoint)
        idx = mask.nonzero()
        if idx.numel() == 0:
            raise DataError(f"({font_id}, U+{codepoint:04X}) not in corpus")
        return int(idx[0, 0])


def load_corpus(view: DatasetView, vocab: Vocabulary | None = None) -> GlyphCorpus:
    """Load every pair of a view into memory (desk-scale corpora are small)."""
    pairs = view.pairs()
    if not pairs:
        raise DataError("dataset view is empty")
    if vocab is None:
        vocab = Vocabulary(view.manifest.codepoints)
    fonts = tuple(view.fonts)
    font_pos = {f: i for i, f in enumerate(fonts)}
    images, font_idx, cps = [], [], []
    size = view.manifest.image_size
    for font_id, cp in pairs:
        glyph = view.load_glyph(font_id, cp)
        if glyph.size != size:
            raise DataError(
                f"image size {glyph.size} != manifest size {size} for ({font_id}, U+{cp:04X})"
            )
        images.append(torch.from_numpy(glyph.pixels).unsqueeze(0))
        font_idx.append(font_pos[font_id])
        cps.append(cp)
    return GlyphCorpus(
        images=torch.stack(images),
        font_index=torch.tensor(font_idx),
        codepoints=torch.tensor(cps),
        fonts=fonts,
        vocab=vocab,
        image_size=size,
    )
