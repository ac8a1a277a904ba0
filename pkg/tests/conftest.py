import numpy as np
import pytest
import torch
from hypothesis import settings

from glyphforge import tables
from glyphforge.manifest import build_manifest

import _fonts

settings.register_profile("ci", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("ci")

# 20 characters for the overfit training subset, plus extras so the style
# encoder has enough character variety to generalize across glyphs.
TRAIN_CHARS = [ord(c) for c in "一二三十口日田中人大天木山王土火月白石水"]
EXTRA_CHARS = [ord(c) for c in "上下小工同古可司另加全金立文六市雨电儿元见四西与万方于千午年生心正止五七手毛云去"]
CORPUS_CHARS = TRAIN_CHARS + EXTRA_CHARS

N_FONTS = 5
IMAGE_SIZE = 32


@pytest.fixture(scope="session")
def stroke_table():
    return tables.load_stroke_table(tables.bundled_table_path("chinese_strokes_32.tsv"))


@pytest.fixture(scope="session")
def component_table():
    return tables.load_component_table(tables.bundled_table_path("korean_components_24.tsv"))


@pytest.fixture(scope="session")
def fonts_dir(tmp_path_factory, stroke_table):
    directory = tmp_path_factory.mktemp("fonts")
    _fonts.write_font_dir(directory, N_FONTS, CORPUS_CHARS, stroke_table)
    return directory


@pytest.fixture(scope="session")
def corpus(tmp_path_factory, fonts_dir, stroke_table):
    """Rendered 5-font corpus at 32x32 with its manifest."""
    out_root = tmp_path_factory.mktemp("corpus")
    manifest, skipped = build_manifest(
        fonts_dir, CORPUS_CHARS, stroke_table, out_root, image_size=IMAGE_SIZE
    )
    assert not skipped
    return manifest


def assert_tensors_equal(a: torch.Tensor, b: torch.Tensor):
    assert a.dtype == b.dtype and a.shape == b.shape
    assert torch.equal(a, b)


def ink_bbox(pixels: np.ndarray, threshold: float = 0.5):
    """(height, width) of the sub-threshold (ink) region."""
    ink = pixels < threshold
    rows = np.flatnonzero(ink.any(axis=1))
    cols = np.flatnonzero(ink.any(axis=0))
    if rows.size == 0:
        return 0, 0
    return rows[-1] - rows[0] + 1, cols[-1] - cols[0] + 1
