"""Glyph rasterization and PNG round-trip.

Images are square single-channel rasters in [0, 1]: 1.0 is the white
background, 0.0 is full ink. Rendering is deterministic: the ink bounding box
is scaled to fit the canvas minus the margin and centered on it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw, ImageFont
from fontTools.ttLib import TTFont

from .errors import DataError, MissingGlyphError

MIN_CANVAS = 16
DEFAULT_CANVAS = 80
DEFAULT_MARGIN = 0.05

# Oversampled size at which the raw glyph mask is drawn before rescaling.
_RASTER_SIZE = 256


@dataclass
class GlyphImage:
    """Single-channel raster of one character."""

    pixels: np.ndarray  # (H, W) float32 in [0, 1]
    codepoint: int
    font_id: str

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.float32)
        if self.pixels.ndim != 2 or self.pixels.shape[0] != self.pixels.shape[1]:
            raise DataError(f"glyph image must be square, got shape {self.pixels.shape}")
        if self.pixels.min() < 0.0 or self.pixels.max() > 1.0:
            raise DataError("glyph pixel values must lie in [0, 1]")

    @property
    def size(self) -> int:
        return self.pixels.shape[0]


class _FontHandle:
    """Cached per-font state: cmap, .notdef outline signature, PIL face."""

    def __init__(self, path: str):
        self.path = path
        tt = TTFont(path, lazy=True)
        self.cmap = tt.getBestCmap()
        self.notdef_sig = _outline_signature(tt, ".notdef")
        self._tt = tt
        self.pil = ImageFont.truetype(path, size=_RASTER_SIZE)

    def glyph_signature(self, codepoint: int) -> bytes | None:
        return _outline_signature(self._tt, self.cmap[codepoint])


def _outline_signature(tt: TTFont, glyph_name: str) -> bytes | None:
    try:
        if "glyf" in tt:
            glyf = tt["glyf"]
            if glyph_name not in glyf:
                return None
            return bytes(glyf[glyph_name].compile(glyf))
        if "CFF " in tt:
            charstrings = tt["CFF "].cff.topDictIndex[0].CharStrings
            if glyph_name not in charstrings:
                return None
            return bytes(charstrings[glyph_name].bytecode or b"")
    except Exception:
        return None
    return None


@functools.lru_cache(maxsize=64)
def _font_handle(path: str, mtime_ns: int) -> _FontHandle:
    return _FontHandle(path)


def _load_font(font_path: str | Path) -> _FontHandle:
    path = Path(font_path)
    if not path.is_file():
        raise DataError(f"font file not found: {path}")
    return _font_handle(str(path), path.stat().st_mtime_ns)


def render_glyph(
    font_path: str | Path,
    codepoint: int,
    canvas: int = DEFAULT_CANVAS,
    margin: float = DEFAULT_MARGIN,
    font_id: str | None = None,
) -> GlyphImage:
    """Rasterize one character: black ink, white background, centered.

    Raises MissingGlyphError when the font has no cmap entry for the
    codepoint, when the mapped glyph is the .notdef box (tofu), or when the
    rendered glyph has no ink (e.g. whitespace).
    """
    if canvas < MIN_CANVAS:
        raise DataError(f"canvas must be >= {MIN_CANVAS}, got {canvas}")
    handle = _load_font(font_path)
    if codepoint not in handle.cmap:
        raise MissingGlyphError(
            f"{Path(font_path).name} has no glyph for U+{codepoint:04X}"
        )
    sig = handle.glyph_signature(codepoint)
    if sig is not None and sig == handle.notdef_sig:
        raise MissingGlyphError(
            f"{Path(font_path).name} maps U+{codepoint:04X} to the .notdef box"
        )

    pad = _RASTER_SIZE
    board = Image.new("L", (3 * pad, 3 * pad), 0)
    ImageDraw.Draw(board).text((pad, pad), chr(codepoint), fill=255, font=handle.pil)
    ink = np.asarray(board)
    rows = np.flatnonzero(ink.max(axis=1))
    cols = np.flatnonzero(ink.max(axis=0))
    if rows.size == 0:
        raise MissingGlyphError(
            f"{Path(font_path).name} renders U+{codepoint:04X} blank"
        )
    crop = board.crop((cols[0], rows[0], cols[-1] + 1, rows[-1] + 1))

    box = canvas - 2 * max(1, round(canvas * margin))
    scale = box / max(crop.width, crop.height)
    tw = max(1, round(crop.width * scale))
    th = max(1, round(crop.height * scale))
    crop = crop.resize((tw, th), Image.LANCZOS)

    out = np.zeros((canvas, canvas), dtype=np.uint8)
    y0 = (canvas - th) // 2
    x0 = (canvas - tw) // 2
    out[y0 : y0 + th, x0 : x0 + tw] = np.asarray(crop)
    pixels = 1.0 - out.astype(np.float32) / 255.0
    name = font_id if font_id is not None else Path(font_path).stem
    return GlyphImage(pixels=pixels, codepoint=codepoint, font_id=name)


def codepoint_filename(codepoint: int) -> str:
    return f"U+{codepoint:04X}.png"


def save_png(glyph: GlyphImage, path: str | Path) -> None:
    """Write as 8-bit grayscale PNG (lossless for /255-quantized pixels)."""
    data = np.round(glyph.pixels * 255.0).astype(np.uint8)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(data, mode="L").save(path)


def load_png(path: str | Path, codepoint: int | None = None, font_id: str | None = None) -> GlyphImage:
    """Read a grayscale PNG; codepoint/font default to the U+XXXX.png layout."""
    path = Path(path)
    img = Image.open(path).convert("L")
    pixels = np.asarray(img, dtype=np.float32) / 255.0
    if codepoint is None:
        stem = path.stem
        if not stem.upper().startswith("U+"):
            raise DataError(f"cannot infer codepoint from file name {path.name!r}")
        codepoint = int(stem[2:], 16)
    if font_id is None:
        font_id = path.parent.name
    return GlyphImage(pixels=pixels, codepoint=codepoint, font_id=font_id)
