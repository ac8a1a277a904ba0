"""Dataset manifests: rendering image trees, train/test splits, JSON round-trip."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import DataError, ManifestError
from .glyphs import GlyphImage, codepoint_filename, load_png, render_glyph, save_png
from .tables import CountTable

log = logging.getLogger(__name__)

MANIFEST_VERSION = 1
MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class SplitSpec:
    protocol: str
    seed: int
    train_fonts: tuple[str, ...]
    test_fonts: tuple[str, ...]
    test_chars: tuple[int, ...]


@dataclass(frozen=True)
class DatasetManifest:
    font_ids: tuple[str, ...]
    codepoints: tuple[int, ...]
    image_size: int
    image_root: str
    table_path: str
    split: SplitSpec | None = None
    version: int = MANIFEST_VERSION
    pairs: frozenset[tuple[str, int]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.pairs is None:
            object.__setattr__(
                self,
                "pairs",
                frozenset((f, cp) for f in self.font_ids for cp in self.codepoints),
            )

    def has_pair(self, font_id: str, codepoint: int) -> bool:
        return (font_id, codepoint) in self.pairs

    def image_path(self, font_id: str, codepoint: int) -> Path:
        return Path(self.image_root) / font_id / codepoint_filename(codepoint)


@dataclass(frozen=True)
class DatasetView:
    """A (fonts x codepoints) slice of a manifest."""

    manifest: DatasetManifest
    fonts: tuple[str, ...]
    codepoints: tuple[int, ...]

    def pairs(self) -> list[tuple[str, int]]:
        return [
            (f, cp)
            for f in self.fonts
            for cp in self.codepoints
            if self.manifest.has_pair(f, cp)
        ]

    def image_path(self, font_id: str, codepoint: int) -> Path:
        return self.manifest.image_path(font_id, codepoint)

    def load_glyph(self, font_id: str, codepoint: int) -> GlyphImage:
        return load_png(self.image_path(font_id, codepoint), codepoint, font_id)

    def __len__(self) -> int:
        return len(self.pairs())


FONT_SUFFIXES = (".ttf", ".otf", ".ttc")


def discover_fonts(fonts_dir: str | Path) -> list[Path]:
    fonts = sorted(
        p for p in Path(fonts_dir).iterdir() if p.suffix.lower() in FONT_SUFFIXES
    )
    if not fonts:
        raise ManifestError(f"no font files found in {fonts_dir}")
    return fonts


def build_manifest(
    fonts_dir: str | Path,
    charset: list[int],
    table: CountTable,
    out_root: str | Path,
    image_size: int = 80,
) -> tuple[DatasetManifest, list[tuple[str, int]]]:
    """Render one PNG per (font, codepoint) pair under out_root.

    Pairs whose glyph cannot be rendered are skipped and logged; the skip list
    is returned alongside the manifest. Existing files are not re-rendered, so
    rebuilding into the same tree is idempotent.
    """
    missing = sorted(cp for cp in charset if cp not in table)
    if missing:
        names = ", ".join(f"U+{cp:04X}" for cp in missing[:10])
        raise ManifestError(
            f"{len(missing)} charset codepoint(s) absent from the count table: {names}"
        )
    fonts = discover_fonts(fonts_dir)
    out_root = Path(out_root)
    out_root.mkdir(parents=True, exist_ok=True)

    kept: dict[str, list[int]] = {}
    skipped: list[tuple[str, int]] = []
    for font_path in fonts:
        font_id = font_path.stem
        for cp in charset:
            target = out_root / font_id / codepoint_filename(cp)
            if target.is_file():
                kept.setdefault(font_id, []).append(cp)
                continue
            try:
                glyph = render_glyph(font_path, cp, canvas=image_size, font_id=font_id)
            except DataError as exc:
                log.warning("skipping %s U+%04X: %s", font_id, cp, exc)
                skipped.append((font_id, cp))
                continue
            save_png(glyph, target)
            kept.setdefault(font_id, []).append(cp)

    font_ids = tuple(sorted(kept))
    codepoints = tuple(sorted({cp for cps in kept.values() for cp in cps}))
    pairs = frozenset((f, cp) for f, cps in kept.items() for cp in cps)
    manifest = DatasetManifest(
        font_ids=font_ids,
        codepoints=codepoints,
        image_size=image_size,
        image_root=str(out_root),
        table_path=str(table.source) if table.source else "",
        pairs=pairs,
    )
    return manifest, skipped


def validate_manifest(manifest: DatasetManifest) -> None:
    """Check that every referenced pair resolves to an image file."""
    for font_id, cp in sorted(manifest.pairs):
        path = manifest.image_path(font_id, cp)
        if not path.is_file():
            raise ManifestError(f"missing image for ({font_id}, U+{cp:04X}): {path}")
    if manifest.split is not None:
        overlap = set(manifest.split.train_fonts) & set(manifest.split.test_fonts)
        if overlap:
            raise ManifestError(f"train/test fonts overlap: {sorted(overlap)}")


def split_dataset(
    manifest: DatasetManifest,
    protocol: str,
    seed: int = 0,
    n_test_fonts: int = 10,
    n_test_chars: int = 800,
    stroke_threshold: int = 15,
    table: CountTable | None = None,
    train_fonts: list[str] | None = None,
    test_fonts: list[str] | None = None,
    test_chars: list[int] | None = None,
) -> tuple[DatasetView, DatasetView, DatasetManifest]:
    """Split into disjoint-font train/test views.

    Protocols: "small" keeps the full charset on both sides and holds out
    n_test_fonts fonts; "large" trains on all characters and tests held-out
    fonts on characters whose total count meets stroke_threshold (capped at
    n_test_chars); "custom" takes explicit lists. Returns the two views plus
    the manifest with the split recorded.
    """
    fonts = list(manifest.font_ids)
    chars = list(manifest.codepoints)
    rng = random.Random(seed)

    if protocol == "small":
        if len(fonts) <= n_test_fonts:
            raise ManifestError(
                f"small protocol needs more than {n_test_fonts} fonts, manifest has {len(fonts)}"
            )
        shuffled = fonts[:]
        rng.shuffle(shuffled)
        test_f = tuple(sorted(shuffled[:n_test_fonts]))
        train_f = tuple(sorted(shuffled[n_test_fonts:]))
        test_c = tuple(chars)
    elif protocol == "large":
        if len(fonts) <= n_test_fonts:
            raise ManifestError(
                f"large protocol needs more than {n_test_fonts} fonts, manifest has {len(fonts)}"
            )
        if table is None:
            raise ManifestError("large protocol needs the count table to rank characters")
        shuffled = fonts[:]
        rng.shuffle(shuffled)
        test_f = tuple(sorted(shuffled[:n_test_fonts]))
        train_f = tuple(sorted(shuffled[n_test_fonts:]))
        hard = [cp for cp in chars if cp in table and table.total(cp) >= stroke_threshold]
        if not hard:
            raise ManifestError(
                f"no characters with total count >= {stroke_threshold} for the large protocol"
            )
        if len(hard) > n_test_chars:
            rng.shuffle(hard)
            hard = hard[:n_test_chars]
        test_c = tuple(sorted(hard))
    elif protocol == "custom":
        if train_fonts is None or test_fonts is None:
            raise ManifestError("custom protocol needs explicit train and test font lists")
        overlap = set(train_fonts) & set(test_fonts)
        if overlap:
            raise ManifestError(f"custom split fonts overlap: {sorted(overlap)}")
        unknown = (set(train_fonts) | set(test_fonts)) - set(fonts)
        if unknown:
            raise ManifestError(f"fonts not in manifest: {sorted(unknown)}")
        train_f = tuple(sorted(train_fonts))
        test_f = tuple(sorted(test_fonts))
        test_c = tuple(sorted(test_chars)) if test_chars is not None else tuple(chars)
    else:
        raise ManifestError(f"unknown split protocol {protocol!r}")

    spec = SplitSpec(
        protocol=protocol,
        seed=seed,
        train_fonts=train_f,
        test_fonts=test_f,
        test_chars=test_c,
    )
    stamped = replace(manifest, split=spec, pairs=manifest.pairs)
    train_view = DatasetView(manifest=stamped, fonts=train_f, codepoints=tuple(chars))
    test_view = DatasetView(manifest=stamped, fonts=test_f, codepoints=test_c)
    return train_view, test_view, stamped


def views_from_split(manifest: DatasetManifest) -> tuple[DatasetView, DatasetView]:
    if manifest.split is None:
        raise ManifestError("manifest has no recorded split")
    s = manifest.split
    train = DatasetView(manifest=manifest, fonts=s.train_fonts, codepoints=manifest.codepoints)
    test = DatasetView(manifest=manifest, fonts=s.test_fonts, codepoints=s.test_chars)
    return train, test


def save_manifest(manifest: DatasetManifest, path: str | Path) -> None:
    doc = {
        "version": manifest.version,
        "image_size": manifest.image_size,
        "image_root": manifest.image_root,
        "font_ids": list(manifest.font_ids),
        "codepoints": [f"U+{cp:04X}" for cp in manifest.codepoints],
        "table_path": manifest.table_path,
        "split": None
        if manifest.split is None
        else {
            "protocol": manifest.split.protocol,
            "seed": manifest.split.seed,
            "train_fonts": list(manifest.split.train_fonts),
            "test_fonts": list(manifest.split.test_fonts),
            "test_chars": [f"U+{cp:04X}" for cp in manifest.split.test_chars],
        },
        "pairs": sorted(f"{f}/{cp:04X}" for f, cp in manifest.pairs),
    }
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def load_manifest(path: str | Path) -> DatasetManifest:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    if doc.get("version") != MANIFEST_VERSION:
        raise ManifestError(f"unsupported manifest version {doc.get('version')!r}")
    split = None
    if doc.get("split") is not None:
        s = doc["split"]
        split = SplitSpec(
            protocol=s["protocol"],
            seed=s["seed"],
            train_fonts=tuple(s["train_fonts"]),
            test_fonts=tuple(s["test_fonts"]),
            test_chars=tuple(int(c[2:], 16) for c in s["test_chars"]),
        )
    pairs = frozenset(
        (p.rsplit("/", 1)[0], int(p.rsplit("/", 1)[1], 16)) for p in doc["pairs"]
    )
    return DatasetManifest(
        font_ids=tuple(doc["font_ids"]),
        codepoints=tuple(int(c[2:], 16) for c in doc["codepoints"]),
        image_size=doc["image_size"],
        image_root=doc["image_root"],
        table_path=doc["table_path"],
        split=split,
        pairs=pairs,
    )
