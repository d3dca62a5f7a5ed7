"""Render the seed glyph fixtures (P5 grayscale) and their manifests.

Fonts come from the fontsource npm packages:

    npm pack @fontsource/noto-sans-kannada @fontsource/anek-kannada @fontsource/baloo-tamma-2

Unpack each tarball under FONT_DIR/<package-name>/ and run

    python3 render_seeds.py FONT_DIR

from this directory. Output is deterministic for a given Pillow/FreeType build.
"""

import hashlib
import json
import os
import sys

from PIL import Image, ImageDraw, ImageFont

NUMERALS = [chr(c) for c in range(0x0CE6, 0x0CF0)]
VOWELS = ["ಅ", "ಆ", "ಇ", "ಈ", "ಉ", "ಊ", "ಋ", "ೠ", "ಎ", "ಏ", "ಐ", "ಒ", "ಓ", "ಔ"]

# (style tag, package directory, weight)
STYLES = [
    ("noto-400", "fontsource-noto-sans-kannada-5.3.0", "noto-sans-kannada", 400),
    ("noto-700", "fontsource-noto-sans-kannada-5.3.0", "noto-sans-kannada", 700),
    ("noto-200", "fontsource-noto-sans-kannada-5.3.0", "noto-sans-kannada", 200),
    ("anek-300", "fontsource-anek-kannada-5.3.0", "anek-kannada", 300),
    ("anek-700", "fontsource-anek-kannada-5.3.0", "anek-kannada", 700),
    ("baloo-400", "fontsource-baloo-tamma-2-5.3.0", "baloo-tamma-2", 400),
    ("baloo-800", "fontsource-baloo-tamma-2-5.3.0", "baloo-tamma-2", 800),
]

FONT_PX = 72
MARGIN = 6
SIZE_PT = 50


def render(font, ch):
    left, top, right, bottom = font.getbbox(ch)
    w = right - left + 2 * MARGIN
    h = bottom - top + 2 * MARGIN
    img = Image.new("L", (w, h), 255)
    ImageDraw.Draw(img).text((MARGIN - left, MARGIN - top), ch, font=font, fill=0)
    return img


def write_pgm(path, img):
    data = b"P5\n%d %d\n255\n" % img.size + img.tobytes()
    with open(path, "wb") as f:
        f.write(data)
    return hashlib.sha256(data).hexdigest()


def build(font_dir, name, prefix, chars):
    out_dir = os.path.join(name)
    os.makedirs(out_dir, exist_ok=True)
    samples = []
    for tag, pkg, family, weight in STYLES:
        path = os.path.join(
            font_dir, pkg, "package", "files", f"{family}-kannada-{weight}-normal.woff"
        )
        font = ImageFont.truetype(path, FONT_PX)
        for idx, ch in enumerate(chars):
            file_name = f"{prefix}{idx:02d}_{tag}.pgm"
            digest = write_pgm(os.path.join(out_dir, file_name), render(font, ch))
            samples.append(
                {
                    "path": file_name,
                    "label": ch,
                    "style": tag,
                    "size_pt": SIZE_PT,
                    "sha256": digest,
                }
            )
    manifest = {"version": 1, "classes": chars, "samples": samples}
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, ensure_ascii=False, indent=2)
        f.write("\n")


if __name__ == "__main__":
    font_dir = sys.argv[1]
    build(font_dir, "numerals", "num", NUMERALS)
    build(font_dir, "vowels", "vow", VOWELS)
