"""Hangul decomposition against an NFD-based oracle.

The package decomposes syllables by codepoint arithmetic in the U+AC00 block;
the oracle below goes through unicodedata's canonical decomposition into the
conjoining-jamo block instead, with its own compound-letter tables.
"""

import unicodedata

import pytest
from hypothesis import given, strategies as st

from glyphforge import hangul

# conjoining jamo -> compatibility jamo basic components
_CHOSEONG = {
    0x1100: "ㄱ", 0x1101: "ㄱㄱ", 0x1102: "ㄴ", 0x1103: "ㄷ", 0x1104: "ㄷㄷ",
    0x1105: "ㄹ", 0x1106: "ㅁ", 0x1107: "ㅂ", 0x1108: "ㅂㅂ", 0x1109: "ㅅ",
    0x110A: "ㅅㅅ", 0x110B: "ㅇ", 0x110C: "ㅈ", 0x110D: "ㅈㅈ", 0x110E: "ㅊ",
    0x110F: "ㅋ", 0x1110: "ㅌ", 0x1111: "ㅍ", 0x1112: "ㅎ",
}
_JUNGSEONG = {
    0x1161: "ㅏ", 0x1162: "ㅏㅣ", 0x1163: "ㅑ", 0x1164: "ㅑㅣ", 0x1165: "ㅓ",
    0x1166: "ㅓㅣ", 0x1167: "ㅕ", 0x1168: "ㅕㅣ", 0x1169: "ㅗ", 0x116A: "ㅗㅏ",
    0x116B: "ㅗㅏㅣ", 0x116C: "ㅗㅣ", 0x116D: "ㅛ", 0x116E: "ㅜ", 0x116F: "ㅜㅓ",
    0x1170: "ㅜㅓㅣ", 0x1171: "ㅜㅣ", 0x1172: "ㅠ", 0x1173: "ㅡ", 0x1174: "ㅡㅣ",
    0x1175: "ㅣ",
}
_JONGSEONG = {
    0x11A8: "ㄱ", 0x11A9: "ㄱㄱ", 0x11AA: "ㄱㅅ", 0x11AB: "ㄴ", 0x11AC: "ㄴㅈ",
    0x11AD: "ㄴㅎ", 0x11AE: "ㄷ", 0x11AF: "ㄹ", 0x11B0: "ㄹㄱ", 0x11B1: "ㄹㅁ",
    0x11B2: "ㄹㅂ", 0x11B3: "ㄹㅅ", 0x11B4: "ㄹㅌ", 0x11B5: "ㄹㅍ", 0x11B6: "ㄹㅎ",
    0x11B7: "ㅁ", 0x11B8: "ㅂ", 0x11B9: "ㅂㅅ", 0x11BA: "ㅅ", 0x11BB: "ㅅㅅ",
    0x11BC: "ㅇ", 0x11BD: "ㅈ", 0x11BE: "ㅊ", 0x11BF: "ㅋ", 0x11C0: "ㅌ",
    0x11C1: "ㅍ", 0x11C2: "ㅎ",
}


def nfd_components(codepoint: int) -> str:
    jamo = unicodedata.normalize("NFD", chr(codepoint))
    out = []
    tablemap = [_CHOSEONG, _JUNGSEONG, _JONGSEONG]
    for pos, ch in enumerate(jamo):
        out.append(tablemap[pos][ord(ch)])
    return "".join(out)


def test_spec_examples():
    assert hangul.decompose(ord("가")) == "ㄱㅏ"
    assert hangul.decompose(ord("각")) == "ㄱㅏㄱ"
    counts = hangul.component_counts(ord("각"))
    assert counts[hangul.BASIC_COMPONENTS.index("ㄱ")] == 2
    assert counts[hangul.BASIC_COMPONENTS.index("ㅏ")] == 1
    assert sum(counts) == 3


def test_compound_letters():
    assert hangul.decompose(ord("꽉")) == "ㄱㄱㅗㅏㄱ"  # ㄲ + ㅘ + ㄱ
    assert hangul.decompose(ord("닭")) == "ㄷㅏㄹㄱ"  # final ㄺ
    assert hangul.decompose(ord("의")) == "ㅇㅡㅣ"


def test_non_syllable_rejected():
    with pytest.raises(ValueError):
        hangul.decompose(0x41)
    with pytest.raises(ValueError):
        hangul.decompose(0x3131)  # bare jamo, not a precomposed syllable


@given(st.integers(hangul.SYLLABLE_BASE, hangul.SYLLABLE_LAST))
def test_matches_nfd_oracle(cp):
    assert hangul.decompose(cp) == nfd_components(cp)


def test_full_block_matches_nfd_oracle():
    mismatches = [
        cp
        for cp in range(hangul.SYLLABLE_BASE, hangul.SYLLABLE_LAST + 1)
        if hangul.decompose(cp) != nfd_components(cp)
    ]
    assert mismatches == []
