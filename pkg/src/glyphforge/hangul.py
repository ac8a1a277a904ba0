"""Hangul syllable decomposition into the 24 basic letters.

A precomposed syllable (U+AC00..U+D7A3) factors arithmetically into an
initial consonant, a medial vowel, and an optional final consonant. Compound
letters (tense consonants, consonant clusters, diphthongs) are further split
into the 24 basic components: 14 consonants followed by 10 vowels.
"""

from __future__ import annotations

SYLLABLE_BASE = 0xAC00
SYLLABLE_LAST = 0xD7A3
N_MEDIALS = 21
N_FINALS = 28  # 27 final consonants + "no final"

INITIALS = tuple("ㄱㄲㄴㄷㄸㄹㅁㅂㅃㅅㅆㅇㅈㅉㅊㅋㅌㅍㅎ")
MEDIALS = tuple("ㅏㅐㅑㅒㅓㅔㅕㅖㅗㅘㅙㅚㅛㅜㅝㅞㅟㅠㅡㅢㅣ")
FINALS = tuple("ㄱㄲㄳㄴㄵㄶㄷㄹㄺㄻㄼㄽㄾㄿㅀㅁㅂㅄㅅㅆㅇㅈㅊㅋㅌㅍㅎ")

# 14 basic consonants + 10 basic vowels, in dictionary order.
BASIC_COMPONENTS = tuple("ㄱㄴㄷㄹㅁㅂㅅㅇㅈㅊㅋㅌㅍㅎ" "ㅏㅑㅓㅕㅗㅛㅜㅠㅡㅣ")

_COMPOUND = {
    "ㄲ": "ㄱㄱ", "ㄸ": "ㄷㄷ", "ㅃ": "ㅂㅂ", "ㅆ": "ㅅㅅ", "ㅉ": "ㅈㅈ",
    "ㄳ": "ㄱㅅ", "ㄵ": "ㄴㅈ", "ㄶ": "ㄴㅎ", "ㄺ": "ㄹㄱ", "ㄻ": "ㄹㅁ",
    "ㄼ": "ㄹㅂ", "ㄽ": "ㄹㅅ", "ㄾ": "ㄹㅌ", "ㄿ": "ㄹㅍ", "ㅀ": "ㄹㅎ",
    "ㅄ": "ㅂㅅ",
    "ㅐ": "ㅏㅣ", "ㅒ": "ㅑㅣ", "ㅔ": "ㅓㅣ", "ㅖ": "ㅕㅣ",
    "ㅘ": "ㅗㅏ", "ㅙ": "ㅗㅏㅣ", "ㅚ": "ㅗㅣ",
    "ㅝ": "ㅜㅓ", "ㅞ": "ㅜㅓㅣ", "ㅟ": "ㅜㅣ", "ㅢ": "ㅡㅣ",
}

_COMPONENT_INDEX = {jamo: i for i, jamo in enumerate(BASIC_COMPONENTS)}


def is_syllable(codepoint: int) -> bool:
    return SYLLABLE_BASE <= codepoint <= SYLLABLE_LAST


def to_basic(jamo: str) -> str:
    """Expand one (possibly compound) letter into basic components."""
    return _COMPOUND.get(jamo, jamo)


def decompose(codepoint: int) -> str:
    """Return the basic components of a syllable, in pronunciation order."""
    if not is_syllable(codepoint):
        raise ValueError(f"U+{codepoint:04X} is not a precomposed Hangul syllable")
    index = codepoint - SYLLABLE_BASE
    final = index % N_FINALS
    medial = (index // N_FINALS) % N_MEDIALS
    initial = index // (N_FINALS * N_MEDIALS)
    parts = to_basic(INITIALS[initial]) + to_basic(MEDIALS[medial])
    if final:
        parts += to_basic(FINALS[final - 1])
    return parts


def component_counts(codepoint: int) -> tuple[int, ...]:
    """Count each of the 24 basic components in a syllable."""
    counts = [0] * len(BASIC_COMPONENTS)
    for jamo in decompose(codepoint):
        counts[_COMPONENT_INDEX[jamo]] += 1
    return tuple(counts)
