"""Reference coders the adaptive codec is measured against.

Both report payload bits only (no codebook or dictionary headers): the
whole-string Huffman size is the optimal prefix-code cost of the symbol
frequencies, and the LZ78 size charges every phrase a fixed-width
(pointer, symbol) pair.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .adaptive_code import Alphabet
from .bitstream import BitReader, BitString, BitWriter
from .errors import CorruptStreamError
from .huffman import huffman


@dataclass(frozen=True)
class BaselineReport:
    codec: str
    payload_bits: int
    unit_count: int  # symbols for huffman, phrases for lz78


def huffman_stream_length(word: bytes) -> int:
    """Bits needed to Huffman-code `word` with one global code.

    Frequencies are taken in alphabet (ascending byte) order; the
    codebook itself is not counted.
    """
    if not word:
        raise ValueError("input must not be empty")
    counts = Counter(word)
    freqs = [counts[s] for s in sorted(counts)]
    codes = huffman(freqs)
    return sum(f * length for f, (_, length) in zip(freqs, codes))


def _widths(phrase_count: int, alphabet_size: int) -> tuple[int, int]:
    # fixed pointer width log2(t+1), symbol width log2(m)
    return (phrase_count.bit_length(), (alphabet_size - 1).bit_length())


def lz78_encode(word: bytes) -> tuple[BitString, int]:
    """Dictionary-phrase parse of `word`: (encoded bits, phrase count).

    Each phrase is the longest dictionary match plus one extension
    symbol, emitted as a fixed-width (pointer, symbol) pair; a leftover
    match at the end of the input is re-emitted from its parent entry so
    every phrase has both fields.
    """
    if not word:
        raise ValueError("input must not be empty")
    alphabet = Alphabet.from_bytes(word)
    dictionary: dict[bytes, int] = {}
    phrases: list[tuple[int, int]] = []
    current = b""
    for sym in word:
        candidate = current + bytes([sym])
        if candidate in dictionary:
            current = candidate
        else:
            phrases.append((dictionary.get(current, 0), alphabet.index(sym)))
            dictionary[candidate] = len(dictionary) + 1
            current = b""
    if current:
        # input ended inside a known phrase: re-derive it from its parent
        phrases.append((dictionary.get(current[:-1], 0), alphabet.index(current[-1])))

    t = len(phrases)
    pointer_width, symbol_width = _widths(t, len(alphabet))
    out = BitWriter()
    for pointer, sym_index in phrases:
        out.write_uint(pointer, pointer_width)
        out.write_uint(sym_index, symbol_width)
    return out.getvalue(), t


def lz78_decode(bits: BitString, phrase_count: int, alphabet: Alphabet) -> bytes:
    """Invert lz78_encode given the phrase count and alphabet."""
    pointer_width, symbol_width = _widths(phrase_count, len(alphabet))
    reader = BitReader(bits)
    entries: list[bytes] = []
    out = bytearray()
    for _ in range(phrase_count):
        pointer = reader.read_uint(pointer_width)
        sym_index = reader.read_uint(symbol_width)
        if sym_index >= len(alphabet):
            raise CorruptStreamError(f"symbol index {sym_index} outside the alphabet")
        sym = alphabet.symbol(sym_index)
        if pointer > len(entries):
            raise CorruptStreamError(
                f"phrase references entry {pointer} of {len(entries)}"
            )
        phrase = (entries[pointer - 1] if pointer else b"") + bytes([sym])
        entries.append(phrase)
        out += phrase
    return bytes(out)


def huffman_report(word: bytes) -> BaselineReport:
    return BaselineReport("huffman", huffman_stream_length(word), len(word))


def lz78_report(word: bytes) -> BaselineReport:
    bits, phrases = lz78_encode(word)
    return BaselineReport("lz78", len(bits), phrases)
