"""Order-n context-modeled Huffman codec and its container format.

The encoder makes two passes: the first counts, for every length-n
context window, how often each symbol follows it; the second builds a
Huffman code per context over those counts and emits one codeword per
input position.  Five bit components are produced:

    prefix        the first min(h, n) symbol indices, verbatim
    context_map   one bit per possible context (m**n bits): occurs or not
    successor_map per (symbol, occurring context): does it follow there?
    freq_table    fixed-width occurrence counts for every marked pair
    stream        the per-context codewords for positions n+1 .. h

For order 1 a context followed by itself is recorded on the diagonal of
successor_map (symbol index == context index), mirroring the aux-vertex
routing of the transition graph.  The decoder rebuilds the identical
code tables from the bitmaps and counts alone; it never sees the input.

Container wire format (all integers little-endian):

    [4B] magic "EAH1"
    [1B] version (1)
    [1B] order n
    [1B] alphabet size minus 1
    [mB] alphabet bytes in index order
    [8B] original length h
    [1B] freq_table field width (0 when h <= n)
    [..] payload bits prefix|context_map|successor_map|freq_table|stream,
         packed MSB-first, final byte zero-padded

Note the context map is m**n bits: keep the order small for large
alphabets (the command-line tool caps it via EAHC_MAX_ORDER).
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass

from .adaptive_code import Alphabet
from .bitstream import EMPTY, BitReader, BitString, BitWriter
from .errors import (
    CorruptHeaderError,
    CorruptStreamError,
    TrailingGarbageError,
    TruncationError,
)
from .huffman import code_pairs

MAGIC = b"EAH1"
VERSION = 1


@dataclass(frozen=True)
class Header:
    order: int
    alphabet: Alphabet
    length: int  # original symbol count h


@dataclass(frozen=True)
class EahPayload:
    prefix: BitString
    context_map: BitString
    successor_map: BitString
    freq_table: BitString
    stream: BitString
    freq_width: int  # bit width of each freq_table entry

    def components(self) -> tuple[BitString, BitString, BitString, BitString, BitString]:
        return (
            self.prefix,
            self.context_map,
            self.successor_map,
            self.freq_table,
            self.stream,
        )

    def total_bits(self) -> int:
        return sum(len(c) for c in self.components())


class _ContextCode:
    """Per-context successor order, frequencies, and Huffman codewords."""

    __slots__ = ("encode_map", "decode_map", "max_code_len", "stream_bits", "solo")

    def __init__(self, order: int, context_index: int, pairs: list[tuple[int, int]]):
        # pairs: (symbol index, frequency), symbol index ascending; for
        # order 1 the diagonal entry is the repeat successor and codes last
        if len(pairs) == 1:
            # sole successor: codeword "0"; the maps are never consulted
            i, f = pairs[0]
            self.encode_map = None
            self.decode_map = None
            self.max_code_len = 1
            self.stream_bits = f
            self.solo = i
            return
        self.solo = None
        if order == 1:
            base = [p for p in pairs if p[0] != context_index]
            aux = [p for p in pairs if p[0] == context_index]
            pairs = base + aux
        self.encode_map: dict[int, tuple[int, int]] = {}
        self.decode_map: dict[tuple[int, int], int] = {}
        codes = code_pairs([f for _, f in pairs])
        self.max_code_len = 0
        self.stream_bits = 0
        for (i, f), (value, length) in zip(pairs, codes):
            self.encode_map[i] = (value, length)
            self.decode_map[(value, length)] = i
            self.max_code_len = max(self.max_code_len, length)
            self.stream_bits += f * length


def _index_table(alphabet: Alphabet) -> list[int]:
    table = [0] * 256
    for i, s in enumerate(alphabet):
        table[s] = i
    return table


def _successor_counts(
    word: bytes, order: int, alphabet: Alphabet
) -> dict[int, dict[int, int]]:
    """Map context index -> {successor symbol index -> count}."""
    idx = _index_table(alphabet)
    m = len(alphabet)
    n = order
    counts: dict[int, dict[int, int]] = {}
    j = 0
    for t in range(n):
        j = j * m + idx[word[t]]
    tail = m ** (n - 1)
    for p in range(len(word) - n):
        i = idx[word[p + n]]
        row = counts.get(j)
        if row is None:
            row = counts[j] = {}
        row[i] = row.get(i, 0) + 1
        j = (j % tail) * m + i
    return counts


def _build_codes(
    order: int, counts: dict[int, dict[int, int]]
) -> dict[int, _ContextCode]:
    return {
        j: _ContextCode(order, j, sorted(row.items()))
        for j, row in counts.items()
    }


def _set_bit(buf: bytearray, pos: int) -> None:
    buf[pos >> 3] |= 0x80 >> (pos & 7)


_BIT_OFFSETS = [
    tuple(k for k in range(8) if byte & (0x80 >> k)) for byte in range(256)
]


def _scan_set_bits(bits: BitString) -> list[int]:
    """Ascending positions of set bits; fast on sparse bitmaps."""
    data = bits.to_bytes()
    out = []
    append = out.append
    offsets = _BIT_OFFSETS
    for match in re.finditer(rb"[^\x00]", data):
        p = match.start()
        base = p * 8
        for k in offsets[data[p]]:
            append(base + k)
    return out


def encode(word: bytes, order: int) -> tuple[EahPayload, Header]:
    """Encode a byte string at the given order.

    The alphabet is the set of distinct bytes of `word` in ascending
    value order.  Raises ValueError for empty input or order < 1.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    word = bytes(word)
    if not word:
        raise ValueError("cannot encode an empty string")
    alphabet = Alphabet.from_bytes(word)
    m = len(alphabet)
    n = order
    h = len(word)
    header = Header(n, alphabet, h)
    sym_width = (m - 1).bit_length()

    prefix = BitWriter()
    idx = _index_table(alphabet)
    for t in range(min(h, n)):
        prefix.write_uint(idx[word[t]], sym_width)

    num_contexts = m**n
    context_buf = bytearray((num_contexts + 7) // 8)
    if h <= n:
        return (
            EahPayload(
                prefix.getvalue(),
                BitString(bytes(context_buf), num_contexts),
                EMPTY,
                EMPTY,
                EMPTY,
                0,
            ),
            header,
        )

    counts = _successor_counts(word, n, alphabet)
    codes = _build_codes(n, counts)
    set_js = sorted(counts)
    for j in set_js:
        _set_bit(context_buf, j)
    rank = {j: r for r, j in enumerate(set_js)}

    marked = sorted(
        (i, j, f) for j, row in counts.items() for i, f in row.items()
    )
    succ_buf = bytearray((m * len(set_js) + 7) // 8)
    for i, j, _ in marked:
        _set_bit(succ_buf, i * len(set_js) + rank[j])

    freq_width = max(f for _, _, f in marked).bit_length()
    freq_table = BitWriter()
    for _, _, f in marked:
        freq_table.write_uint(f, freq_width)

    stream = BitWriter()
    j = 0
    for t in range(n):
        j = j * m + idx[word[t]]
    tail = m ** (n - 1)
    for p in range(n, h):
        i = idx[word[p]]
        entry = codes[j]
        if entry.solo is not None:
            stream.write_uint(0, 1)
        else:
            value, width = entry.encode_map[i]
            stream.write_uint(value, width)
        j = (j % tail) * m + i

    payload = EahPayload(
        prefix.getvalue(),
        BitString(bytes(context_buf), num_contexts),
        BitString(bytes(succ_buf), m * len(set_js)),
        freq_table.getvalue(),
        stream.getvalue(),
        freq_width,
    )
    return payload, header


def _codes_from_maps(
    header: Header,
    payload: EahPayload,
    set_js: list[int] | None = None,
    marked_positions: list[int] | None = None,
) -> dict[int, _ContextCode]:
    """Rebuild every context's code from the bitmaps and counts alone.

    Callers that already scanned the bitmaps may pass the set-bit
    positions to avoid a second pass.
    """
    m = len(header.alphabet)
    n = header.order
    h = header.length
    if len(payload.context_map) != m**n:
        raise CorruptHeaderError(
            f"context map holds {len(payload.context_map)} bits, expected {m**n}"
        )
    if set_js is None:
        set_js = _scan_set_bits(payload.context_map)
    if h <= n:
        if set_js:
            raise CorruptHeaderError("context map set although the input fits the prefix")
        return {}
    if not set_js:
        raise CorruptHeaderError("no context is marked but symbols follow the prefix")
    s = len(set_js)
    if len(payload.successor_map) != m * s:
        raise CorruptHeaderError(
            f"successor map holds {len(payload.successor_map)} bits, expected {m * s}"
        )
    if marked_positions is None:
        marked_positions = _scan_set_bits(payload.successor_map)
    if not marked_positions:
        raise CorruptHeaderError("no successor is marked")
    if payload.freq_width < 1:
        raise CorruptHeaderError("frequency field width must be positive")
    if len(payload.freq_table) != payload.freq_width * len(marked_positions):
        raise CorruptHeaderError(
            f"frequency table holds {len(payload.freq_table)} bits, expected "
            f"{payload.freq_width * len(marked_positions)}"
        )

    width = payload.freq_width
    mask = (1 << width) - 1
    packed = payload.freq_table.uint()
    freqs = []
    for _ in marked_positions:  # fields extracted back to front
        freqs.append(packed & mask)
        packed >>= width
    freqs.reverse()
    per_context: dict[int, list[tuple[int, int]]] = {j: [] for j in set_js}
    total = 0
    for pos, f in zip(marked_positions, freqs):  # ascending == symbol-major order
        if f < 1:
            raise CorruptHeaderError("marked successor with zero frequency")
        i, r = divmod(pos, s)
        per_context[set_js[r]].append((i, f))
        total += f
    if total != h - n:
        raise CorruptHeaderError(
            f"frequencies sum to {total}, expected {h - n}"
        )
    return {j: _ContextCode(n, j, pairs) for j, pairs in per_context.items() if pairs}


def _read_prefix(header: Header, prefix: BitString) -> tuple[bytearray, int]:
    """Recover the verbatim first symbols; returns them and the context index."""
    m = len(header.alphabet)
    sym_width = (m - 1).bit_length()
    count = min(header.length, header.order)
    if len(prefix) != count * sym_width:
        raise CorruptHeaderError(
            f"prefix holds {len(prefix)} bits, expected {count * sym_width}"
        )
    reader = BitReader(prefix)
    out = bytearray()
    j = 0
    for _ in range(count):
        i = reader.read_uint(sym_width)
        if i >= m:
            raise CorruptHeaderError(f"symbol index {i} outside alphabet of size {m}")
        out.append(header.alphabet.symbol(i))
        j = j * m + i
    return out, j


def decode(payload: EahPayload, header: Header) -> bytes:
    """Reconstruct the original bytes from a payload and its header."""
    m = len(header.alphabet)
    n = header.order
    h = header.length
    out, j = _read_prefix(header, payload.prefix)
    codes = _codes_from_maps(header, payload)
    if h <= n:
        if len(payload.stream):
            raise TrailingGarbageError("codeword stream present although unused")
        return bytes(out)

    data = payload.stream.to_bytes()
    nbits = len(payload.stream)
    pos = 0
    tail = m ** (n - 1)
    symbols = header.alphabet.to_bytes()
    codes_get = codes.get
    for _ in range(h - n):
        table = codes_get(j)
        if table is None:
            raise CorruptStreamError(f"no code table for context index {j}")
        if pos >= nbits:
            raise TruncationError("codeword stream ended early")
        i = table.solo
        if i is not None:
            if (data[pos >> 3] >> (7 - (pos & 7))) & 1:
                raise CorruptStreamError(
                    f"undecodable codeword in context index {j}"
                )
            pos += 1
        else:
            acc = 0
            length = 0
            decode_map = table.decode_map
            while True:
                if pos >= nbits:
                    raise TruncationError("codeword stream ended early")
                acc = (acc << 1) | ((data[pos >> 3] >> (7 - (pos & 7))) & 1)
                pos += 1
                length += 1
                i = decode_map.get((acc, length))
                if i is not None:
                    break
                if length >= table.max_code_len:
                    raise CorruptStreamError(
                        f"undecodable codeword in context index {j}"
                    )
        out.append(symbols[i])
        j = (j % tail) * m + i
    if pos != nbits:
        raise TrailingGarbageError(f"{nbits - pos} bits left after the last symbol")
    return bytes(out)


def leahn_length(word: bytes, order: int) -> int:
    """Total encoded size in bits: the sum of the five component lengths."""
    payload, _ = encode(word, order)
    return payload.total_bits()


def serialize(payload: EahPayload, header: Header) -> bytes:
    """Pack a payload and header into the bit-exact container format."""
    alphabet = header.alphabet.to_bytes()
    out = bytearray()
    out += MAGIC
    out += struct.pack("<BBB", VERSION, header.order, len(alphabet) - 1)
    out += alphabet
    out += struct.pack("<Q", header.length)
    out += struct.pack("<B", payload.freq_width)
    bits = BitWriter()
    for component in payload.components():
        bits.write_bits(component)
    out += bits.getvalue().to_bytes()
    return bytes(out)


def deserialize(blob: bytes) -> tuple[EahPayload, Header]:
    """Parse a container back into its payload and header.

    The component boundaries are recovered from the bits themselves: the
    context map fixes the successor map's size, which fixes the frequency
    table's, and the rebuilt code tables fix the stream's.
    """
    if len(blob) < 7:
        raise TruncationError("container shorter than its fixed header")
    if blob[:4] != MAGIC:
        raise CorruptHeaderError(f"bad magic {blob[:4]!r}")
    version, order, m_minus_1 = struct.unpack_from("<BBB", blob, 4)
    if version != VERSION:
        raise CorruptHeaderError(f"unsupported version {version}")
    if order < 1:
        raise CorruptHeaderError("order must be >= 1")
    m = m_minus_1 + 1
    end = 7 + m + 9
    if len(blob) < end:
        raise TruncationError("container truncated inside the header")
    try:
        alphabet = Alphabet(blob[7 : 7 + m])
    except ValueError as exc:
        raise CorruptHeaderError(str(exc)) from None
    (h,) = struct.unpack_from("<Q", blob, 7 + m)
    freq_width = blob[7 + m + 8]
    header = Header(order, alphabet, h)

    reader = BitReader(blob[end:])
    sym_width = (m - 1).bit_length()
    try:
        prefix = reader.read_bits(min(h, order) * sym_width)
        context_map = reader.read_bits(m**order)
        set_js = _scan_set_bits(context_map)
        successor_map = reader.read_bits(m * len(set_js))
        marked_positions = _scan_set_bits(successor_map)
        freq_table = reader.read_bits(freq_width * len(marked_positions))
    except TruncationError:
        raise TruncationError("container truncated inside the payload") from None

    partial = EahPayload(
        prefix, context_map, successor_map, freq_table, EMPTY, freq_width
    )
    codes = _codes_from_maps(header, partial, set_js, marked_positions)
    stream_bits = sum(c.stream_bits for c in codes.values())
    try:
        stream = reader.read_bits(stream_bits)
    except TruncationError:
        raise TruncationError("container truncated inside the codeword stream") from None
    if reader.remaining() >= 8 or reader.read_uint(reader.remaining()):
        raise TrailingGarbageError("container continues past the payload")

    payload = EahPayload(
        prefix, context_map, successor_map, freq_table, stream, freq_width
    )
    return payload, header


def compress(word: bytes, order: int) -> bytes:
    """Encode `word` and pack it into a container."""
    payload, header = encode(word, order)
    return serialize(payload, header)


def decompress(blob: bytes) -> bytes:
    """Unpack a container and reconstruct the original bytes."""
    payload, header = deserialize(blob)
    return decode(payload, header)
