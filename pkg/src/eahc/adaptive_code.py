"""Per-context code tables and their homomorphic string extension.

A table of order n assigns every symbol a codeword in every stored
context (a context is the string of up to n preceding symbols, including
the empty context for the first position).  If each context's codeword
set is a prefix code, the extension of the table to whole strings is
injective, so encoded strings decode uniquely.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .bitstream import BitReader, BitString, BitWriter
from .errors import (
    CorruptStreamError,
    TableIncompleteError,
    TrailingGarbageError,
    TruncationError,
)


class Alphabet:
    """An ordered set of distinct byte values with a symbol<->index map."""

    __slots__ = ("_symbols", "_index")

    def __init__(self, symbols: Iterable[int]):
        syms = tuple(symbols)
        if not 1 <= len(syms) <= 256:
            raise ValueError("alphabet must hold between 1 and 256 symbols")
        if any(not 0 <= s <= 255 for s in syms):
            raise ValueError("symbols must be byte values")
        if len(set(syms)) != len(syms):
            raise ValueError("symbols must be distinct")
        self._symbols = syms
        self._index = {s: i for i, s in enumerate(syms)}

    @classmethod
    def from_bytes(cls, data: bytes) -> "Alphabet":
        """The distinct bytes of `data` in ascending value order."""
        if not data:
            raise ValueError("cannot derive an alphabet from empty data")
        return cls(sorted(set(data)))

    def index(self, symbol: int) -> int:
        return self._index[symbol]

    def symbol(self, index: int) -> int:
        return self._symbols[index]

    def to_bytes(self) -> bytes:
        return bytes(self._symbols)

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self):
        return iter(self._symbols)

    def __contains__(self, symbol: int) -> bool:
        return symbol in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return f"Alphabet({list(self._symbols)!r})"


class CodeTable:
    """Codewords per (symbol, context) for contexts up to length `order`.

    `contexts` maps each stored context (a bytes key; b"" is the empty
    context) to a full symbol -> BitString map.  Tables are immutable
    after construction and safe to share.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        order: int,
        contexts: Mapping[bytes, Mapping[int, BitString]],
    ):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.alphabet = alphabet
        self.order = order
        frozen: dict[bytes, dict[int, BitString]] = {}
        for ctx, column in contexts.items():
            ctx = bytes(ctx)
            if len(ctx) > order:
                raise ValueError(f"context {ctx!r} longer than order {order}")
            if any(s not in alphabet for s in ctx):
                raise ValueError(f"context {ctx!r} uses symbols outside the alphabet")
            if set(column) != set(alphabet):
                raise ValueError(
                    f"context {ctx!r} must map every alphabet symbol to a codeword"
                )
            if any(len(code) == 0 for code in column.values()):
                raise ValueError("codewords must be nonempty")
            frozen[ctx] = dict(column)
        self._contexts = frozen
        self._decode_maps: dict[bytes, tuple[dict[tuple[int, int], int], int]] = {}

    def context(self, ctx: bytes) -> dict[int, BitString]:
        return self._contexts[ctx]

    def __contains__(self, ctx: bytes) -> bool:
        return ctx in self._contexts

    def contexts(self):
        return self._contexts.keys()

    def _decoder(self, ctx: bytes) -> tuple[dict[tuple[int, int], int], int]:
        cached = self._decode_maps.get(ctx)
        if cached is None:
            column = self._contexts[ctx]
            table = {(code.uint(), len(code)): sym for sym, code in column.items()}
            cached = (table, max(len(code) for code in column.values()))
            self._decode_maps[ctx] = cached
        return cached


def _context_at(word: bytes, t: int, order: int) -> bytes:
    # the min(t, order) symbols preceding position t
    return word[max(0, t - order) : t]


def extend(table: CodeTable, word: bytes) -> BitString:
    """Encode a string symbol by symbol under its running context.

    Position t uses the codeword of word[t] in the context of the
    previous min(t, order) symbols; the empty string encodes to the
    empty BitString.
    """
    out = BitWriter()
    for t, sym in enumerate(word):
        ctx = _context_at(word, t, table.order)
        if ctx not in table:
            raise TableIncompleteError(f"no column for context {ctx!r}")
        column = table.context(ctx)
        if sym not in column:
            raise TableIncompleteError(
                f"no codeword for symbol {sym} in context {ctx!r}"
            )
        out.write_bits(column[sym])
    return out.getvalue()


def validate_prefix_condition(table: CodeTable) -> bool:
    """True iff every stored context's codewords form a prefix code.

    Duplicate codewords within a context also fail: two symbols sharing
    a codeword cannot decode uniquely.
    """
    for ctx in table.contexts():
        words = sorted(code.to01() for code in table.context(ctx).values())
        for a, b in zip(words, words[1:]):
            if b.startswith(a):
                return False
    return True


def decode_with_table(table: CodeTable, bits: BitString, count: int) -> bytes:
    """Invert `extend`: recover exactly `count` symbols from `bits`.

    Raises CorruptStreamError when the bits do not match any codeword of
    the current context, TruncationError when they run out mid-codeword,
    and TrailingGarbageError when bits remain after `count` symbols.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    reader = BitReader(bits)
    out = bytearray()
    for _ in range(count):
        ctx = bytes(out[max(0, len(out) - table.order) :])
        if ctx not in table:
            raise TableIncompleteError(f"no column for context {ctx!r}")
        decoder, max_len = table._decoder(ctx)
        acc = 0
        length = 0
        while True:
            if reader.remaining() == 0:
                raise TruncationError("bit stream ended inside a codeword")
            acc = (acc << 1) | reader.read_bit()
            length += 1
            sym = decoder.get((acc, length))
            if sym is not None:
                break
            if length >= max_len:
                raise CorruptStreamError(
                    f"no codeword matches in context {ctx!r}"
                )
        out.append(sym)
    if reader.remaining():
        raise TrailingGarbageError(
            f"{reader.remaining()} bits left after {count} symbols"
        )
    return bytes(out)


__all__ = [
    "Alphabet",
    "CodeTable",
    "extend",
    "validate_prefix_condition",
    "decode_with_table",
]
