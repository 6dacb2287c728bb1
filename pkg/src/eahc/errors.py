"""Exception types raised on malformed or inconsistent compressed data.

Contract violations (bad arguments, out-of-range values) raise the usual
ValueError/KeyError/IndexError instead; these classes cover failures that
depend on the data being decoded.
"""


class CodecError(Exception):
    """Base class for all data-driven codec failures."""


class TruncationError(CodecError):
    """A read ran past the end of the available bits or bytes."""


class CorruptStreamError(CodecError):
    """A codeword stream could not be decoded in the active context."""


class CorruptHeaderError(CodecError):
    """Header fields or bitmaps are internally inconsistent."""


class TrailingGarbageError(CodecError):
    """Input continued after the expected end of the encoded data."""


class TableIncompleteError(CodecError):
    """A code table misses the context or symbol needed to continue."""
