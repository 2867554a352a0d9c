"""Exception hierarchy shared by all codec layers."""


class CodecError(Exception):
    """Base class for every failure raised by this package."""


class PnmError(CodecError):
    """Malformed, unsupported, or truncated PNM file."""


class BitstreamError(CodecError):
    """Corrupt or truncated coded payload (base or extension layer)."""


class ContainerError(CodecError):
    """Malformed layered container."""


class BadMagicError(ContainerError):
    """Container does not start with the expected magic bytes."""


class LengthMismatchError(ContainerError):
    """Declared layer lengths do not match the actual file size."""


class ChecksumError(ContainerError):
    """Container header checksum does not validate."""


class MissingLayerError(ContainerError):
    """A required layer is absent (e.g. base-only decode of a base-less file)."""
