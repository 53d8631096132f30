"""Exception types shared by the decoders and the codec."""


class DecodeFailure(ValueError):
    """No string consistent with the received data and sketch exists.

    Raised for corrupted input, wrong residues, or more deletions than the
    decoder handles. The ``reason`` attribute is a short machine-readable tag.
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class RegularityViolation(DecodeFailure):
    """The two-deletion localization interval is wider than the block budget."""

    def __init__(self, detail=""):
        super().__init__("regularity-violated", detail)


class InvariantViolation(RuntimeError):
    """A proven structural bound was exceeded; indicates an implementation bug."""
