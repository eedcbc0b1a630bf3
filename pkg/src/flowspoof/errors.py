"""Exception types shared across the toolkit."""


class FlowSpoofError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(FlowSpoofError):
    """Invalid configuration value (bad estimator name, non-positive size, ...)."""


class DataError(FlowSpoofError):
    """Input data violates a precondition (empty set, single label, ...)."""


class InsufficientFramesError(DataError):
    """A video yielded fewer frames than the operation requires."""


class DecodeError(DataError):
    """A video or image file could not be decoded."""


class ShapeError(FlowSpoofError):
    """Array shapes are inconsistent with each other or with the model."""


class SizeError(ShapeError):
    """An image is too small for the requested window."""


class FormatError(FlowSpoofError):
    """A file does not conform to its on-disk format."""


class NumericError(FlowSpoofError):
    """A value is non-finite or outside its mathematical domain."""


class DivergenceError(FlowSpoofError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch, batch, message=None):
        self.epoch = epoch
        self.batch = batch
        super().__init__(
            message or f"non-finite loss at epoch {epoch}, batch {batch}"
        )


class DatasetUnavailableError(DataError):
    """A benchmark dataset is not present in the local cache."""
