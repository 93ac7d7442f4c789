"""Exception types shared across tablekit modules."""


class TablekitError(Exception):
    """Base class for all tablekit errors."""


class UnknownToken(TablekitError):
    """A sequence contains <unk> where a concrete token is required."""


class MalformedStructure(TablekitError):
    """Token sequence violates the table grammar."""

    def __init__(self, position: int, reason: str):
        self.position = position
        self.reason = reason
        super().__init__(f"position {position}: {reason}")


class InvalidGroundTruth(TablekitError):
    """Ground-truth sequence does not parse."""


class EmptyCorpus(TablekitError):
    """Corpus-level evaluation received no samples."""


class ShapeMismatch(TablekitError):
    """Tensor shapes incompatible with the requested operation."""


class AllIgnored(TablekitError):
    """Every position was excluded from a loss; nothing to average."""


class InvalidSchedule(TablekitError):
    """Learning-rate schedule arguments are inconsistent."""


class InvalidTemperature(TablekitError):
    """Gumbel-Softmax temperature must be positive."""


class InvalidRatio(TablekitError):
    """Mask ratio outside [0, 1]."""


class IndivisibleImage(TablekitError):
    """Image side not divisible by the patch size."""


class SequenceTooLong(TablekitError):
    """Token sequence exceeds the decoder's maximum length."""


class NonFiniteLoss(TablekitError):
    """Training loss became NaN or infinite."""


class ConfigError(TablekitError):
    """Run configuration is invalid or inconsistent."""


class ConfigMismatch(ConfigError):
    """Cross-phase shape constraint violated (e.g. patch grid vs token grid)."""


class CheckpointMismatch(TablekitError):
    """Checkpoint incompatible with the requested model configuration."""


class GridOverflow(TablekitError):
    """Table grid does not fit the raster resolution."""


class MalformedRecord(TablekitError):
    """A dataset JSONL line is missing required fields or is not valid JSON."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")
