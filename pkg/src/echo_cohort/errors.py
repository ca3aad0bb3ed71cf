"""Exception hierarchy shared across the package."""


class EchoCohortError(Exception):
    """Base class for all package errors."""


class CatalogError(EchoCohortError):
    """Catalog file violates the schema (message names the offending field)."""


class CorpusError(EchoCohortError):
    """Corpus file is malformed, truncated, or version-mismatched."""


class IndexError_(EchoCohortError):
    """Index container is corrupt, version-mismatched, or inconsistent."""


class ParamsError(EchoCohortError):
    """Encoder parameter file is corrupt or does not match its header."""


class EncoderError(EchoCohortError):
    """Invalid encoder configuration or operation (e.g. cosine of a zero
    vector, a vocabulary too small to pretrain on)."""


class ReportExcluded(EchoCohortError):
    """Raised when a raw report cannot be ingested (e.g. no LV section).

    This is an exclusion signal for ingest pipelines, not a crash: callers
    reading report streams catch it, count the exclusion, and move on.
    """


class QuantityError(EchoCohortError):
    """LVEF grammar violation or an unparseable quantity query."""


class UnknownQueryError(EchoCohortError):
    """Query resolves neither through the statement map nor as a quantity."""


class TrainingError(EchoCohortError):
    """Training could not proceed (bad config, divergence, sampler exhaustion)."""


class EvalError(EchoCohortError):
    """Evaluation suite construction or execution failed."""
