"""Shared exception types."""


class MalformedCodeError(ValueError):
    """A natural number outside the image of the Godel coding."""


class MalformedIndexError(ValueError):
    """A machine index that does not decode to a program (distinct from
    running out of fuel)."""


class NotPrimitiveRecursive(TypeError):
    """eval_pr applied to a program using mu or universal application."""


class UnknownNative(KeyError):
    """Native descriptor name with no registered implementation."""


class NativeOverflow(RuntimeError):
    """A native was applied to arguments whose exact result cannot be
    materialized (e.g. 3*5**w for astronomic w).  Mathematically the
    function is total; evaluation contexts treat this as resource
    exhaustion, never as a value."""


class NotTrue(ValueError):
    """prove_delta0 / prove_sigma applied to a sentence that is not true
    (carries the refutation where one was produced)."""

    def __init__(self, msg, refutation=None):
        super().__init__(msg)
        self.refutation = refutation


class ProofError(ValueError):
    """A proof object failed checking; message names the first bad line."""


class UnsupportedFormula(ValueError):
    """Input outside the class an operation is specified for."""


class StageError(ValueError):
    """Notation unusable for the requested stage operation (e.g. an
    unrenderable stage in a reflection instance)."""


class CertificateError(ValueError):
    """An enumerator certificate was refuted by probing; the message names
    the offending probe index."""


class BuildError(ValueError):
    """A certified proof-code constructor rejected its input; the message
    names the failing sub-part."""


class TranslationError(ValueError):
    """A Hilbert-style proof could not be rendered as an omega proof code;
    the message names the offending line or witness."""
