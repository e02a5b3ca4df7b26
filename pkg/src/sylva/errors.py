"""Exception types shared across the toolkit."""


class SylvaError(Exception):
    """Base class for all toolkit errors."""


class InputError(SylvaError):
    """Malformed instance data: loops, bad node ids, broken partitions, invalid seeds."""


class InstanceTooLargeError(SylvaError):
    """An exponential checker was asked to run above its hard size cap."""


class MatroidInconsistencyError(SylvaError):
    """An independence oracle contradicted the matroid axioms during a run."""


class InternalCertificateError(SylvaError):
    """A produced witness failed its own re-verification; indicates a bug, not bad input."""
