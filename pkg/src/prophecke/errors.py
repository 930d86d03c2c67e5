"""Exception types shared across the package."""


class GroupMismatchError(ValueError):
    """Operands were built over different group or field data."""


class UnsupportedFieldError(ValueError):
    """The coefficient field cannot support the requested construction
    (typically F_q is not a subfield, i.e. f does not divide m)."""


class DataIntegrityError(ValueError):
    """Structural data violates an invariant that should hold for every
    valid root datum (for example a coroot kernel of size > 2)."""


class DecompositionUnavailableError(ValueError):
    """The trivial/kernel splitting of the top module does not exist for
    this group and coefficient field (Omega infinite, or |Omega| = 0 in k)."""


class TheoremViolationError(AssertionError):
    """A numerically checked identity that is supposed to be a theorem
    failed.  Raised so test harnesses fail loudly rather than silently
    producing wrong certificates."""
