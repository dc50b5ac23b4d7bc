"""Exceptions raised by the crowell library."""


class CrowellError(ValueError):
    """Base class for every error the library raises on bad input."""


class ParseError(CrowellError):
    """Malformed JSON document or polynomial text."""


class DiagramError(CrowellError):
    """A link diagram violates one of its structural invariants."""


class DimensionError(CrowellError):
    """Variable count, rank or generator count mismatch."""


class SpecError(CrowellError):
    """Invalid finite module spec or ring map image."""


class CertificateError(CrowellError):
    """Malformed equivalence certificate."""
