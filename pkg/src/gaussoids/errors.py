"""
Fehlerklassen für das gaussoids-Paket.

Die CLI bildet diese Klassen auf Exit-Codes ab (siehe ``__main__``).
"""


class GaussoidError(Exception):
    """Basisklasse aller fachlichen Fehler."""


class FaceParseError(GaussoidError, ValueError):
    pass


class StructureParseError(GaussoidError, ValueError):
    pass


class GraphParseError(GaussoidError, ValueError):
    pass


class DimensionMismatchError(GaussoidError, ValueError):
    pass


class NotAGaussoidError(GaussoidError):
    pass


class NotAscendingError(GaussoidError):
    pass


class FramesNotIndependentError(GaussoidError):
    pass


class InvalidSchemeError(GaussoidError):
    pass


class ResourceGuardError(GaussoidError, RuntimeError):
    """Eine Operation würde die konfigurierten Ressourcengrenzen überschreiten."""
