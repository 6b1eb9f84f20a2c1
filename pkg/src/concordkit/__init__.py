"""Computational tools for knot concordance over a coefficient group.

Finitely presented groups with epimorphisms onto a fixed group G, their
rational derived series, nilpotent-scale localization, Levine-Tristram
signature integrals and rho-difference ledgers for infected knots.
"""

from .errors import ConcordError
from .presentation import GroupPresentation, parse_document, parse_presentation
from .seifert import SeifertMatrix

__version__ = "0.1.0"

__all__ = ["ConcordError", "GroupPresentation", "SeifertMatrix", "parse_document", "parse_presentation",
           "__version__"]
