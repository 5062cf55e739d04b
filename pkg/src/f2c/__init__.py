"""Computational toolkit for the classification data of fusion 2-categories.

Submodules:

* :mod:`f2c.groups`, :mod:`f2c.catalog`: finite groups and supergroups as tables;
* :mod:`f2c.cohomology`: normalized bar cochains, cohomology, cup products;
* :mod:`f2c.supercohomology`: a cochain model of supercohomology in degrees 3 and 4;
* :mod:`f2c.hypergroup`: double cosets and possibilistic hypergroups;
* :mod:`f2c.supergroupoid`: superspaces of symmetric fusion categories and their maps;
* :mod:`f2c.classification`: classification tuples, equivalence, enumeration.
"""
from .kernels import BACKEND
from .errors import F2CError, ValidationError, EnumerationLimitExceeded
from .groups import FiniteGroup, Supergroup, GroupHom, SupergroupHom, limits
from .catalog import catalog, get_group, parse_supergroup
from .cohomology import Cochain, CyclicModM, Z2, cx, cohomology, coboundary_witness

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "F2CError",
    "ValidationError",
    "EnumerationLimitExceeded",
    "FiniteGroup",
    "Supergroup",
    "GroupHom",
    "SupergroupHom",
    "limits",
    "catalog",
    "get_group",
    "parse_supergroup",
    "Cochain",
    "CyclicModM",
    "Z2",
    "cx",
    "cohomology",
    "coboundary_witness",
]
