"""Exact enumeration and special-function toolkit for component sizes of
random permutations, 2-regular labeled graphs, mappings, and derangements."""

from .families import (FamilyId, FamilySpec, FAMILIES, family_spec,
                       parse_family, total_count, connected_count,
                       connectivity_constant)

__version__ = "0.1.0"
