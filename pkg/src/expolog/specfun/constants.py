"""Registry of the limiting constants, with their defining recipes.

Closed forms are evaluated directly; everything else comes from the
moment integrals.  The registry is the single place the CLI and the
stats limits pull named values from, so each entry records how its
number was produced.
"""

import math
from dataclasses import dataclass

import numpy as np

from .moments import moment_largest, moment_smallest, median_limit

_GAMMA = float(np.euler_gamma)


@dataclass(frozen=True)
class ConstantEntry:
    name: str
    value: float
    closed_form: bool
    definition: str


def _entries():
    e = math.e
    lg1 = moment_largest(1, 1, 1).value
    lg1_2 = moment_largest(1, 1, 2).value
    lgh = moment_largest(0.5, 1, 1).value
    lgh_2 = moment_largest(0.5, 1, 2).value
    sg1_2 = moment_smallest(1, 1, 2).value
    sgh_1 = moment_smallest(0.5, 1, 1).value
    sgh_2 = moment_smallest(0.5, 1, 2).value
    yield ConstantEntry("euler_gamma", _GAMMA, True, "Euler-Mascheroni gamma")
    yield ConstantEntry(
        "golomb_dickman", lg1, False,
        "limiting mean of largest component/n at a=1; (1,1) largest moment")
    yield ConstantEntry(
        "permute_largest_variance", lg1_2 - lg1 * lg1, False,
        "limiting variance of largest component/n at a=1")
    yield ConstantEntry(
        "permute_median_limit", math.exp(-0.5), True,
        "1/sqrt(e); median crossing of the a=1 largest-component law")
    yield ConstantEntry(
        "permute_smallest_mean", math.exp(-_GAMMA), True,
        "e^-gamma; limiting mean of smallest component/ln n at a=1")
    yield ConstantEntry(
        "permute_smallest_second_moment", sg1_2, False,
        "limiting E[smallest^2]/n at a=1; (1,2) smallest moment")
    yield ConstantEntry(
        "graph_largest_mean", lgh, False,
        "limiting mean of largest component/n at a=1/2; (1,1) largest moment")
    yield ConstantEntry(
        "graph_largest_variance", lgh_2 - lgh * lgh, False,
        "limiting variance of largest component/n at a=1/2")
    yield ConstantEntry(
        "graph_median_limit", 4.0 * e / (1.0 + e) ** 2, True,
        "4e/(1+e)^2; median crossing of the a=1/2 largest-component law")
    yield ConstantEntry(
        "graph_smallest_mean", math.exp(0.75) * sgh_1, False,
        "e^(3/4) times the (1,1) smallest moment at a=1/2")
    yield ConstantEntry(
        "graph_smallest_second_moment", math.exp(0.75) * sgh_2, False,
        "e^(3/4) times the (1,2) smallest moment at a=1/2")
    yield ConstantEntry(
        "map_largest_mean", lgh, False,
        "same a=1/2 largest moment as the 2-regular graph family")
    yield ConstantEntry(
        "map_largest_variance", lgh_2 - lgh * lgh, False,
        "same a=1/2 largest variance as the 2-regular graph family")
    yield ConstantEntry(
        "map_median_limit", 4.0 * e / (1.0 + e) ** 2, True,
        "4e/(1+e)^2; same crossing as any a=1/2 family")
    yield ConstantEntry(
        "map_smallest_mean", math.sqrt(2.0) * sgh_1, False,
        "sqrt(2) times the (1,1) smallest moment at a=1/2")
    yield ConstantEntry(
        "map_smallest_second_moment", math.sqrt(2.0) * sgh_2, False,
        "sqrt(2) times the (1,2) smallest moment at a=1/2")
    yield ConstantEntry(
        "derange_largest_mean", lg1, False,
        "same a=1 largest moment as permutations")
    yield ConstantEntry(
        "derange_largest_variance", lg1_2 - lg1 * lg1, False,
        "same a=1 largest variance as permutations")
    yield ConstantEntry(
        "derange_median_limit", math.exp(-0.5), True,
        "1/sqrt(e); same crossing as any a=1 family")
    yield ConstantEntry(
        "derange_smallest_mean_scale", math.exp(1.0 - _GAMMA), True,
        "e^(1-gamma); limiting mean of smallest component/ln n without "
        "fixed points")
    yield ConstantEntry(
        "derange_smallest_second_moment", e * sg1_2, False,
        "e times the (1,2) smallest moment at a=1")
    yield ConstantEntry(
        "kappa_permute", 1.0, True, "connectivity constant, permutations")
    yield ConstantEntry(
        "kappa_graph", math.exp(0.75) * math.sqrt(math.pi) / 2.0, True,
        "connectivity constant e^(3/4) sqrt(pi)/2, 2-regular graphs")
    yield ConstantEntry(
        "kappa_map", math.sqrt(math.pi / 2.0), True,
        "connectivity constant sqrt(pi/2), mappings")
    yield ConstantEntry(
        "kappa_derange", e, True, "connectivity constant e, derangements")


_cache = None


def constants():
    """name -> ConstantEntry for every limiting constant in the tables."""
    global _cache
    if _cache is None:
        _cache = {c.name: c for c in _entries()}
    return _cache


def constant(name):
    reg = constants()
    if name not in reg:
        raise KeyError(f"unknown constant {name!r}; known: "
                       + ", ".join(sorted(reg)))
    return reg[name]
