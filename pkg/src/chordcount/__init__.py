"""Exact enumeration of chord diagrams on orientable and non-orientable surfaces."""
from .chordseries import ChordSeries, CountTable, CtildeSeries
from .qcurve import ctilde_from_free_energy, free_energy, solve_hierarchy
from .toprec import DiffKey, Recursion, compute_W

__all__ = ["ChordSeries", "CountTable", "CtildeSeries", "DiffKey", "Recursion", "compute_W",
           "ctilde_from_free_energy", "free_energy", "solve_hierarchy"]
__version__ = "0.1.0"
