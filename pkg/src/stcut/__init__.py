"""Minimum s-t cut capacity of random graphs with a given degree distribution:
exact ensemble bounds and Monte Carlo checks."""

__version__ = "0.1.0"

from .bound import BoundCurve, CutBound, expected_A, expected_A_regular, expected_B_upper, tail_lower_bound
from .cuts import (brute_force_cut_distribution, constraint_map, cut_weight, global_min_cut,
                   min_st_cut)
from .ensemble import (DegreeDistribution, EnsembleError, WeightDistribution, WeightedMultigraph,
                       degree_sequence, num_edges, sample_graph)
from .experiment import (EmpiricalTail, compare, compare_tails, run_global_experiment,
                         run_paired_experiment, run_st_experiment)
from .genpoly import (BigRationalPoly, BivariateCoeffTable, binomial, binomial_half,
                      degree_product_table, weight_coef)
