"""Divisor theory and gonality for graphs metrised by sharp integral monoids."""
from .corpus import CorpusBounds, generate_corpus
from .dhar import dhar_dgon, dhar_rank, q_reduced_divisor
from .divisors import (
    Divisor,
    dgon,
    is_principal,
    laplacian,
    linear_system_nonempty,
    prin_basis,
    rank,
)
from .errors import GonlabError
from .ggon import GonalityResult, ggon, verify_witness
from .graph import Edge, MetrisedGraph, contract, remove_loops, subdivide_to_unit, validate_graph
from .monoid import MonoidHom, MonoidSpec, find_positive_functional, is_member
from .morphisms import GraphMorphism, is_harmonic, pullback_divisor, pushforward_divisor
from .pipeline import bounds_report, combinatorial_lower_bound, treewidth
from .trees import enumerate_trees

__version__ = "0.1.0"
