"""Exact combinatorial mutation, polar duality and tropical maps for rational polyhedra."""
from .core import (
    DomainError,
    LatticeVector,
    PolymutError,
    QVector,
    UsageError,
    exact_volume,
    make_primitive,
    pairing,
)
from .ehrhart import CountSeries, count_lattice_points, count_series
from .mutation import (
    Factor,
    MixedSigns,
    MutationCertificate,
    is_in_PN,
    maximal_Gh,
    mutate_cone,
    mutate_polyhedron,
    mutate_polytope,
)
from .polyhedra import (
    Cone,
    HalfSpace,
    Polyhedron,
    VRep,
    decompose,
    equals,
    hrep_to_vrep,
    minkowski_difference,
    minkowski_sum,
    polar_dual,
    slice,
    vrep_to_hrep,
)
from .poset import (
    Poset,
    chain_polytope,
    enumerate_antichains,
    enumerate_filters,
    enumerate_posets,
    mutation_sequence,
    order_polytope,
    transfer_point,
    verify_theorem,
)
from .tropical import Chamber, PLImage, chambers, check_commutation, phi_point, phi_polytope

__version__ = "0.1.0"

__all__ = [
    "chain_polytope",
    "Chamber",
    "chambers",
    "check_commutation",
    "Cone",
    "count_lattice_points",
    "count_series",
    "CountSeries",
    "decompose",
    "DomainError",
    "enumerate_antichains",
    "enumerate_filters",
    "enumerate_posets",
    "equals",
    "exact_volume",
    "Factor",
    "HalfSpace",
    "hrep_to_vrep",
    "is_in_PN",
    "LatticeVector",
    "make_primitive",
    "maximal_Gh",
    "minkowski_difference",
    "minkowski_sum",
    "MixedSigns",
    "mutate_cone",
    "mutate_polyhedron",
    "mutate_polytope",
    "mutation_sequence",
    "MutationCertificate",
    "order_polytope",
    "pairing",
    "phi_point",
    "phi_polytope",
    "PLImage",
    "polar_dual",
    "Polyhedron",
    "PolymutError",
    "Poset",
    "QVector",
    "slice",
    "transfer_point",
    "UsageError",
    "verify_theorem",
    "VRep",
    "vrep_to_hrep",
]
