"""Rate-region toolkit for multiple-access and cognitive networks.

Generates the symbolic bound families of a network with arbitrarily
distributed messages, evaluates them as polytopes for discrete memoryless
channels, and certifies the very strong interference regime.
"""
from .bounds import (
    BoundSet,
    MITerm,
    RateBound,
    VariableId,
    compact_bounds,
    cutset_bounds,
    generate,
    han_bounds,
    inner_bounds,
)
from .channel import (
    Channel,
    JointDistribution,
    build_joint,
    evaluate_bounds,
    make_schema,
    mutual_info,
    sample_distributions,
)
from .network import (
    MessageId,
    NetworkSpec,
    all_common_reduction,
    common_transmitters,
    enumerate_closed_sets,
    enumerate_partitions,
    involved_receivers,
    make_spec,
    validate_spec,
)
from .polytope import (
    HPolytope,
    RegionEstimate,
    region_equal,
    remove_redundant,
    slice_2d,
    support_function,
    union_support,
)
from .vsi import VSICertificate, obligations, vsi_capacity

__version__ = "0.1.0"
