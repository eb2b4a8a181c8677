"""Character-variety components, Reidemeister torsion and symplectic
volumes for Seifert fibered spaces over compact simply connected simple
Lie groups."""

from .errors import ConvergenceError, InputError
from .lie import (
    AlcoveClass,
    CentralElement,
    RootSystemData,
    alcove_class,
    build_root_system,
    center_elements,
    centralizer_dim,
    class_dim,
    class_power,
    delta,
    delta_squared_exact,
    reduce_to_alcove,
)
from .seifert import (
    ComponentLabel,
    PrefactorValue,
    SeifertData,
    component_dimension,
    enumerate_components,
    euler_number,
    inverse_mod,
    iter_components,
    torsion_prefactor,
    validate_seifert,
)
from .torsion import (
    BasedChainComplex,
    HomologyBasis,
    TorsionValue,
    auto_homology_basis,
    chain_torsion,
    circle_torsion,
    exact_sequence_det,
    kunneth_torsion,
    mv_torsion_compose,
    seifert_mv_scalar,
)
from .volumes import (
    AbelianComponentSet,
    VolumeResult,
    abelian_components,
    abelian_density_factor,
    abelian_mv_verify,
    abelian_torsion_scalar,
    reidemeister_volume,
    witten_volume,
)

__version__ = "0.1.0"
