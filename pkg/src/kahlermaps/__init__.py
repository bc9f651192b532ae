"""Special symplectic maps of rotation-invariant Kaehler potentials into complex space forms."""

__version__ = "0.1.0"

from kahlermaps.admissibility import Classification, check_pointwise, classify, moment_sum, probe_boundary
from kahlermaps.calabi import (
    diastasis_series,
    one_minus_series_exp_neg,
    resolvability,
    series_exp_minus_one,
    genconda_bridge,
)
from kahlermaps.catalog import CATALOG, get_entry, list_catalog, resolve
from kahlermaps.domains import DomainSpec, ball, full_space, punctured_space, reinhardt_domain
from kahlermaps.estimators import SpecialSymplecticMap
from kahlermaps.kahler import assemble_form, is_kahler_at, ricci_form, volume_density
from kahlermaps.lebrun import (
    LebrunCoords,
    LebrunParams,
    lebrun_forward,
    lebrun_grad,
    lebrun_jacobian,
    lebrun_map,
    lebrun_potential,
    lebrun_solve,
    verify_lebrun_claims,
)
from kahlermaps.potentials import PotentialSpec, eval_potential, grad_potential, hess_potential, parse_potential
from kahlermaps.pullback import PullbackReport, form_to_real, real_jacobian, verify_pullback
from kahlermaps.series import MultiIndexOrder, TruncatedSeries
from kahlermaps.space_forms import SpaceFormKind, TargetSpaceForm, cayley_inverse, cayley_map
from kahlermaps.special_maps import (
    SpecialMap,
    apply_special_map,
    build_special_map,
    cayley_inverse_special,
    cayley_special,
    check_lemma_condition,
    compose_special,
    constant_map,
    identity_map,
)
