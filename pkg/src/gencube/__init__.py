"""gencube: separability of noisy two-qubit gates with respect to
generalized single-particle state spaces (Bloch cubes, rescaled spheres),
LHV feasibility certificates, noise thresholds, and classical sampling
simulation of restricted-measurement circuits.
"""

from .pauli import (
    BlochOp,
    DenseHermitian,
    PauliCoeffs2Q,
    born_probability,
    eigenvalues_hermitian,
    from_dense,
    partial_transpose,
    product,
    single_born,
    to_dense,
)
from .spaces import (
    PovmSet,
    StateSpaceSpec,
    contains,
    cube_vertices,
    noise_to_R,
    operator_compatible,
    rescale,
    rescale2,
)
from .gates import (
    NoiseModel,
    apply_noise,
    clifford1,
    csign,
    joint_depol,
    local_dephase,
    local_depol,
    pipeline,
)
from .separability import (
    BellFunctional,
    LhvCertificate,
    appendix1_certificates,
    cube_separable,
    positive_for_pauli,
    quantum_separable_2q,
    verify_certificate,
)
from .thresholds import (
    CurvePoint,
    ThresholdQuery,
    analytic_bound,
    analytic_intersection,
    curve,
    dephasing_impossibility,
    lhv_achievability_boundary,
    min_noise,
)
from .constructions import (
    CjState,
    bell_cube_certificate,
    build_cj,
    cj_apply,
    error_per_gate_bounds,
    lemma8_report,
)
from .simulator import Circuit, parse_circuit, simulate_dense, simulate_hn, tvd

__version__ = "0.1.0"
