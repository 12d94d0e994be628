"""Exact divisor clearing on combinatorial models of fibered arithmetic surfaces."""

from .avoidance import HomogeneousForm, ProjectivePoint, evaluate_form, find_avoiding_form
from .clearing import (
    MorphismCertificate,
    check_clearing_witness,
    clear,
    combine_witnesses,
    prove_theorem,
    remove_principal_fiber,
)
from .fibers import cycle_fiber, d4_fiber, irreducible_fiber, make_fiber
from .kernel import KernelProblem, PositiveKernelVector, positive_row_kernel, verify_kernel_hypotheses
from .model import (
    FibralDivisor,
    FiberModel,
    HorizontalProfile,
    SurfaceModel,
    fiber_vector,
    load_surface,
    serialize_surface,
)
from .pairing import SemidefinitenessCertificate, check_fiber_form, pair_fibral, pair_horizontal
from .replay import replay_certificate
from .validation import ValidationReport, validate_surface
from .witness import Witness, synthesize_witness, verify_witness

__version__ = "0.1.0"
