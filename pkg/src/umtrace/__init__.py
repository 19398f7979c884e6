"""Classical toolkit for multivariate trace estimation with qubit/depth-
tunable controlled-cyclic-shift circuits, exact/noisy simulation, and
shot-based error-mitigated expectation values."""

from .ansatz import DEFAULT_ANGLES, ansatz_state, default_observable
from .backends import active_name as backend_name
from .circuits import (Circuit, Gate, attach_observable, build, build_prop1,
                       build_prop2, circuit_unitary, ghz_prep, imaginary_mode,
                       work_register_action)
from .estimate import (DegenerateDenominator, ErrorBudget, EstimateReport,
                       RatioStats, VDResult, estimate_mt, estimate_numerator,
                       identity_observable, plan_shots, ratio_stats,
                       virtual_distillation)
from .export import export_circuit, parse_circuit
from .oracle import (exponential_suppression_curve, mt_exact,
                     mt_via_shift_operator, shift_operator, vd_exact)
from .scheduling import (GREEDY, LAYER_RESTRICTED, Transposition,
                         TranspositionSchedule, apply_schedule, decompose_cycle,
                         depth_bound, layer_restricted_depth, schedule)
from .simulate import (EngineDisagreement, MeasurementSpec, MixtureState,
                       NoiseModel, bitstring_distribution, depolarize_state,
                       distribution_csv, evolve_mixture, run_exact,
                       sample_bitstrings, sample_shots)
from .states import (DensityMatrix, PauliObservable, PauliString,
                     SpectralDecomposition, StateVector, make_density,
                     observable, pauli_matrix, spectral)

__version__ = "0.1.0"
