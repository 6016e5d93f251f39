"""Exact dynamics of the m-photon q-deformed Jaynes-Cummings model."""
from .algebra import (
    Deformation,
    DeformationSpec,
    convergence_radius,
    coupling_product,
    deformed_exp,
    deformed_number,
    deformed_number_real,
    f_value,
    log_deformed_factorial,
)
from .dynamics import (
    JointState,
    ObservableSample,
    dipole_components,
    evolve_closed_form,
    inversion,
    inversion_closed_form,
    squeezing_indicator,
    time_series,
)
from .errors import *  # noqa: F401,F403
from .field_states import (
    AtomInit,
    FieldAmplitude,
    PhotonDistribution,
    build_coherent_state,
    distribution_width,
    mean_photon_number,
)
from .revival import AnalysisReport, analyze, collapse_time, critical_detuning, expansion_diagnostics, revival_time
from .scenario import Scenario, format_scenario, parse_scenario
from .spectrum import DressedPair, ModelParams, detuning_shift, dressed_pair, min_gap, rabi_frequency

__version__ = "0.1.0"
