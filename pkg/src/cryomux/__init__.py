"""Models for characterizing superconducting qubits through a cryoCMOS RF multiplexer.

Flux-noise and photon-shot-noise dephasing, transmon device relations,
a parametric SP4T multiplexer model, synthetic measurement campaigns with
their fits, Welch statistics and cooling-power budgets.
"""

from .campaign import (
    CampaignConfig,
    CampaignResult,
    FluxSweepConfig,
    FluxSweepResult,
    InsufficientDataError,
    UnidentifiableError,
    added_dephasing_report,
    compare_paths,
    extract_noise_params,
    fit_noise_table,
    run_coherence_campaign,
    run_flux_sweep,
)
from .constants import PHI0
from .device import (
    CouplingGeometry,
    FluxLineCal,
    TransmonParams,
    coupling_for_purcell,
    dispersion,
    drive_coupling,
    flux_to_current_noise,
    load_qubit_table,
    mutual_from_bias,
    purcell_rate,
    qubit_freq_at_flux,
    table_qubit,
)
from .fitting import FitError, FitResult, fit_exponential, fit_gauss_exponential
from .mux import (
    MuxModel,
    MuxState,
    NotOperationalError,
    dynamic_energy_per_event,
    insertion_loss,
    isolation,
    joule_power,
    mxc_heating,
    r_on,
    select_port,
    static_power,
    t1_factor,
)
from .noise import (
    DephasingContext,
    NoiseParams,
    QuadratureConfig,
    QuadratureError,
    added_photons,
    chi_closed,
    chi_numeric,
    dephasing_rate_echo,
    photon_shot_dephasing,
    rescale_noise,
    t2e_from_components,
    tphi_from,
)
from .planner import BudgetConfig, BudgetReport, budget_report, max_multiplexers, port_scaling_power
from .stats import box_summary, welch_t

__version__ = "0.1.0"
