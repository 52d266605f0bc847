"""Gauss sum factorization on a simulated driven qubit."""

try:
    from . import _core  # installed wheel layout
except ImportError:  # build-tree layout: _core.so next to this package
    import _core

__version__ = "0.1.0"

_EXPORTS = [
    "ReducedResidue",
    "PreprocessRecord",
    "PulseSchedule",
    "DecoherenceParams",
    "SpectralDensity",
    "CampaignConfig",
    "TrialRecord",
    "DiscernabilitySummary",
    "FactorizationReport",
    "reduce_residue",
    "preprocess",
    "trial_factors",
    "type_i_pulse_floor",
    "classify",
    "gauss_sum",
    "quadratic_gauss_plateau",
    "ideal_signal",
    "gauss_phases",
    "residue_phases",
    "evolve_sequence",
    "evolve_profile",
    "monte_carlo_profile",
    "noisy_summand",
    "noisy_gauss_sum",
    "noisy_gauss_factor_closed",
    "noisy_gauss_worst_closed",
    "cutoff",
    "discernability_closed",
    "discernability_exact",
    "discernability_empirical",
    "adjusted_discernability",
    "contrast",
    "lambert_w0",
    "max_pulse_count",
    "largest_factorizable",
    "r_omega",
    "filter_matrix",
    "coherence_integral",
    "decay_envelope",
    "run_campaign",
    "identify",
    "report_from_json",
    "default_omega_min",
    "default_omega_max",
]

for _name in _EXPORTS:
    globals()[_name] = getattr(_core, _name)

__all__ = _EXPORTS
