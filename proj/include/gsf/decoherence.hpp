#pragma once

#include "gsf/residue.hpp"

#include <cstdint>
#include <map>
#include <set>

namespace gsf {

// Everything here works in the dimensionless decay x = gamma2 * tau0, where
// tau0 = tau + t_pi is one pulse interval and gamma2 = 1/T2.

struct DiscernabilityReport {
    double d_value = 0.0;
    uint64_t m_used = 0;
    double t2_factor = 0.0;
    double t2_worst = 0.0; // equals t2_factor unless a separate ghost T2 is used
    double tau0 = 0.0;
};

struct ContrastReport {
    double v_value = 0.0; // (1 - a) / (1 + a)
    double a_mean = 0.0;  // mean |2*signal - 1| over nonfactor trials
};

struct FactorizableBound {
    uint64_t n_bound = 0; // 4 m^4
    double log10_bound = 0.0;
};

// cos(2 pi m^2 p / q) * exp(-(m+1) x)
double noisy_summand(uint64_t m, const ReducedResidue& r, double gamma2_tau0);

// mean of noisy_summand over m = 0..m_max
double noisy_gauss_sum(uint64_t m_max, const ReducedResidue& r, double gamma2_tau0);

// geometric closed forms for the two reference residues: a factor (q = 1) and
// the worst surviving ghost q = 4, whose summands vanish at odd m
double noisy_gauss_factor_closed(uint64_t m_max, double gamma2_tau0);
double noisy_gauss_worst_closed(uint64_t m_max, double gamma2_tau0);

// decision threshold halfway between the predicted factor and worst-ghost
// signals; literal_form instead averages the bare sums, which at the
// noiseless limit sits below every factor signal (kept for comparison)
double cutoff(uint64_t m_max, double gamma2_tau0_factor, double gamma2_tau0_worst,
              bool literal_form = false);

// large-M approximation of the factor/worst gap; its floor(M/2) step is
// smoothed, so at odd M it sits below discernability_exact by
// exp(-(M+1)x) / ((M+1)(exp(x)+1))
double discernability_closed(uint64_t m_max, double gamma2_tau0);
double discernability_exact(uint64_t m_max, double gamma2_tau0);

// 2 * (signal_factor - signal_worst)
double discernability_empirical(double signal_factor, double signal_worst);

// factor and worst ghost decaying with different T2 times
double adjusted_discernability(uint64_t m_max, double t2_factor, double t2_worst,
                               double tau0);
DiscernabilityReport discernability_report(uint64_t m_max, double t2_factor,
                                           double t2_worst, double tau0);

// signals maps trial factor l to its measured signal
ContrastReport contrast(const std::map<uint64_t, double>& signals,
                        const std::set<uint64_t>& factor_set);

// principal branch, Halley iteration; domain x >= -1/e
double lambert_w0(double x);

// largest pulse count M with predicted discernability still >= d_target;
// throws std::domain_error when the target exceeds the achievable maximum
uint64_t max_pulse_count(double d_target, double t2, double tau0);

// N <= 4 m^4 is the largest integer a sequence of m pulses can interrogate
FactorizableBound largest_factorizable(uint64_t m);

} // namespace gsf
