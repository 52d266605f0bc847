#pragma once

#include "gsf/linalg.hpp"
#include "gsf/qubit.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gsf {

// e^{ix} - 1 without the cancellation near x = 0
inline cplx expi_m1(double x) {
    double s = std::sin(0.5 * x);
    return {-2.0 * s * s, std::sin(x)};
}

// Frequency-domain resultant of the control, R_w = -iw int_0^t R_ctrl(t') e^{iwt'} dt',
// evaluated in closed form per interval. Interval k contributes
//   e^{ikw tau0} [ (1-u)(1 + u v R(pi,phi_k)) - iw u J_k ] C_{k-1}
// with u = e^{iw tau/2}, v = e^{iw t_pi}, J_k the in-pulse integral
// int_0^{t_pi} R(Omega t',phi_k) e^{iwt'} dt' (closed form; the removable
// singularity at w = +-Omega gets its analytic limit), and C_{k-1} the
// product of the completed pulses, newest on the left. With the prefix on
// the right of the bracket the integrand is the time-ordered control
// propagator, continuous across interval boundaries.
Mat3c r_omega_general(double omega, uint64_t m, const PulseSchedule& schedule,
                      const std::vector<double>& phases);

// Single interval (phi_0 = 0) in block form: an independent check for
// r_omega_general at m = 0.
Mat3c r_omega_m0(double omega, const PulseSchedule& schedule);

// Factor train (every phase 0): the pulses commute, so the sum telescopes to
// geometric prefactors times the m = 0 block. Exact for every m.
Mat3c r_omega_q1(double omega, uint64_t m, const PulseSchedule& schedule);

// Alternating-axis ghost train (q = 4) in a transcribed closed form: base
// block plus per-interval A + B corrections with a sign schedule q_k.
// Retained as a comparison target for the acceptance gate, but it is not
// consistent with the general resultant: the A terms drop the composed-pulse
// prefixes and keep a constant part, so this matrix does not vanish as
// omega -> 0 the way the defining integral forces. The tests measure the gap
// rather than pretending it is zero.
Mat3c r_omega_q4(double omega, uint64_t m, const PulseSchedule& schedule);

// g(w) = R_w R_w^dagger / w^2; Hermitian and positive semidefinite by
// construction. Requires omega != 0.
Mat3c filter_matrix(double omega, uint64_t m, const PulseSchedule& schedule,
                    const std::vector<double>& phases);

enum class SpectrumKind { White, OneOverF, Tabulated };

// One-sided noise spectral density S(w) on a band, normalized so that
// (1/pi) int_band S dw = sigma^2. Applied to the z (dephasing) axis.
struct SpectralDensity {
    SpectrumKind kind = SpectrumKind::White;
    double omega_min = 0.0; // rad/ns
    double omega_max = 0.0;
    double sigma = 0.0;     // rms dephasing rate, rad/ns
    std::vector<std::pair<double, double>> table; // Tabulated: (omega, S)

    static SpectralDensity white(double sigma,
                                 double omega_min = default_omega_min,
                                 double omega_max = default_omega_max);
    static SpectralDensity one_over_f(double sigma,
                                      double omega_min = default_omega_min,
                                      double omega_max = default_omega_max);
    // Table rows are (omega_rad_per_ns, s_value), strictly increasing omega,
    // values >= 0; sigma is derived from the table by trapezoid.
    static SpectralDensity tabulated(std::vector<std::pair<double, double>> table);

    static constexpr double default_omega_min = 2.0 * pi * 1e-4;
    static constexpr double default_omega_max = 2.0 * pi * 10.0;

    void validate() const;
    double value(double omega) const; // 0 outside the band
};

// chi_m = (1/pi) int S(w) g_zz(w) dw over the spectral band, log-spaced
// trapezoid with grid doubling until the relative change drops below 1e-4.
// Throws if the refinement fails to settle.
double coherence_integral(uint64_t m, const PulseSchedule& schedule,
                          const std::vector<double>& phases,
                          const SpectralDensity& noise);

// chi and e^{-chi} for every prefix m = 0..m_max of the pulse train.
struct DecayEnvelope {
    std::vector<double> chi;
    std::vector<double> envelope;
};
DecayEnvelope decay_envelope(uint64_t m_max, const PulseSchedule& schedule,
                             const std::vector<double>& phases,
                             const SpectralDensity& noise);

// R_w and g sampled on a log-spaced grid.
struct ControlSpectrum {
    std::vector<double> omega_grid;
    std::vector<Mat3c> r_omega;
    std::vector<Mat3c> g;
};
ControlSpectrum control_spectrum(uint64_t m, const PulseSchedule& schedule,
                                 const std::vector<double>& phases,
                                 double omega_min, double omega_max,
                                 std::size_t points);

void write_control_spectrum_csv(const ControlSpectrum& cs, const std::string& path);
void write_decay_envelope_csv(const DecayEnvelope& env, const PulseSchedule& schedule,
                              const std::string& path);

// Two-column CSV (omega_rad_per_ns, s_value), optional header line.
SpectralDensity read_spectrum_csv(const std::string& path);

} // namespace gsf
