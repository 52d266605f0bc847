#pragma once

#include "gsf/linalg.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace gsf {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Pulse train timing. omega_rabi is tied to t_pi (a pi rotation takes
// exactly t_pi), which validate() enforces.
struct PulseSchedule {
    double tau = 0.0;       // delay between pulses, ns
    double t_pi = 1.0;      // pi-pulse duration, ns
    uint64_t m_max = 0;     // highest pulse index M
    double omega_rabi = pi; // rad/ns
    double phi_i = pi / 2;  // initialization pulse axis
    double phi_f = pi / 2;  // readout pulse axis

    static PulseSchedule make(double tau, double t_pi, uint64_t m_max);
    void validate() const;
    double interval() const { return tau + t_pi; } // tau0
};

struct DecoherenceParams {
    double t1 = std::numeric_limits<double>::infinity(); // ns
    double t2 = std::numeric_limits<double>::infinity(); // ns
    double delta_omega = 0.0;                            // rad/ns

    void validate() const; // t2 <= 2*t1 and both positive
    double gamma1() const { return 1.0 / t1; }
    double gamma2() const { return 1.0 / t2; }
};

// Density operator as the Bloch vector r; the leading 1/sqrt(2) component
// of the 4-vector is constant and kept implicit.
struct LiouvilleState {
    Vec3 r;

    static LiouvilleState ground() { return {{0.0, 0.0, 1.0}}; } // |0>
    double prob_excited() const { return 0.5 * (1.0 - r.z); }    // Pr(|1>)
};

// Superoperators. All have first row (1,0,0,0); damping additionally has a
// feed term in the first column.
Superop rotation_superop(double theta, double phi); // axis cos(phi)x + sin(phi)y
Superop rotation_superop_z(double theta);           // [[c,s],[-s,c]] on (x,y)
Superop rotation_superop_axis(double theta, const Vec3& axis);
Superop damping_superop(double gamma1_t);   // argument Gamma1 * t
Superop dephasing_superop(double chi);      // argument (Gamma2 - Gamma1/2) * t

// Materialized 4x4, row-major, for structural checks.
std::array<double, 16> superop_matrix(const Superop& s);

// Pulse axis angles phi_k for trial factor l of n: phi_0 = 0 and
// phi_k = (-1)^k * pi * n * (2k-1) / l, reduced into [0, 2*pi) by exact
// integer arithmetic mod 2l.
std::vector<double> gauss_phases(uint64_t n, uint64_t l, uint64_t m_max);

// Same angles built from the reduced residue p/q alone (the integer part of
// n/l contributes only multiples of pi, which pi-pulses cannot see).
std::vector<double> residue_phases(uint64_t p, uint64_t q, uint64_t m_max);

enum class PulseModel {
    Ideal,   // instantaneous perfect pi rotations
    Detuned, // finite-duration rotation about the tilted axis (O cos, O sin, -d)
};

// Run the full sequence: ideal pi/2 init about phi_i, then for each k a
// half interval of free evolution, the pulse, and another half interval,
// then an ideal pi/2 readout about phi_f. Decay acts over tau + t_pi per
// interval; detuning precession acts over tau (the pulse carries its own
// detuning when model is Detuned). Returns Pr(|1>).
double evolve_sequence(const PulseSchedule& schedule,
                       const std::vector<double>& phases,
                       const DecoherenceParams& dec,
                       PulseModel model = PulseModel::Ideal);

// One sweep of the same evolution, recording Pr after every pulse index:
// element m equals evolve_sequence over phases[0..m].
std::vector<double> evolve_profile(const PulseSchedule& schedule,
                                   const std::vector<double>& phases,
                                   const DecoherenceParams& dec,
                                   PulseModel model = PulseModel::Ideal);

struct AxisAngle {
    double gamma = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};
};

// Running product of pi pulses as a unit quaternion (w, v), newest pulse on
// the left. Starts at the identity; push(phi) prepends a pi rotation about
// the equatorial axis (cos phi, sin phi, 0).
struct PulseAccumulator {
    double w = 1.0;
    Vec3 v{0.0, 0.0, 0.0};

    void push(double phi);
    AxisAngle axis_angle() const;
    Mat3 matrix() const;
};

// Resultant of the pi-pulse product, composed by quaternion recursion.
AxisAngle rodriguez_compose(const std::vector<double>& phases);

// Pr(|1>) for a composed rotation applied between the two pi/2 pulses:
// (1 + cos g + (1 - cos g) * nx^2) / 2.
double composed_probability(const AxisAngle& aa);

struct MonteCarloResult {
    double mean = 0.0;
    double std_err = 0.0;
};

// Average of the detuned sequence over shots, with per-shot detuning drawn
// uniformly from [0, delta_max]. Deterministic in (seed, shot index).
MonteCarloResult monte_carlo_detuned_signal(const PulseSchedule& schedule,
                                            uint64_t n, uint64_t l,
                                            double delta_max, uint64_t shots,
                                            uint64_t seed,
                                            const DecoherenceParams& base_dec = {});

// Per-m means and standard errors in one pass over the shots.
std::vector<MonteCarloResult> monte_carlo_profile(const PulseSchedule& schedule,
                                                  const std::vector<double>& phases,
                                                  double delta_max, uint64_t shots,
                                                  uint64_t seed,
                                                  const DecoherenceParams& base_dec = {});

} // namespace gsf
