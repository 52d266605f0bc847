#include "gsf/qubit.hpp"

#include "gsf/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gsf {

PulseSchedule PulseSchedule::make(double tau, double t_pi, uint64_t m_max) {
    PulseSchedule s;
    s.tau = tau;
    s.t_pi = t_pi;
    s.m_max = m_max;
    s.omega_rabi = pi / t_pi;
    s.validate();
    return s;
}

void PulseSchedule::validate() const {
    if (!(tau >= 0.0)) throw std::invalid_argument("schedule: tau must be >= 0");
    if (!(t_pi > 0.0)) throw std::invalid_argument("schedule: t_pi must be > 0");
    if (std::abs(omega_rabi * t_pi - pi) > 1e-9)
        throw std::invalid_argument("schedule: omega_rabi * t_pi must equal pi");
}

void DecoherenceParams::validate() const {
    if (!(t1 > 0.0) || !(t2 > 0.0))
        throw std::invalid_argument("decoherence: T1 and T2 must be positive");
    if (t2 > 2.0 * t1 + 1e-12)
        throw std::invalid_argument("decoherence: T2 must not exceed 2*T1");
}

Superop rotation_superop(double theta, double phi) {
    return Superop::linear(
        rotation_matrix(theta, {std::cos(phi), std::sin(phi), 0.0}));
}

Superop rotation_superop_z(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    Mat3 m;
    m.a = {c, s, 0, -s, c, 0, 0, 0, 1};
    return Superop::linear(m);
}

Superop rotation_superop_axis(double theta, const Vec3& axis) {
    return Superop::linear(rotation_matrix(theta, axis.normalized()));
}

Superop damping_superop(double gamma1_t) {
    if (gamma1_t < 0.0) throw std::invalid_argument("damping: argument must be >= 0");
    double f = std::exp(-gamma1_t);
    double sf = std::sqrt(f);
    Mat3 m;
    m.a = {sf, 0, 0, 0, sf, 0, 0, 0, f};
    return {m, {0.0, 0.0, 1.0 - f}};
}

Superop dephasing_superop(double chi) {
    if (chi < 0.0) throw std::invalid_argument("dephasing: argument must be >= 0");
    double e = std::exp(-chi);
    Mat3 m;
    m.a = {e, 0, 0, 0, e, 0, 0, 0, 1};
    return Superop::linear(m);
}

std::array<double, 16> superop_matrix(const Superop& s) {
    std::array<double, 16> out{};
    out[0] = 1.0;
    const double off[3] = {s.off.x, s.off.y, s.off.z};
    for (int i = 0; i < 3; ++i) {
        out[4 * (i + 1)] = off[i];
        for (int j = 0; j < 3; ++j) out[4 * (i + 1) + (j + 1)] = s.lin(i, j);
    }
    return out;
}

namespace {

// phi = sign * pi * (n * (2k-1) mod 2l) / l, wrapped to [0, 2*pi)
double wrapped_phase(uint64_t n, uint64_t l, uint64_t k, bool negate) {
    unsigned __int128 a = static_cast<unsigned __int128>(n) % (2 * l);
    a = a * (2 * k - 1) % (2 * l);
    double frac = static_cast<double>(static_cast<uint64_t>(a)) /
                  static_cast<double>(l); // in [0, 2)
    double phase = pi * frac;
    if (negate && phase > 0.0) phase = 2.0 * pi - phase;
    return phase;
}

// two-pass mean / standard error; immune to the cancellation that makes a
// sum-of-squares variance go slightly negative (or nonzero for constant data)
MonteCarloResult summarize_samples(const std::vector<double>& samples) {
    double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double s : samples) sum += s;
    double mean = sum / n;
    if (samples.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

} // namespace

std::vector<double> gauss_phases(uint64_t n, uint64_t l, uint64_t m_max) {
    if (l < 1) throw std::invalid_argument("gauss_phases: l must be positive");
    std::vector<double> phases(m_max + 1, 0.0);
    for (uint64_t k = 1; k <= m_max; ++k)
        phases[k] = wrapped_phase(n, l, k, k % 2 == 1);
    return phases;
}

std::vector<double> residue_phases(uint64_t p, uint64_t q, uint64_t m_max) {
    if (q < 1) throw std::invalid_argument("residue_phases: q must be positive");
    std::vector<double> phases(m_max + 1, 0.0);
    if (p % q == 0) return phases; // factor: every pulse is about +x
    for (uint64_t k = 1; k <= m_max; ++k)
        phases[k] = wrapped_phase(p, q, k, k % 2 == 1);
    return phases;
}

namespace {

struct SequenceStepper {
    const PulseSchedule& sched;
    const DecoherenceParams& dec;
    PulseModel model;
    Superop half_free;
    LiouvilleState state;

    SequenceStepper(const PulseSchedule& s, const DecoherenceParams& d, PulseModel pm)
        : sched(s), dec(d), model(pm) {
        s.validate();
        d.validate();
        double half = 0.5 * s.interval();
        Superop decay = damping_superop(dec.gamma1() * half) *
                        dephasing_superop((dec.gamma2() - 0.5 * dec.gamma1()) * half);
        // precession accrues over tau only; the pulse supplies its own
        // detuning tilt when the model asks for it
        half_free = decay * rotation_superop_z(dec.delta_omega * 0.5 * sched.tau);
        state = LiouvilleState::ground();
        state.r = rotation_superop(pi / 2.0, sched.phi_i).apply(state.r);
    }

    Superop pulse(double phi) const {
        if (model == PulseModel::Ideal || dec.delta_omega == 0.0)
            return rotation_superop(pi, phi);
        double d = dec.delta_omega;
        double o = sched.omega_rabi;
        double a = std::sqrt(o * o + d * d);
        Vec3 axis{o * std::cos(phi) / a, o * std::sin(phi) / a, -d / a};
        return rotation_superop_axis(a * sched.t_pi, axis);
    }

    void step(double phi) {
        state.r = half_free.apply(state.r);
        state.r = pulse(phi).apply(state.r);
        state.r = half_free.apply(state.r);
    }

    double measure() const {
        LiouvilleState out = state;
        out.r = rotation_superop(pi / 2.0, sched.phi_f).apply(out.r);
        return out.prob_excited();
    }
};

} // namespace

double evolve_sequence(const PulseSchedule& schedule,
                       const std::vector<double>& phases,
                       const DecoherenceParams& dec, PulseModel model) {
    if (phases.size() != schedule.m_max + 1)
        throw std::invalid_argument("evolve_sequence: phases must have length m_max + 1");
    SequenceStepper stepper(schedule, dec, model);
    for (double phi : phases) stepper.step(phi);
    return stepper.measure();
}

std::vector<double> evolve_profile(const PulseSchedule& schedule,
                                   const std::vector<double>& phases,
                                   const DecoherenceParams& dec, PulseModel model) {
    if (phases.size() != schedule.m_max + 1)
        throw std::invalid_argument("evolve_profile: phases must have length m_max + 1");
    SequenceStepper stepper(schedule, dec, model);
    std::vector<double> probs;
    probs.reserve(phases.size());
    for (double phi : phases) {
        stepper.step(phi);
        probs.push_back(stepper.measure());
    }
    return probs;
}

void PulseAccumulator::push(double phi) {
    // quaternion product (0, n) * (w, v); a pi pulse about the equatorial
    // axis n is the pure quaternion (0, n)
    Vec3 n{std::cos(phi), std::sin(phi), 0.0};
    double w_next = -n.dot(v);
    Vec3 v_next = w * n + n.cross(v);
    // keep unit length against drift over long trains
    double s = 1.0 / std::sqrt(w_next * w_next + v_next.dot(v_next));
    w = w_next * s;
    v = v_next * s;
}

AxisAngle PulseAccumulator::axis_angle() const {
    AxisAngle out;
    double vn = v.norm();
    out.gamma = 2.0 * std::atan2(vn, w);
    out.axis = vn > 1e-14 ? v * (1.0 / vn) : Vec3{0.0, 0.0, 1.0};
    return out;
}

Mat3 PulseAccumulator::matrix() const {
    // R = (w^2 - v.v) I + 2 v v^T + 2 w [v]x, exact at the identity
    double d = w * w - v.dot(v);
    Mat3 r;
    r.a = {d + 2 * v.x * v.x,         2 * (v.x * v.y - w * v.z), 2 * (v.x * v.z + w * v.y),
           2 * (v.y * v.x + w * v.z), d + 2 * v.y * v.y,         2 * (v.y * v.z - w * v.x),
           2 * (v.z * v.x - w * v.y), 2 * (v.z * v.y + w * v.x), d + 2 * v.z * v.z};
    return r;
}

AxisAngle rodriguez_compose(const std::vector<double>& phases) {
    if (phases.empty())
        throw std::invalid_argument("rodriguez_compose: need at least one phase");
    PulseAccumulator acc;
    for (double phi : phases) acc.push(phi);
    return acc.axis_angle();
}

double composed_probability(const AxisAngle& aa) {
    double c = std::cos(aa.gamma);
    double nx = aa.axis.x;
    return 0.5 * (1.0 + c + (1.0 - c) * nx * nx);
}

MonteCarloResult monte_carlo_detuned_signal(const PulseSchedule& schedule,
                                            uint64_t n, uint64_t l,
                                            double delta_max, uint64_t shots,
                                            uint64_t seed,
                                            const DecoherenceParams& base_dec) {
    if (shots < 1) throw std::invalid_argument("monte_carlo: shots must be >= 1");
    if (delta_max < 0.0) throw std::invalid_argument("monte_carlo: delta_max must be >= 0");
    auto phases = gauss_phases(n, l, schedule.m_max);
    std::vector<double> samples(shots);
    for (uint64_t shot = 0; shot < shots; ++shot) {
        RngStream rng(seed, shot);
        DecoherenceParams dec = base_dec;
        dec.delta_omega = delta_max * rng.uniform();
        samples[shot] = evolve_sequence(schedule, phases, dec, PulseModel::Detuned);
    }
    return summarize_samples(samples);
}

std::vector<MonteCarloResult> monte_carlo_profile(const PulseSchedule& schedule,
                                                  const std::vector<double>& phases,
                                                  double delta_max, uint64_t shots,
                                                  uint64_t seed,
                                                  const DecoherenceParams& base_dec) {
    if (shots < 1) throw std::invalid_argument("monte_carlo: shots must be >= 1");
    size_t count = phases.size();
    std::vector<std::vector<double>> samples(count, std::vector<double>(shots));
    for (uint64_t shot = 0; shot < shots; ++shot) {
        RngStream rng(seed, shot);
        DecoherenceParams dec = base_dec;
        dec.delta_omega = delta_max * rng.uniform();
        auto probs = evolve_profile(schedule, phases, dec, PulseModel::Detuned);
        for (size_t i = 0; i < count; ++i) samples[i][shot] = probs[i];
    }
    std::vector<MonteCarloResult> out(count);
    for (size_t i = 0; i < count; ++i) out[i] = summarize_samples(samples[i]);
    return out;
}

} // namespace gsf
