#include "gsf/decoherence.hpp"

#include "gsf/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace gsf {

double noisy_summand(uint64_t m, const ReducedResidue& r, double gamma2_tau0) {
    if (gamma2_tau0 < 0.0)
        throw std::invalid_argument("noisy_summand: decay rate must be >= 0");
    return gauss_summand(m, r) * std::exp(-static_cast<double>(m + 1) * gamma2_tau0);
}

double noisy_gauss_sum(uint64_t m_max, const ReducedResidue& r, double gamma2_tau0) {
    double acc = 0.0;
    for (uint64_t m = 0; m <= m_max; ++m) acc += noisy_summand(m, r, gamma2_tau0);
    return acc / static_cast<double>(m_max + 1);
}

double noisy_gauss_factor_closed(uint64_t m_max, double gamma2_tau0) {
    if (gamma2_tau0 < 0.0)
        throw std::invalid_argument("closed form: decay rate must be >= 0");
    double count = static_cast<double>(m_max + 1);
    if (gamma2_tau0 == 0.0) return 1.0;
    return -std::expm1(-count * gamma2_tau0) / (count * std::expm1(gamma2_tau0));
}

double noisy_gauss_worst_closed(uint64_t m_max, double gamma2_tau0) {
    if (gamma2_tau0 < 0.0)
        throw std::invalid_argument("closed form: decay rate must be >= 0");
    double count = static_cast<double>(m_max + 1);
    double surviving = static_cast<double>(m_max / 2 + 1); // even-m terms only
    if (gamma2_tau0 == 0.0) return surviving / count;
    return -std::expm1(-2.0 * surviving * gamma2_tau0) /
           (count * 2.0 * std::sinh(gamma2_tau0));
}

double cutoff(uint64_t m_max, double gamma2_tau0_factor, double gamma2_tau0_worst,
              bool literal_form) {
    double cf = noisy_gauss_factor_closed(m_max, gamma2_tau0_factor);
    double cw = noisy_gauss_worst_closed(m_max, gamma2_tau0_worst);
    if (literal_form) return 0.5 * (cf + cw);
    return 0.5 + 0.25 * (cf + cw); // midpoint of the signals (1 + c)/2
}

double discernability_closed(uint64_t m_max, double gamma2_tau0) {
    if (gamma2_tau0 < 0.0)
        throw std::invalid_argument("discernability: decay rate must be >= 0");
    double count = static_cast<double>(m_max + 1);
    if (gamma2_tau0 == 0.0) return static_cast<double>(m_max) / (2.0 * count);
    return -std::expm1(-static_cast<double>(m_max) * gamma2_tau0) /
           (count * std::expm1(2.0 * gamma2_tau0));
}

double discernability_exact(uint64_t m_max, double gamma2_tau0) {
    return noisy_gauss_factor_closed(m_max, gamma2_tau0) -
           noisy_gauss_worst_closed(m_max, gamma2_tau0);
}

double discernability_empirical(double signal_factor, double signal_worst) {
    return 2.0 * (signal_factor - signal_worst);
}

double adjusted_discernability(uint64_t m_max, double t2_factor, double t2_worst,
                               double tau0) {
    if (t2_factor <= 0.0 || t2_worst <= 0.0 || tau0 <= 0.0)
        throw std::invalid_argument("adjusted_discernability: times must be > 0");
    return noisy_gauss_factor_closed(m_max, tau0 / t2_factor) -
           noisy_gauss_worst_closed(m_max, tau0 / t2_worst);
}

DiscernabilityReport discernability_report(uint64_t m_max, double t2_factor,
                                           double t2_worst, double tau0) {
    DiscernabilityReport rep;
    rep.d_value = adjusted_discernability(m_max, t2_factor, t2_worst, tau0);
    rep.m_used = m_max;
    rep.t2_factor = t2_factor;
    rep.t2_worst = t2_worst;
    rep.tau0 = tau0;
    return rep;
}

ContrastReport contrast(const std::map<uint64_t, double>& signals,
                        const std::set<uint64_t>& factor_set) {
    double acc = 0.0;
    uint64_t count = 0;
    for (const auto& [l, signal] : signals) {
        if (factor_set.count(l)) continue;
        acc += std::abs(2.0 * signal - 1.0);
        ++count;
    }
    if (count == 0)
        throw std::invalid_argument("contrast: no nonfactor trials to average");
    ContrastReport rep;
    rep.a_mean = acc / static_cast<double>(count);
    rep.v_value = (1.0 - rep.a_mean) / (1.0 + rep.a_mean);
    return rep;
}

double lambert_w0(double x) {
    constexpr double inv_e = 0.36787944117144233;
    if (x < -inv_e) {
        if (x > -inv_e - 1e-12) x = -inv_e; // branch point, up to rounding
        else throw std::domain_error("lambert_w0: argument below -1/e");
    }
    double w;
    if (x < -0.3) {
        // series around the branch point in p = sqrt(2(e x + 1))
        double rad = 2.0 * (std::exp(1.0) * x + 1.0);
        double p = std::sqrt(rad < 0.0 ? 0.0 : rad);
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else if (x < std::exp(1.0)) {
        w = x / (1.0 + x); // crude but inside Halley's basin
    } else {
        double l1 = std::log(x), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int it = 0; it < 50; ++it) {
        double ew = std::exp(w);
        double f = w * ew - x;
        if (f == 0.0) break;
        double fp = ew * (1.0 + w);
        double step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
        w -= step;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(w))) break;
    }
    return w;
}

namespace {

// continuous maximum of the large-M gap approximation over the pulse count:
// the stationarity condition is exp(y) = 1 + x + y with y = M x
double peak_discernability(double x) {
    double y = std::sqrt(2.0 * x); // small-y expansion as the starting point
    for (int it = 0; it < 60; ++it) {
        double f = std::expm1(y) - y - x;
        double fp = std::expm1(y);
        double step = f / fp;
        y -= step;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(y))) break;
    }
    double m_peak = y / x;
    return -std::expm1(-y) / ((m_peak + 1.0) * std::expm1(2.0 * x));
}

} // namespace

uint64_t max_pulse_count(double d_target, double t2, double tau0) {
    if (!(d_target > 0.0) || !(d_target < 1.0))
        throw std::invalid_argument("max_pulse_count: target must be in (0, 1)");
    if (t2 <= 0.0 || tau0 <= 0.0)
        throw std::invalid_argument("max_pulse_count: times must be > 0");
    double m0 = t2 / tau0;
    double x = 1.0 / m0;
    if (d_target >= peak_discernability(x))
        throw std::domain_error("max_pulse_count: target discernability exceeds "
                                "the achievable maximum for this T2");
    double mu = std::expm1(2.0 / m0);
    double a = 1.0 / (mu * d_target);
    double arg = -std::exp(-(a - 1.0) / m0) / (m0 * mu * d_target);
    double m_real = m0 * lambert_w0(arg) + a - 1.0;
    if (m_real < 1.0)
        throw std::domain_error("max_pulse_count: no pulse count of at least one "
                                "meets the target");
    return static_cast<uint64_t>(std::floor(m_real));
}

FactorizableBound largest_factorizable(uint64_t m) {
    if (m < 1) throw std::invalid_argument("largest_factorizable: m must be >= 1");
    if (m > 46340) // 4 m^4 no longer fits in 64 bits
        throw std::overflow_error("largest_factorizable: bound exceeds 64-bit range");
    uint64_t m2 = m * m;
    FactorizableBound out;
    out.n_bound = 4ull * m2 * m2;
    out.log10_bound = std::log10(static_cast<double>(out.n_bound));
    return out;
}

} // namespace gsf
