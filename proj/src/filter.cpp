#include "gsf/filter.hpp"

#include "gsf/textio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsf {

namespace {

// per-omega scalars shared by every interval
struct FreqTerms {
    double omega = 0.0;
    double rabi = 0.0;
    cplx u;            // e^{iw tau/2}
    cplx v;            // e^{iw t_pi}
    cplx z;            // e^{iw (tau + t_pi)}
    cplx one_minus_u;  // stable near w = 0
    cplx u_one_minus_v;
    cplx gu;           // u (1+v) / (w^2 - Omega^2), analytic limit at w = +-Omega

    FreqTerms(double w, const PulseSchedule& sched) {
        omega = w;
        rabi = sched.omega_rabi;
        double half_tau = 0.5 * sched.tau;
        u = std::polar(1.0, w * half_tau);
        v = std::polar(1.0, w * sched.t_pi);
        z = std::polar(1.0, w * (sched.tau + sched.t_pi));
        one_minus_u = -expi_m1(w * half_tau);
        u_one_minus_v = u * (-expi_m1(w * sched.t_pi));
        if (std::abs(w - rabi) < 1e-9) {
            gu = u * cplx(0.0, -0.5 * sched.t_pi / rabi);
        } else if (std::abs(w + rabi) < 1e-9) {
            gu = u * cplx(0.0, 0.5 * sched.t_pi / rabi);
        } else {
            // 1 + e^{ix} = 2 cos(x/2) e^{ix/2}, no cancellation at x near odd pi
            double x = w * sched.t_pi;
            cplx one_plus_v = 2.0 * std::cos(0.5 * x) * std::polar(1.0, 0.5 * x);
            gu = u * one_plus_v / cplx(w * w - rabi * rabi, 0.0);
        }
    }
};

// (1-u)(1 + u v R(pi,phi)) - iw u J(phi), where J is the in-pulse integral.
// With c = cos(phi), s = sin(phi):
//   R(pi,phi) = 2 n n^T - 1,  n = (c, s, 0)
//   -iw u J   = w^2 gu 1 + iw Omega gu [n]_x + (u(1-v) - w^2 gu) n n^T
Mat3c interval_bracket(double phi, const FreqTerms& f) {
    double c = std::cos(phi), s = std::sin(phi);
    cplx uv = f.u * f.v;
    cplx diag = f.one_minus_u + f.omega * f.omega * f.gu;
    cplx refl = f.one_minus_u * uv;
    cplx axis = f.u_one_minus_v - f.omega * f.omega * f.gu;
    cplx corner = cplx(0.0, 1.0) * f.omega * f.rabi * f.gu;

    Mat3c b;
    b(0, 0) = diag + refl * (2 * c * c - 1) + axis * (c * c);
    b(0, 1) = refl * (2 * c * s) + axis * (c * s);
    b(0, 2) = corner * s;
    b(1, 0) = b(0, 1);
    b(1, 1) = diag + refl * (2 * s * s - 1) + axis * (s * s);
    b(1, 2) = -corner * c;
    b(2, 0) = -corner * s;
    b(2, 1) = corner * c;
    b(2, 2) = diag - refl;
    return b;
}

Mat3c diag_times(cplx d0, cplx d1, cplx d2, const Mat3c& m) {
    Mat3c r = m;
    for (int j = 0; j < 3; ++j) {
        r(0, j) *= d0;
        r(1, j) *= d1;
        r(2, j) *= d2;
    }
    return r;
}

double g_zz_value(double omega, uint64_t m, const PulseSchedule& schedule,
                  const std::vector<double>& phases) {
    Mat3c r = r_omega_general(omega, m, schedule, phases);
    double zz = std::norm(r(2, 0)) + std::norm(r(2, 1)) + std::norm(r(2, 2));
    return zz / (omega * omega);
}

} // namespace

Mat3c r_omega_general(double omega, uint64_t m, const PulseSchedule& schedule,
                      const std::vector<double>& phases) {
    schedule.validate();
    if (phases.size() < m + 1)
        throw std::invalid_argument("r_omega_general: need phases for every pulse up to m");
    Mat3c total;
    if (omega == 0.0) return total; // the defining integral carries a factor -iw
    FreqTerms f(omega, schedule);
    PulseAccumulator acc;
    cplx zk = 1.0;
    for (uint64_t k = 0; k <= m; ++k) {
        Mat3c term = interval_bracket(phases[k], f) * Mat3c::from_real(acc.matrix());
        total = total + term * zk;
        acc.push(phases[k]);
        zk *= f.z;
    }
    return total;
}

Mat3c r_omega_m0(double omega, const PulseSchedule& schedule) {
    schedule.validate();
    Mat3c r;
    if (omega == 0.0) return r;
    FreqTerms f(omega, schedule);
    cplx uv = f.u * f.v;
    cplx w2gu = f.omega * f.omega * f.gu;
    cplx corner = cplx(0.0, 1.0) * f.omega * f.rabi * f.gu;
    r(0, 0) = f.one_minus_u * (1.0 + uv) + f.u_one_minus_v;
    r(1, 1) = f.one_minus_u * (1.0 - uv) + w2gu;
    r(2, 2) = r(1, 1);
    r(1, 2) = -corner;
    r(2, 1) = corner;
    return r;
}

Mat3c r_omega_q1(double omega, uint64_t m, const PulseSchedule& schedule) {
    Mat3c base = r_omega_m0(omega, schedule);
    if (omega == 0.0) return base;
    FreqTerms f(omega, schedule);
    // partial geometric sums of z^k and (-z)^k; summing directly sidesteps
    // the 1 -+ z = 0 points of the ratio form
    cplx sum_plus = 0.0, sum_minus = 0.0, zk = 1.0;
    for (uint64_t k = 0; k <= m; ++k) {
        sum_plus += zk;
        sum_minus += (k % 2 == 0) ? zk : -zk;
        zk *= f.z;
    }
    return diag_times(sum_plus, sum_minus, sum_minus, base);
}

Mat3c r_omega_q4(double omega, uint64_t m, const PulseSchedule& schedule) {
    Mat3c total = r_omega_m0(omega, schedule);
    if (omega == 0.0) return total;
    FreqTerms f(omega, schedule);
    cplx uv = f.u * f.v;
    cplx tail = 1.0 - f.u - uv; // 1 - u(1+v)
    cplx w2 = cplx(omega * omega, 0.0);
    cplx corner_unit = cplx(0.0, 1.0) * f.omega * f.rabi * f.gu / std::sqrt(2.0);
    cplx zk = 1.0;
    for (uint64_t k = 1; k <= m; ++k) {
        zk *= f.z;
        bool odd = (k % 2 == 1);
        double qk = ((k - 1) % 4 <= 1) ? 1.0 : -1.0;
        Mat3c a;
        if (odd) {
            a(0, 0) = f.one_minus_u; a(0, 1) = uv;
            a(1, 0) = uv;            a(1, 1) = f.one_minus_u;
            a(2, 2) = tail;
        } else {
            a(0, 0) = uv;            a(0, 1) = f.one_minus_u;
            a(1, 0) = f.one_minus_u; a(1, 1) = uv;
            a(2, 2) = -tail;
        }
        cplx sk = (odd ? -1.0 : 1.0) * w2;
        cplx fd = f.u_one_minus_v; // u(1+v)/(w^2-O^2) times (w^2-O^2)(1-v)/(1+v)
        cplx b00 = -0.5 * (fd - f.gu * sk);
        cplx b01 = -0.5 * (fd + f.gu * sk);
        cplx b02 = qk * corner_unit;
        Mat3c b;
        b(0, 0) = b00;  b(0, 1) = b01;  b(0, 2) = b02;
        b(1, 0) = b01;  b(1, 1) = b00;  b(1, 2) = -b02;
        b(2, 0) = -b02; b(2, 1) = b02;  b(2, 2) = -w2 * f.gu;
        total = total + (a + b) * zk;
    }
    return total;
}

Mat3c filter_matrix(double omega, uint64_t m, const PulseSchedule& schedule,
                    const std::vector<double>& phases) {
    if (omega == 0.0)
        throw std::invalid_argument("filter_matrix: omega must be nonzero");
    Mat3c r = r_omega_general(omega, m, schedule, phases);
    return (r * r.adjoint()) * cplx(1.0 / (omega * omega), 0.0);
}

SpectralDensity SpectralDensity::white(double sigma, double omega_min, double omega_max) {
    SpectralDensity s;
    s.kind = SpectrumKind::White;
    s.sigma = sigma;
    s.omega_min = omega_min;
    s.omega_max = omega_max;
    s.validate();
    return s;
}

SpectralDensity SpectralDensity::one_over_f(double sigma, double omega_min, double omega_max) {
    SpectralDensity s;
    s.kind = SpectrumKind::OneOverF;
    s.sigma = sigma;
    s.omega_min = omega_min;
    s.omega_max = omega_max;
    s.validate();
    return s;
}

SpectralDensity SpectralDensity::tabulated(std::vector<std::pair<double, double>> table) {
    SpectralDensity s;
    s.kind = SpectrumKind::Tabulated;
    s.table = std::move(table);
    if (s.table.size() < 2)
        throw std::invalid_argument("spectrum table: need at least two rows");
    for (size_t i = 0; i < s.table.size(); ++i) {
        if (!(s.table[i].first > 0.0) || !std::isfinite(s.table[i].first))
            throw std::invalid_argument("spectrum table: omega values must be positive");
        if (!(s.table[i].second >= 0.0) || !std::isfinite(s.table[i].second))
            throw std::invalid_argument("spectrum table: s values must be >= 0");
        if (i > 0 && !(s.table[i].first > s.table[i - 1].first))
            throw std::invalid_argument("spectrum table: omega must be strictly increasing");
    }
    s.omega_min = s.table.front().first;
    s.omega_max = s.table.back().first;
    double integral = 0.0;
    for (size_t i = 1; i < s.table.size(); ++i)
        integral += 0.5 * (s.table[i].second + s.table[i - 1].second) *
                    (s.table[i].first - s.table[i - 1].first);
    s.sigma = std::sqrt(integral / pi);
    s.validate();
    return s;
}

void SpectralDensity::validate() const {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw std::invalid_argument("spectrum: need 0 < omega_min < omega_max");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("spectrum: sigma must be finite and >= 0");
    if (kind == SpectrumKind::Tabulated && table.size() < 2)
        throw std::invalid_argument("spectrum: tabulated kind needs a table");
}

double SpectralDensity::value(double omega) const {
    if (omega < omega_min || omega > omega_max) return 0.0;
    switch (kind) {
    case SpectrumKind::White:
        return pi * sigma * sigma / (omega_max - omega_min);
    case SpectrumKind::OneOverF:
        return pi * sigma * sigma / (omega * std::log(omega_max / omega_min));
    case SpectrumKind::Tabulated: {
        auto it = std::lower_bound(table.begin(), table.end(), omega,
                                   [](const std::pair<double, double>& row, double w) {
                                       return row.first < w;
                                   });
        if (it == table.begin()) return it->second;
        if (it == table.end()) return table.back().second;
        auto lo = *(it - 1);
        auto hi = *it;
        double t = (omega - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }
    }
    return 0.0;
}

double coherence_integral(uint64_t m, const PulseSchedule& schedule,
                          const std::vector<double>& phases,
                          const SpectralDensity& noise) {
    noise.validate();
    schedule.validate();
    if (phases.size() < m + 1)
        throw std::invalid_argument("coherence_integral: need phases for every pulse up to m");
    double lo = std::log(noise.omega_min);
    double hi = std::log(noise.omega_max);
    auto integrate = [&](size_t points) {
        // trapezoid on a log grid: int h dw = int h(e^x) e^x dx. The first
        // and last nodes are pinned to the band edges; exp(log(w)) can land
        // an ulp outside the band, where value() cuts off.
        double h = (hi - lo) / static_cast<double>(points - 1);
        double acc = 0.0;
        for (size_t i = 0; i < points; ++i) {
            double w = i == 0          ? noise.omega_min
                       : i == points - 1 ? noise.omega_max
                                         : std::exp(lo + h * static_cast<double>(i));
            double s = noise.value(w);
            double f = s == 0.0 ? 0.0 : s * g_zz_value(w, m, schedule, phases) * w;
            acc += (i == 0 || i == points - 1) ? 0.5 * f : f;
        }
        return acc * h / pi;
    };
    size_t points = 2048;
    double prev = integrate(points);
    for (int round = 0; round < 5; ++round) {
        points *= 2;
        double next = integrate(points);
        if (std::abs(next - prev) <= 1e-4 * std::abs(next)) return next;
        prev = next;
    }
    std::ostringstream msg;
    msg << "coherence_integral: log-trapezoid refinement did not settle by "
        << points << " points (last value " << prev << ")";
    throw std::runtime_error(msg.str());
}

DecayEnvelope decay_envelope(uint64_t m_max, const PulseSchedule& schedule,
                             const std::vector<double>& phases,
                             const SpectralDensity& noise) {
    if (phases.size() < m_max + 1)
        throw std::invalid_argument("decay_envelope: need phases for every pulse up to m_max");
    DecayEnvelope out;
    out.chi.reserve(m_max + 1);
    out.envelope.reserve(m_max + 1);
    for (uint64_t m = 0; m <= m_max; ++m) {
        double chi = coherence_integral(m, schedule, phases, noise);
        out.chi.push_back(chi);
        out.envelope.push_back(std::exp(-chi));
    }
    return out;
}

ControlSpectrum control_spectrum(uint64_t m, const PulseSchedule& schedule,
                                 const std::vector<double>& phases,
                                 double omega_min, double omega_max,
                                 std::size_t points) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw std::invalid_argument("control_spectrum: need 0 < omega_min < omega_max");
    if (points < 2)
        throw std::invalid_argument("control_spectrum: need at least two grid points");
    ControlSpectrum cs;
    cs.omega_grid.reserve(points);
    cs.r_omega.reserve(points);
    cs.g.reserve(points);
    double lo = std::log(omega_min), hi = std::log(omega_max);
    for (std::size_t i = 0; i < points; ++i) {
        double w = i == 0          ? omega_min
                   : i == points - 1 ? omega_max
                                     : std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                                    static_cast<double>(points - 1));
        Mat3c r = r_omega_general(w, m, schedule, phases);
        cs.omega_grid.push_back(w);
        cs.g.push_back((r * r.adjoint()) * cplx(1.0 / (w * w), 0.0));
        cs.r_omega.push_back(std::move(r));
    }
    return cs;
}

void write_control_spectrum_csv(const ControlSpectrum& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << "omega_rad_per_ns,g_xx,g_yy,g_zz,g_xy_re,g_xy_im,g_xz_re,g_xz_im,g_yz_re,g_yz_im\n";
    for (size_t i = 0; i < cs.omega_grid.size(); ++i) {
        const Mat3c& g = cs.g[i];
        out << format_double(cs.omega_grid[i]) << ','
            << format_double(g(0, 0).real()) << ',' << format_double(g(1, 1).real()) << ','
            << format_double(g(2, 2).real()) << ',' << format_double(g(0, 1).real()) << ','
            << format_double(g(0, 1).imag()) << ',' << format_double(g(0, 2).real()) << ','
            << format_double(g(0, 2).imag()) << ',' << format_double(g(1, 2).real()) << ','
            << format_double(g(1, 2).imag()) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_decay_envelope_csv(const DecayEnvelope& env, const PulseSchedule& schedule,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << "m,total_time_ns,chi,envelope\n";
    for (size_t m = 0; m < env.chi.size(); ++m) {
        double t = static_cast<double>(m + 1) * schedule.interval();
        out << m << ',' << format_double(t) << ',' << format_double(env.chi[m]) << ','
            << format_double(env.envelope[m]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SpectralDensity read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spectrum file: " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (first) {
            first = false;
            // a header line is anything whose first field is not a number
            try {
                parse_double(fields.at(0), "spectrum");
            } catch (const std::invalid_argument&) {
                continue;
            }
        }
        if (fields.size() != 2)
            throw std::invalid_argument("spectrum file: expected two columns, got " +
                                        std::to_string(fields.size()) + " in '" + line + "'");
        double w = parse_double(fields[0], "spectrum omega");
        double s = parse_double(fields[1], "spectrum value");
        rows.emplace_back(w, s);
    }
    return SpectralDensity::tabulated(std::move(rows));
}

} // namespace gsf
