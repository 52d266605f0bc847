#include <doctest.h>

#include "gsf/qubit.hpp"
#include "gsf/residue.hpp"
#include "gsf/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace {

// Probability oracle: (1 + cos(2*pi*m^2*n/l))/2 with the angle reduced mod l
// in exact integer arithmetic.
double appendix_probability(uint64_t n, uint64_t l, uint64_t m) {
    unsigned __int128 a = static_cast<unsigned __int128>(m) * m % l;
    a = a * (n % l) % l;
    double frac = static_cast<double>(static_cast<uint64_t>(a)) / static_cast<double>(l);
    return 0.5 * (1.0 + std::cos(2.0 * gsf::pi * frac));
}

gsf::Mat3 axis_angle_matrix(const gsf::AxisAngle& aa) {
    return gsf::rotation_matrix(aa.gamma, aa.axis);
}

} // namespace

TEST_SUITE("qubit_sim") {

TEST_CASE("rotation superoperators, pinned examples") {
    auto ident = gsf::rotation_superop(0.0, 1.234);
    gsf::Vec3 v{0.3, -0.2, 0.9};
    auto iv = ident.apply(v);
    CHECK(iv.x == doctest::Approx(v.x).epsilon(1e-15));
    CHECK(iv.y == doctest::Approx(v.y).epsilon(1e-15));
    CHECK(iv.z == doctest::Approx(v.z).epsilon(1e-15));

    auto flip = gsf::rotation_superop(gsf::pi, 0.0).apply({0, 0, 1});
    CHECK(flip.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(flip.z == doctest::Approx(-1.0).epsilon(1e-15));

    auto half = gsf::rotation_superop(gsf::pi / 2, gsf::pi / 2).apply({0, 0, 1});
    CHECK(half.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(half.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(half.z == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("damping and dephasing superoperators") {
    auto none = gsf::damping_superop(0.0);
    gsf::Vec3 v{0.5, -0.1, -0.7};
    auto nv = none.apply(v);
    CHECK(nv.x == doctest::Approx(v.x));
    CHECK(nv.z == doctest::Approx(v.z));

    auto full = gsf::damping_superop(1e9).apply(v);
    CHECK(full.x == doctest::Approx(0.0));
    CHECK(full.y == doctest::Approx(0.0));
    CHECK(full.z == doctest::Approx(1.0)); // relaxes to the ground state +z
}

TEST_CASE("damping * dephasing * z-rotation reproduces the one-step decay matrix") {
    double g1 = 1.0 / 800.0, g2 = 1.0 / 600.0, dw = 0.013, t = 37.0;
    auto composed = gsf::damping_superop(g1 * t) *
                    gsf::dephasing_superop((g2 - 0.5 * g1) * t) *
                    gsf::rotation_superop_z(dw * t);
    auto m = gsf::superop_matrix(composed);

    double e2 = std::exp(-g2 * t), e1 = std::exp(-g1 * t);
    double c = std::cos(dw * t), s = std::sin(dw * t);
    std::array<double, 16> want = {
        1, 0,       0,      0,
        0, c * e2,  s * e2, 0,
        0, -s * e2, c * e2, 0,
        1 - e1, 0,  0,      e1,
    };
    for (int i = 0; i < 16; ++i) CHECK(m[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("every superoperator keeps the leading component fixed") {
    std::vector<gsf::Superop> ops = {
        gsf::rotation_superop(1.1, 0.3), gsf::rotation_superop_z(-0.7),
        gsf::rotation_superop_axis(2.0, {0.3, -0.4, 0.8}),
        gsf::damping_superop(0.25), gsf::dephasing_superop(0.4)};
    for (const auto& op : ops) {
        auto m = gsf::superop_matrix(op);
        CHECK(m[0] == 1.0);
        CHECK(m[1] == 0.0);
        CHECK(m[2] == 0.0);
        CHECK(m[3] == 0.0);
    }
}

TEST_CASE("Bloch norm contracts under decay and is preserved by rotations") {
    gsf::RngStream rng(3, 0);
    for (int trial = 0; trial < 200; ++trial) {
        gsf::Vec3 r{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
        if (r.norm() > 1.0) r = r.normalized();
        double before = r.norm();
        auto rot = gsf::rotation_superop(rng.uniform() * 6.28, rng.uniform() * 6.28);
        CHECK(rot.apply(r).norm() == doctest::Approx(before).epsilon(1e-12));
        CHECK(gsf::dephasing_superop(0.3).apply(r).norm() <= before + 1e-12);
        CHECK(gsf::damping_superop(0.2).apply(r).norm() <= 1.0 + 1e-9);
    }
}

TEST_CASE("phase schedule is computed by exact modular reduction") {
    gsf::RngStream rng(17, 1);
    for (int trial = 0; trial < 300; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e9);
        uint64_t l = 2 + static_cast<uint64_t>(rng.uniform() * 499.0);
        auto phases = gsf::gauss_phases(n, l, 25);
        CHECK(phases[0] == 0.0);
        for (uint64_t k = 1; k <= 25; ++k) {
            long double a = fmodl(static_cast<long double>(n) * (2.0L * k - 1.0L),
                                  2.0L * l);
            long double expect = 3.14159265358979323846264338327950288L * a /
                                 static_cast<long double>(l);
            if (k % 2 == 1 && expect > 0.0L)
                expect = 2.0L * 3.14159265358979323846264338327950288L - expect;
            CHECK(phases[k] ==
                  doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
            CHECK(phases[k] >= 0.0);
            CHECK(phases[k] < 2.0 * gsf::pi);
        }
    }
}

TEST_CASE("residue phases match full phases up to pi-pulse equivalence") {
    // the integer part of n/l adds multiples of pi to each phase, which a pi
    // rotation cannot distinguish: probabilities must agree
    gsf::RngStream rng(23, 2);
    for (int trial = 0; trial < 50; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e6);
        uint64_t l = 2 + static_cast<uint64_t>(rng.uniform() * 200.0);
        uint64_t m = 1 + static_cast<uint64_t>(rng.uniform() * 12.0);
        auto r = gsf::reduce_residue(n, l);
        auto sched = gsf::PulseSchedule::make(30.0, 25.0, m);
        double full = gsf::evolve_sequence(sched, gsf::gauss_phases(n, l, m), {});
        double reduced = gsf::evolve_sequence(sched, gsf::residue_phases(r.p, r.q, m), {});
        CHECK(full == doctest::Approx(reduced).epsilon(1e-9));
    }
}

TEST_CASE("single pulse with no decoherence returns certainty") {
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 0);
    CHECK(gsf::evolve_sequence(sched, {0.0}, {}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("noiseless sequence equals the closed-form probability") {
    gsf::RngStream rng(41, 3);
    for (int trial = 0; trial < 500; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e6);
        uint64_t l = 1 + static_cast<uint64_t>(rng.uniform() * 500.0);
        uint64_t m = static_cast<uint64_t>(rng.uniform() * 31.0);
        auto sched = gsf::PulseSchedule::make(30.0, 25.0, m);
        double got = gsf::evolve_sequence(sched, gsf::gauss_phases(n, l, m), {});
        CHECK(got == doctest::Approx(appendix_probability(n, l, m)).epsilon(1e-9));
    }
}

TEST_CASE("finite T2 reproduces the exponential summand") {
    double t2 = 700.0;
    gsf::DecoherenceParams dec;
    dec.t2 = t2;
    gsf::DecoherenceParams dec_with_t1 = dec;
    dec_with_t1.t1 = 800.0; // the T1 feed rotates into an unmeasured axis

    for (uint64_t m : {0ull, 1ull, 4ull, 9ull, 17ull}) {
        auto sched = gsf::PulseSchedule::make(30.0, 25.0, m);
        double decay = std::exp(-static_cast<double>(m + 1) * sched.interval() / t2);

        double factor = gsf::evolve_sequence(sched, gsf::gauss_phases(263193, 21, m), dec);
        CHECK(factor == doctest::Approx(0.5 * (1 + decay)).epsilon(1e-9));

        double ghost = gsf::evolve_sequence(sched, gsf::gauss_phases(263193, 12, m), dec);
        double cosv = 2.0 * appendix_probability(263193, 12, m) - 1.0;
        CHECK(ghost == doctest::Approx(0.5 * (1 + cosv * decay)).epsilon(1e-9));

        double with_t1 = gsf::evolve_sequence(sched, gsf::gauss_phases(263193, 21, m),
                                              dec_with_t1);
        CHECK(with_t1 == doctest::Approx(0.5 * (1 + decay)).epsilon(1e-9));
    }
}

TEST_CASE("constant detuning cancels under ideal pulses") {
    gsf::DecoherenceParams base;
    base.t2 = 900.0;
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 11);
    auto phases = gsf::gauss_phases(263193, 13, 11);
    double reference = gsf::evolve_sequence(sched, phases, base);
    for (double dw : {-0.4, -0.05, 0.01, 0.2, 1.7}) {
        gsf::DecoherenceParams dec = base;
        dec.delta_omega = dw;
        CHECK(gsf::evolve_sequence(sched, phases, dec, gsf::PulseModel::Ideal) ==
              doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("detuned pulses break the echo") {
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 5);
    auto phases = gsf::gauss_phases(263193, 21, 5);
    gsf::DecoherenceParams dec;
    dec.delta_omega = 0.05;
    double detuned = gsf::evolve_sequence(sched, phases, dec, gsf::PulseModel::Detuned);
    CHECK(std::abs(detuned - 1.0) > 1e-3);
    // and at zero detuning the detuned model reduces to the ideal one exactly
    gsf::DecoherenceParams zero;
    CHECK(gsf::evolve_sequence(sched, phases, zero, gsf::PulseModel::Detuned) ==
          gsf::evolve_sequence(sched, phases, zero, gsf::PulseModel::Ideal));
}

TEST_CASE("profile agrees with one sequence per pulse count") {
    gsf::DecoherenceParams dec;
    dec.t2 = 500.0;
    dec.t1 = 2000.0;
    dec.delta_omega = 0.01;
    uint64_t m_max = 9;
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, m_max);
    auto phases = gsf::gauss_phases(263193, 36, m_max);
    auto profile = gsf::evolve_profile(sched, phases, dec, gsf::PulseModel::Detuned);
    REQUIRE(profile.size() == m_max + 1);
    for (uint64_t m = 0; m <= m_max; ++m) {
        auto sub = gsf::PulseSchedule::make(30.0, 25.0, m);
        std::vector<double> prefix(phases.begin(), phases.begin() + m + 1);
        CHECK(profile[m] ==
              doctest::Approx(gsf::evolve_sequence(sub, prefix, dec,
                                                   gsf::PulseModel::Detuned))
                  .epsilon(1e-14));
    }
}

TEST_CASE("pulse composition, pinned single pulse") {
    auto aa = gsf::rodriguez_compose({0.0});
    CHECK(aa.gamma == doctest::Approx(gsf::pi).epsilon(1e-12));
    CHECK(aa.axis.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(aa.axis.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(aa.axis.z == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("composed rotation matches the sequence simulator") {
    gsf::RngStream rng(77, 4);
    for (int trial = 0; trial < 300; ++trial) {
        uint64_t m = static_cast<uint64_t>(rng.uniform() * 14.0);
        std::vector<double> phases(m + 1);
        phases[0] = 0.0;
        for (auto& p : phases) p = rng.uniform() * 2 * gsf::pi;
        auto sched = gsf::PulseSchedule::make(30.0, 25.0, m);
        double via_sim = gsf::evolve_sequence(sched, phases, {});
        double via_compose = gsf::composed_probability(gsf::rodriguez_compose(phases));
        CHECK(via_sim == doctest::Approx(via_compose).epsilon(1e-10));
    }
}

TEST_CASE("parity of the pulse count selects the resultant's character") {
    // an even number of equatorial pi pulses (odd m) composes to a z-axis
    // rotation; an odd number (even m) to an equatorial pi rotation
    gsf::RngStream rng(91, 5);
    int z_cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e6);
        uint64_t l = 2 + static_cast<uint64_t>(rng.uniform() * 300.0);
        uint64_t m = 1 + 2 * static_cast<uint64_t>(rng.uniform() * 7.0); // odd
        auto aa = gsf::rodriguez_compose(gsf::gauss_phases(n, l, m));
        double frac_angle = 2.0 * gsf::pi *
                            (static_cast<double>((static_cast<unsigned __int128>(m) * m %
                                                  l) * (n % l) % l) /
                             static_cast<double>(l));
        CHECK(std::cos(aa.gamma) == doctest::Approx(std::cos(frac_angle)).epsilon(1e-9));
        if (std::abs(std::sin(frac_angle)) > 0.1) {
            CHECK(std::abs(aa.axis.z) == doctest::Approx(1.0).epsilon(1e-7));
            ++z_cases;
        }

        auto even = gsf::rodriguez_compose(gsf::gauss_phases(n, l, m + 1));
        CHECK(std::cos(even.gamma) == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(even.axis.z == doctest::Approx(0.0).epsilon(1e-7));
    }
    CHECK(z_cases > 30); // the z-axis assertion must actually have fired
}

TEST_CASE("factor sequences compose to the identity after even pulse counts") {
    for (uint64_t m : {1ull, 3ull, 7ull, 13ull}) {
        auto aa = gsf::rodriguez_compose(gsf::gauss_phases(263193, 21, m));
        CHECK(std::cos(aa.gamma) == doctest::Approx(1.0).epsilon(1e-9));
        auto mat = axis_angle_matrix(aa);
        CHECK(mat(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("monte carlo at zero detuning reduces to the deterministic value") {
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 7);
    auto mc = gsf::monte_carlo_detuned_signal(sched, 263193, 12, 0.0, 50, 99);
    double want = gsf::evolve_sequence(sched, gsf::gauss_phases(263193, 12, 7), {});
    CHECK(mc.mean == doctest::Approx(want).epsilon(1e-14));
    CHECK(mc.std_err == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("monte carlo is deterministic in the seed") {
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 9);
    auto a = gsf::monte_carlo_detuned_signal(sched, 263193, 4, 0.8, 64, 1234);
    auto b = gsf::monte_carlo_detuned_signal(sched, 263193, 4, 0.8, 64, 1234);
    CHECK(a.mean == b.mean);
    CHECK(a.std_err == b.std_err);
    auto c = gsf::monte_carlo_detuned_signal(sched, 263193, 4, 0.8, 64, 4321);
    CHECK(a.mean != c.mean);
}

TEST_CASE("strong detuning destroys the factor signal") {
    // ideal value is 1.0; with detunings several times the Rabi frequency the
    // pulses barely rotate and the averaged signal collapses toward one half
    gsf::DecoherenceParams clean;
    for (uint64_t m : {2ull, 17ull}) {
        auto sched = gsf::PulseSchedule::make(30.0, 25.0, m);
        auto mc = gsf::monte_carlo_detuned_signal(sched, 263193, 21, 1.0, 4000, 7, clean);
        CHECK(std::abs(mc.mean - 0.5) < 0.15);
        CHECK(mc.std_err > 0.0);
    }
}

TEST_CASE("validation rejects broken inputs") {
    auto sched = gsf::PulseSchedule::make(30.0, 25.0, 3);
    CHECK_THROWS(gsf::evolve_sequence(sched, {0.0, 1.0}, {})); // wrong length
    gsf::DecoherenceParams bad;
    bad.t1 = 100.0;
    bad.t2 = 300.0; // T2 > 2*T1
    CHECK_THROWS(bad.validate());
    gsf::PulseSchedule broken = sched;
    broken.omega_rabi = 1.0;
    CHECK_THROWS(broken.validate());
}

} // TEST_SUITE
