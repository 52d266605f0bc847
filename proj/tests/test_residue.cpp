#include <doctest.h>

#include "gsf/gauss.hpp"
#include "gsf/residue.hpp"
#include "gsf/rng.hpp"

#include <cmath>
#include <cstdint>

namespace {

// Independent reference: reduce the fraction (n mod l)/l with a subtraction
// gcd, no shortcuts shared with the library.
struct Frac {
    uint64_t num, den;
};

uint64_t slow_gcd(uint64_t a, uint64_t b) {
    while (b != 0) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Frac reduce_fraction_oracle(uint64_t n, uint64_t l) {
    uint64_t num = n % l;
    uint64_t den = l;
    uint64_t g = slow_gcd(num, den);
    if (g == 0) return {0, 1};
    num /= g;
    den /= g;
    if (num == 0) den = 1;
    return {num, den};
}

} // namespace

TEST_SUITE("number_theory") {

TEST_CASE("residue reduction matches brute-force fraction reduction") {
    gsf::RngStream rng(13, 0);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 999999999.0);
        for (uint64_t l = 1; l <= 500; ++l) {
            auto got = gsf::reduce_residue(n, l);
            auto want = reduce_fraction_oracle(n, l);
            CHECK(got.p == want.num);
            CHECK(got.q == want.den);
        }
    }
}

TEST_CASE("residue reduction pinned values") {
    CHECK(gsf::reduce_residue(263193, 12) == gsf::ReducedResidue{3, 4});
    CHECK(gsf::reduce_residue(263193, 21) == gsf::ReducedResidue{0, 1});
    // the q=5 family: l = 15, 35, 105, 1245
    CHECK(gsf::reduce_residue(263193, 15) == gsf::ReducedResidue{1, 5});
    CHECK(gsf::reduce_residue(263193, 35) == gsf::ReducedResidue{4, 5});
    CHECK(gsf::reduce_residue(263193, 105) == gsf::ReducedResidue{3, 5});
    CHECK(gsf::reduce_residue(263193, 1245) == gsf::ReducedResidue{2, 5});
}

TEST_CASE("residue invariants") {
    gsf::RngStream rng(29, 1);
    for (int trial = 0; trial < 2000; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e6);
        uint64_t l = 1 + static_cast<uint64_t>(rng.uniform() * 2000.0);
        auto r = gsf::reduce_residue(n, l);
        CHECK(r.q >= 1);
        if (r.q > 1) {
            CHECK(r.p < r.q);
            CHECK(slow_gcd(r.p, r.q) == 1);
        } else {
            CHECK(r.p == 0);
        }
        // n/l - p/q must be an integer: n*q - p*l divisible by l*q
        unsigned __int128 lhs = static_cast<unsigned __int128>(n) * r.q -
                                static_cast<unsigned __int128>(r.p) * l;
        CHECK(static_cast<uint64_t>(lhs % (static_cast<unsigned __int128>(l) * r.q)) == 0);
    }
}

TEST_CASE("preprocess pinned values and reconstruction") {
    auto a = gsf::preprocess(263193, false);
    CHECK(a.n2 == 0);
    CHECK(a.n5 == 0);
    CHECK_FALSE(a.n9.has_value());
    CHECK(a.reduced_n == 263193);

    auto b = gsf::preprocess(1000, false);
    CHECK(b.n2 == 3);
    CHECK(b.n5 == 3);
    CHECK(b.reduced_n == 1);

    auto c = gsf::preprocess(180, true);
    CHECK(c.n2 == 2);
    CHECK(c.n5 == 1);
    REQUIRE(c.n9.has_value());
    CHECK(*c.n9 == 1);
    CHECK(c.reduced_n == 1);
    CHECK(c.reconstruct() == 180);

    for (uint64_t n = 1; n <= 1000000; ++n) {
        auto rec = gsf::preprocess(n, (n % 2) == 0);
        if (rec.reconstruct() != n) {
            REQUIRE(rec.reconstruct() == n); // report only on failure
        }
    }
}

TEST_CASE("preprocess leaves no stripped divisor behind") {
    gsf::RngStream rng(7, 2);
    for (int trial = 0; trial < 500; ++trial) {
        uint64_t n = 1 + static_cast<uint64_t>(rng.uniform() * 1e9);
        auto rec = gsf::preprocess(n, true);
        CHECK(rec.reduced_n % 2 == 1);
        CHECK(rec.reduced_n % 10 != 5);
        CHECK(rec.reduced_n % 9 != 0);
    }
}

TEST_CASE("trial factor lists") {
    auto basic = gsf::trial_factors(263193, 10, gsf::PreprocessLevel::Basic);
    CHECK(basic == std::vector<uint64_t>{3, 7, 9});

    auto none = gsf::trial_factors(263193, 5, gsf::PreprocessLevel::None);
    CHECK(none == std::vector<uint64_t>{2, 3, 4, 5});

    CHECK(gsf::trial_factors(100, 1, gsf::PreprocessLevel::None).empty());
    CHECK(gsf::trial_factors(100, 1, gsf::PreprocessLevel::Extended).empty());

    auto ext = gsf::trial_factors(263193, 100, gsf::PreprocessLevel::Extended);
    for (uint64_t l : ext) {
        CHECK(l % 2 == 1);
        CHECK(l % 5 != 0);
        CHECK(l % 9 != 0);
    }
}

TEST_CASE("preprocessed trial factors never produce the worst residues") {
    // q divides l, so odd non-multiple-of-5 l can never reduce to q in {4,5,8}
    uint64_t reduced = gsf::preprocess(263193 * 40, false).reduced_n;
    for (uint64_t l : gsf::trial_factors(reduced, 500, gsf::PreprocessLevel::Basic)) {
        auto r = gsf::reduce_residue(reduced, l);
        CHECK(r.q != 4);
        CHECK(r.q != 5);
        CHECK(r.q != 8);
        if (r.q > 1) {
            CHECK(r.q % 2 == 1);
            CHECK(r.q % 5 != 0);
        }
    }
}

TEST_CASE("type I pulse floor") {
    CHECK(gsf::type_i_pulse_floor(263193) == 17); // 4*16^4 = 262144 just misses
    CHECK(gsf::type_i_pulse_floor(262144) == 16);
    CHECK(gsf::type_i_pulse_floor(262145) == 17);
    CHECK(gsf::type_i_pulse_floor(1) == 1);
    CHECK(gsf::type_i_pulse_floor(4) == 1);
    CHECK(gsf::type_i_pulse_floor(5) == 2);
}

TEST_CASE("classification pinned values") {
    CHECK(gsf::classify(263193, 12, 13, 0.1) == gsf::TrialFactorClass::TypeIIGhost);
    CHECK(gsf::classify(263193, 21, 13, 0.1) == gsf::TrialFactorClass::Factor);

    // l = 11: decide by the same rule using a freshly computed sum
    auto r = gsf::reduce_residue(263193, 11);
    REQUIRE(r.q > 1);
    REQUIRE(r.q % 4 != 0);
    REQUIRE(r.q % 4 != 1);
    double c13 = gsf::gauss_sum(13, r).value;
    auto want = std::abs(c13) > 0.1 ? gsf::TrialFactorClass::TypeIGhost
                                    : gsf::TrialFactorClass::WellBehaved;
    CHECK(gsf::classify(263193, 11, 13, 0.1) == want);
}

TEST_CASE("classification agrees with divisibility") {
    for (uint64_t l = 1; l <= 600; ++l) {
        bool is_factor = (263193 % l) == 0;
        CHECK((gsf::classify(263193, l, 17, 0.1) == gsf::TrialFactorClass::Factor) == is_factor);
    }
}

TEST_CASE("round trips for the enum names") {
    using PL = gsf::PreprocessLevel;
    for (PL level : {PL::None, PL::Basic, PL::Extended})
        CHECK(gsf::preprocess_level_from_string(gsf::to_string(level)) == level);
    using TC = gsf::TrialFactorClass;
    for (TC c : {TC::Factor, TC::WellBehaved, TC::TypeIGhost, TC::TypeIIGhost})
        CHECK(gsf::trial_class_from_string(gsf::to_string(c)) == c);
    CHECK_THROWS(gsf::preprocess_level_from_string("bogus"));
    CHECK_THROWS(gsf::trial_class_from_string("bogus"));
}

} // TEST_SUITE
