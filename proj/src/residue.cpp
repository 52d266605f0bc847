#include "gsf/residue.hpp"
#include "gsf/gauss.hpp"

#include <cmath>
#include <numeric>

namespace gsf {

ReducedResidue reduce_residue(uint64_t n, uint64_t l) {
    if (n < 1 || l < 1) throw std::invalid_argument("reduce_residue: n and l must be positive");
    uint64_t g = std::gcd(n, l);
    uint64_t q = l / g;
    if (q == 1) return {0, 1};
    return {(n / g) % q, q};
}

std::string to_string(PreprocessLevel level) {
    switch (level) {
        case PreprocessLevel::None: return "none";
        case PreprocessLevel::Basic: return "basic";
        case PreprocessLevel::Extended: return "extended";
    }
    return "none";
}

PreprocessLevel preprocess_level_from_string(const std::string& s) {
    if (s == "none") return PreprocessLevel::None;
    if (s == "basic") return PreprocessLevel::Basic;
    if (s == "extended") return PreprocessLevel::Extended;
    throw std::invalid_argument("unknown preprocess level: " + s);
}

uint64_t PreprocessRecord::reconstruct() const {
    uint64_t v = reduced_n;
    for (int i = 0; i < n2; ++i) v *= 2;
    for (int i = 0; i < n5; ++i) v *= 5;
    for (int i = 0; i < n9.value_or(0); ++i) v *= 9;
    return v;
}

PreprocessRecord preprocess(uint64_t n, bool extended) {
    if (n < 1) throw std::invalid_argument("preprocess: n must be positive");
    PreprocessRecord rec;
    while (n % 2 == 0) {
        n /= 2;
        ++rec.n2;
    }
    while (n % 5 == 0) {
        n /= 5;
        ++rec.n5;
    }
    if (extended) {
        int n9 = 0;
        // divisibility by 9 is the digit-sum test; n % 9 is the same thing
        while (n % 9 == 0) {
            n /= 9;
            ++n9;
        }
        rec.n9 = n9;
    }
    rec.reduced_n = n;
    return rec;
}

std::vector<uint64_t> trial_factors(uint64_t reduced_n, uint64_t l_max,
                                    PreprocessLevel level) {
    if (reduced_n < 1) throw std::invalid_argument("trial_factors: reduced_n must be positive");
    std::vector<uint64_t> out;
    for (uint64_t l = 2; l <= l_max; ++l) {
        if (level != PreprocessLevel::None) {
            if (l % 2 == 0 || l % 5 == 0) continue;
            if (level == PreprocessLevel::Extended && l % 9 == 0) continue;
        }
        out.push_back(l);
    }
    return out;
}

std::string to_string(TrialFactorClass c) {
    switch (c) {
        case TrialFactorClass::Factor: return "factor";
        case TrialFactorClass::WellBehaved: return "well_behaved";
        case TrialFactorClass::TypeIGhost: return "type_i_ghost";
        case TrialFactorClass::TypeIIGhost: return "type_ii_ghost";
    }
    return "well_behaved";
}

TrialFactorClass trial_class_from_string(const std::string& s) {
    if (s == "factor") return TrialFactorClass::Factor;
    if (s == "well_behaved") return TrialFactorClass::WellBehaved;
    if (s == "type_i_ghost") return TrialFactorClass::TypeIGhost;
    if (s == "type_ii_ghost") return TrialFactorClass::TypeIIGhost;
    throw std::invalid_argument("unknown trial factor class: " + s);
}

uint64_t type_i_pulse_floor(uint64_t n) {
    if (n < 1) throw std::invalid_argument("type_i_pulse_floor: n must be positive");
    uint64_t m = static_cast<uint64_t>(std::ceil(std::pow(n / 4.0, 0.25)));
    if (m < 1) m = 1;
    auto fourth_times_4 = [](uint64_t v) {
        // 4*v^4, saturating; v stays small (<= ~2^15 for 64-bit n)
        long double x = 4.0L * powl(static_cast<long double>(v), 4.0L);
        return x;
    };
    while (m > 1 && fourth_times_4(m - 1) >= static_cast<long double>(n)) --m;
    while (fourth_times_4(m) < static_cast<long double>(n)) ++m;
    return m;
}

TrialFactorClass classify(uint64_t n, uint64_t l, uint64_t m_lower,
                          double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("classify: epsilon must lie in (0,1)");
    if (m_lower < 1) throw std::invalid_argument("classify: m_lower must be >= 1");
    ReducedResidue r = reduce_residue(n, l);
    if (r.is_factor()) return TrialFactorClass::Factor;
    if (r.q % 4 == 0 || r.q % 4 == 1) return TrialFactorClass::TypeIIGhost;
    if (std::abs(gauss_sum(m_lower, r).value) > epsilon)
        return TrialFactorClass::TypeIGhost;
    return TrialFactorClass::WellBehaved;
}

} // namespace gsf
