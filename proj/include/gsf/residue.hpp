#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsf {

// The interference pattern of a trial factor l against a target n depends
// only on the fractional part of n/l, kept here as a reduced fraction p/q.
// Factors use the convention p = 0, q = 1 so every summand is cos(0) = 1.
struct ReducedResidue {
    uint64_t p = 0;
    uint64_t q = 1;

    bool is_factor() const { return q == 1; }
    bool operator==(const ReducedResidue&) const = default;
};

ReducedResidue reduce_residue(uint64_t n, uint64_t l);

enum class PreprocessLevel { None, Basic, Extended };

std::string to_string(PreprocessLevel level);
PreprocessLevel preprocess_level_from_string(const std::string& s);

// Result of classically stripping small factors from n before the quantum
// stage: n = 2^n2 * 5^n5 * 9^n9 * reduced_n.
struct PreprocessRecord {
    int n2 = 0;
    int n5 = 0;
    std::optional<int> n9;
    uint64_t reduced_n = 1;

    uint64_t reconstruct() const;
};

PreprocessRecord preprocess(uint64_t n, bool extended);

// Candidate divisors to test. Unpreprocessed: every integer in [2, l_max].
// After stripping 2s and 5s only odd non-multiples of 5 remain useful, and
// the extended level also drops multiples of 9.
std::vector<uint64_t> trial_factors(uint64_t reduced_n, uint64_t l_max,
                                    PreprocessLevel level);

enum class TrialFactorClass { Factor, WellBehaved, TypeIGhost, TypeIIGhost };

std::string to_string(TrialFactorClass c);
TrialFactorClass trial_class_from_string(const std::string& s);

// Smallest pulse count m with 4*m^4 >= n: below this, even well-behaved
// nonfactors may not have destructively interfered yet.
uint64_t type_i_pulse_floor(uint64_t n);

TrialFactorClass classify(uint64_t n, uint64_t l, uint64_t m_lower,
                          double epsilon);

} // namespace gsf
