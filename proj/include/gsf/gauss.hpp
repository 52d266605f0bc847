#pragma once

#include "gsf/residue.hpp"

#include <cstdint>

namespace gsf {

// cos(2*pi*m^2*p/q) with m^2*p reduced mod q in integer arithmetic first,
// so the cosine argument never exceeds 2*pi.
double gauss_summand(uint64_t m, const ReducedResidue& r);

struct GaussSumValue {
    double value = 0.0;   // in [-1, 1]; exactly 1 for factors
    uint64_t m_used = 0;  // highest summand index M
};

GaussSumValue gauss_sum(uint64_t m_max, const ReducedResidue& r);

// Full-period mean (1/q) * sum_{m=0}^{q-1} cos(2*pi*m^2/q). Closed form
// 1/sqrt(q) when q mod 4 is 0 or 1; the 2,3 cases are summed directly.
double quadratic_gauss_plateau(uint64_t q);

// Measured excited-state probability for the noiseless sequence,
// (1 + C)/2: equals 1 when l divides n.
double ideal_signal(uint64_t m_max, uint64_t n, uint64_t l);

} // namespace gsf
