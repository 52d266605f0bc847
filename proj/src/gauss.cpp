#include "gsf/gauss.hpp"

#include <cmath>

namespace gsf {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

double gauss_summand(uint64_t m, const ReducedResidue& r) {
    if (r.q == 1) return 1.0;
    // m^2 * p mod q, all in integers; (m mod q)^2 fits in 64 bits only for
    // small q, so go through __int128 for the products.
    uint64_t mq = m % r.q;
    unsigned __int128 sq = static_cast<unsigned __int128>(mq) * mq % r.q;
    uint64_t k = static_cast<uint64_t>(sq * r.p % r.q);
    return std::cos(two_pi * static_cast<double>(k) / static_cast<double>(r.q));
}

GaussSumValue gauss_sum(uint64_t m_max, const ReducedResidue& r) {
    if (r.q == 1) return {1.0, m_max};
    double acc = 0.0;
    for (uint64_t m = 0; m <= m_max; ++m) acc += gauss_summand(m, r);
    return {acc / static_cast<double>(m_max + 1), m_max};
}

double quadratic_gauss_plateau(uint64_t q) {
    if (q < 1) throw std::invalid_argument("quadratic_gauss_plateau: q must be positive");
    if (q % 4 == 0 || q % 4 == 1) return 1.0 / std::sqrt(static_cast<double>(q));
    // q = 2, 3 (mod 4): no tidy closed form for the real part; sum one period
    return gauss_sum(q - 1, {1, q}).value;
}

double ideal_signal(uint64_t m_max, uint64_t n, uint64_t l) {
    return 0.5 * (1.0 + gauss_sum(m_max, reduce_residue(n, l)).value);
}

} // namespace gsf
