#include "spiderweb/zeta_sums.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spiderweb::zeta_sums {

namespace {
constexpr int kDirectTerms = 128;
}

double log_hurwitz_tail(double s, double q) {
    if (!(s > 1.0)) throw std::invalid_argument("log_hurwitz_tail: need s > 1");
    if (!(q > 0.0)) throw std::invalid_argument("log_hurwitz_tail: need q > 0");

    // Everything below is scaled by q^s, i.e. we accumulate sum * q^s.
    double scaled = 0.0;
    for (int k = 0; k < kDirectTerms; ++k) {
        scaled += std::exp(-s * std::log1p(static_cast<double>(k) / q));
    }

    // Euler-Maclaurin closure from c = q + kDirectTerms:
    //   integral  c^(1-s)/(s-1)
    //   + c^(-s)/2 + s c^(-s-1)/12 - s(s+1)(s+2) c^(-s-3)/720
    //   + s(s+1)(s+2)(s+3)(s+4) c^(-s-5)/30240
    // The next omitted term is O(s^7 c^(-s-7)); with c >= 128 it is far below
    // double precision relative to the leading block.
    const double L = std::log1p(static_cast<double>(kDirectTerms) / q);  // log(c/q)
    const double c = q + kDirectTerms;
    const double head = std::exp(-s * L);  // (c/q)^(-s)
    scaled += q * std::exp((1.0 - s) * L) / (s - 1.0);
    scaled += head * 0.5;
    scaled += head * s / (12.0 * c);
    scaled -= head * s * (s + 1.0) * (s + 2.0) / (720.0 * c * c * c);
    scaled += head * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) /
              (30240.0 * c * c * c * c * c);

    return -s * std::log(q) + std::log(scaled);
}

double hurwitz_tail(double s, double q) { return std::exp(log_hurwitz_tail(s, q)); }

double log_diff_exp(double x, double y) {
    if (!(x > y)) throw std::invalid_argument("log_diff_exp: need x > y");
    if (std::isinf(y)) return x;
    return x + std::log1p(-std::exp(y - x));
}

}  // namespace spiderweb::zeta_sums
