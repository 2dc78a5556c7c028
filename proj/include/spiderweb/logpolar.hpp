#ifndef SPIDERWEB_LOGPOLAR_HPP
#define SPIDERWEB_LOGPOLAR_HPP

#include <cmath>
#include <complex>
#include <limits>

namespace spiderweb {

// A nonzero complex number stored as (log of modulus, argument in radians).
// log_mod == -infinity encodes zero. The argument is NOT reduced modulo 2*pi in
// general: continuation-style accumulation (winding) relies on the unwrapped
// value. Only from_cartesian and one_plus normalize their result to (-pi, pi].
struct LogComplex {
    double log_mod = -std::numeric_limits<double>::infinity();
    double arg = 0.0;
};

namespace logpolar {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this log-modulus, 1 + w is computed through a log1p-style expansion;
// above the mirror threshold, through w * (1 + 1/w). Chosen so the cross terms
// dropped by each path are below 1e-17 relative.
inline constexpr double kSmallRegimeLogMod = -40.0;
inline constexpr double kLargeRegimeLogMod = 40.0;

inline LogComplex zero() { return {kNegInf, 0.0}; }
inline LogComplex one() { return {0.0, 0.0}; }

inline bool is_zero(const LogComplex& z) { return std::isinf(z.log_mod) && z.log_mod < 0; }

// Reduce an angle to (-pi, pi].
inline double wrap_angle(double a) {
    if (a > -M_PI && a <= M_PI) return a;
    double y = std::fmod(a, 2.0 * M_PI);
    if (y <= -M_PI)
        y += 2.0 * M_PI;
    else if (y > M_PI)
        y -= 2.0 * M_PI;
    return y;
}

inline LogComplex from_cartesian(double x, double y) {
    if (x == 0.0 && y == 0.0) return zero();
    double lm = std::log(std::hypot(x, y));
    double a = std::atan2(y, x);
    if (a <= -M_PI) a = M_PI;  // keep the branch value in (-pi, pi]
    return {lm, a};
}

// Only meaningful when exp(log_mod) is representable; internal mid-regime use.
inline std::complex<double> to_cartesian(const LogComplex& z) {
    if (is_zero(z)) return {0.0, 0.0};
    double m = std::exp(z.log_mod);
    return {m * std::cos(z.arg), m * std::sin(z.arg)};
}

inline LogComplex mul(const LogComplex& u, const LogComplex& v) {
    if (is_zero(u) || is_zero(v)) return zero();
    return {u.log_mod + v.log_mod, u.arg + v.arg};
}

inline LogComplex inv(const LogComplex& u) { return {-u.log_mod, -u.arg}; }

inline LogComplex conj(const LogComplex& u) { return {u.log_mod, -u.arg}; }

// u^k for k >= 0, exact in log space. u^0 = 1 (including u = 0).
inline LogComplex pow_int(const LogComplex& u, long k) {
    if (k == 0) return one();
    if (is_zero(u)) return zero();
    double kd = static_cast<double>(k);
    return {kd * u.log_mod, kd * u.arg};
}

namespace detail {

// 1 + w for |w| <= e^-40 (also used on 1/w in the large regime). The direct
// Cartesian sum would round 1 + Re(w) to 1 and lose the whole contribution.
inline LogComplex one_plus_small(const LogComplex& w) {
    if (is_zero(w)) return one();
    double m = std::exp(w.log_mod);  // may underflow to 0; then 1 + w == 1 in doubles
    double u = m * std::cos(w.arg);
    double v = m * std::sin(w.arg);
    double lm = 0.5 * std::log1p(2.0 * u + (u * u + v * v));
    double a = std::atan2(v, 1.0 + u);
    return {lm, a};
}

}  // namespace detail

// 1 + w with full relative accuracy across all magnitude regimes. Returned arg
// lies in (-pi, pi]. If 1 + w underflows to exact zero (w == -1 to machine
// precision) the zero encoding is returned; callers treat that as a factor of f
// vanishing (a curve hit a zero).
inline LogComplex one_plus(const LogComplex& w) {
    if (is_zero(w)) return one();
    if (w.log_mod <= kSmallRegimeLogMod) return detail::one_plus_small(w);
    if (w.log_mod >= kLargeRegimeLogMod) {
        LogComplex corr = detail::one_plus_small(inv(w));
        return {w.log_mod + corr.log_mod, wrap_angle(w.arg + corr.arg)};
    }
    // w = -1 in the canonical encoding (sin(pi) != 0 in doubles, so the
    // Cartesian path would miss the exact hit)
    if (w.log_mod == 0.0 && wrap_angle(w.arg) == M_PI) return zero();
    std::complex<double> z = to_cartesian(w);
    return from_cartesian(1.0 + z.real(), z.imag());
}

}  // namespace logpolar
}  // namespace spiderweb

#endif  // SPIDERWEB_LOGPOLAR_HPP
