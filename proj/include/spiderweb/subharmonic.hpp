#ifndef SPIDERWEB_SUBHARMONIC_HPP
#define SPIDERWEB_SUBHARMONIC_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "spiderweb/entire_product.hpp"

namespace spiderweb {

// Everything here works with u_lambda = log^+(|f| / lambda), the subharmonic
// function whose circle maximum B and circle mean T drive the winding bounds.

// B(r, u_lambda) = max(0, log M(r) - log lambda).
double B_lambda(const EntireProductFunction& f, double log_r, double log_lambda);

// T(r, u_lambda) = (1/pi) * integral_0^pi u_lambda(re^{i theta}) dtheta (the
// full-circle mean, folded by symmetry). Adaptive quadrature with absolute
// tolerance 1e-9; the integrand's kink at theta_lambda(r) is located by
// level_theta and the integral is split there.
double T_lambda(const EntireProductFunction& f, double log_r, double log_lambda);

// r T'(r) as a central difference of T in log r (h = 1e-4), Richardson
// extrapolated once.
double r_T_prime(const EntireProductFunction& f, double log_r, double log_lambda);

// lhs = delta_arg of f along the level arc C_lambda(r); rhs = 2 pi r T'(r).
// The two are an identity for these functions; both sides are returned.
std::pair<double, double> winding_mean_identity(const EntireProductFunction& f,
                                                double log_r, double log_lambda);

// T(r) <= B(r) <= ((r0 + r)/(r0 - r)) T(r0), slack -1e-8; needs r < r0.
bool poisson_bound_check(const EntireProductFunction& f, double log_r, double log_r0,
                         double log_lambda);

// B(r, u_M) <= (4/pi) B(r0, u_M) arctan sqrt(r/r0) for u_M at level log_M_level,
// valid when the circle minima of u_M vanish below r0 (spot-checked on 32
// sampled radii; hypothesis_unmet_error when a sample fails).
bool milloux_schmidt_check(const EntireProductFunction& f, double log_r, double log_r0,
                           double log_M_level);

// Right side of the wind-growth bound with r1 = t, r2 = t^{1+a}, s = t^{1+a/2}:
//   (B_M(r2/2)/3 - 2 B_M(s) - 4 log M) / (log(r2/r1)/2),  M = M(t).
// Lower-bounds (delta_arg f(C2) - delta_arg f(C1)) / (2 pi); may be negative
// (vacuous) when a is too small.
double wind_growth_rhs(const EntireProductFunction& f, double log_t, double a);

struct MeanProfile {
    double log_lambda = 0.0;
    std::vector<std::array<double, 4>> samples;  // log_r, B, T, rTprime
};

MeanProfile mean_profile(const EntireProductFunction& f, double log_lambda,
                         double log_r_lo, double log_r_hi, int n_samples);
std::string mean_profile_csv(const MeanProfile& profile);

}  // namespace spiderweb

#endif  // SPIDERWEB_SUBHARMONIC_HPP
