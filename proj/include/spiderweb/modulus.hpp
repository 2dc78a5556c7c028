#ifndef SPIDERWEB_MODULUS_HPP
#define SPIDERWEB_MODULUS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spiderweb/entire_product.hpp"

namespace spiderweb {

// log M(r) at log-radius log_r. For this zero class |f(re^{i theta})| is
// strictly decreasing on [0, pi], so the maximum sits on the positive axis.
double log_max_modulus(const EntireProductFunction& f, double log_r);

// log m(r) = log|f(-r)| (limit branch from above). Throws at_zero_error when
// r coincides with a zero.
double log_min_modulus(const EntireProductFunction& f, double log_r);

// Least-squares slope of log log M against log r over n_samples points in
// [log_r_lo, log_r_hi]. Samples with log M <= 0 are unusable; fewer than 8
// usable samples raise range_too_small_error.
double estimate_order(const EntireProductFunction& f, double log_r_lo, double log_r_hi,
                      int n_samples);

// M(r^c) >= M(r)^c within the truncation's tail budget.
bool hadamard_check(const EntireProductFunction& f, double log_r, double cexp);

// Search for log_rho in (log_r, m_exp*log_r) with m(rho) >= M(r). Candidates
// sit at the log-midpoints of zero gaps (where log m peaks), refined by
// ternary search; absence is a legitimate outcome.
std::optional<double> find_min_condition_rho(const EntireProductFunction& f, double log_r,
                                             double m_exp);

// lambda_0 = log_R, lambda_{k+1} = log M(e^{lambda_k}). Radii that must be
// evaluated (k < n) are required to lie within the truncation validity;
// the final entry may exceed it (it is data, not an evaluation point).
std::vector<double> iterate_log_max(const EntireProductFunction& f, double log_R, int n);

// lambda_{k+1} = eps * log M(e^{lambda_k}); eps = 1 reduces to iterate_log_max.
std::vector<double> iterate_log_mu(const EntireProductFunction& f, double log_R, double eps,
                                   int n);

struct GrowthProfile {
    std::vector<std::array<double, 3>> samples;  // log_r, log_M, log_m
    double order_estimate = 0.0;
    bool hadamard_ok = false;
};

GrowthProfile growth_profile(const EntireProductFunction& f, double log_r_lo,
                             double log_r_hi, int n_samples);
std::string growth_profile_csv(const GrowthProfile& profile);

// Empirical surrogate for the Hadamard threshold: the smallest grid point from
// which hadamard_check passes for every larger grid radius and every exponent
// in cexps (validity permitting). Returns +inf if no grid point qualifies.
double empirical_hadamard_threshold(const EntireProductFunction& f, double log_r_lo,
                                    double log_r_hi, int n_samples,
                                    const std::vector<double>& cexps = {1.5, 2.0, 3.0});

// Empirical surrogate for the radius beyond which log M(r) > kappa * log r on
// the sample grid. Returns +inf if no grid point qualifies.
double empirical_power_growth_threshold(const EntireProductFunction& f, double kappa,
                                        double log_r_lo, double log_r_hi, int n_samples);

}  // namespace spiderweb

#endif  // SPIDERWEB_MODULUS_HPP
