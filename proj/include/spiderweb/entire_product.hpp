#ifndef SPIDERWEB_ENTIRE_PRODUCT_HPP
#define SPIDERWEB_ENTIRE_PRODUCT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "spiderweb/logpolar.hpp"

namespace spiderweb {

enum class FamilyKind { explicit_list, power_law, cosh_sqrt, sinh_sqrt_over_sqrt };

struct ZeroEntry {
    double a;  // zero location; f vanishes at -a
    int p;     // multiplicity
};

// Generator of the (negative-real) zero sequence. Generated kinds carry a
// closed-form a_n; explicit lists carry the entries themselves.
//
// Presets: cosh_sqrt has a_n = ((2n-1)pi/2)^2 (f = cosh sqrt(z)),
// sinh_sqrt_over_sqrt has a_n = (n pi)^2 (f = sinh(sqrt z)/sqrt z), both with
// p_n = 1. power_law has a_n = alpha * n^q, p_n = 1.
struct ZeroFamily {
    FamilyKind kind = FamilyKind::explicit_list;
    double alpha = 1.0;
    double q = 2.0;
    std::vector<ZeroEntry> zeros;

    static ZeroFamily explicit_list(std::vector<ZeroEntry> entries);
    static ZeroFamily power_law(double alpha, double q);
    static ZeroFamily cosh_sqrt();
    static ZeroFamily sinh_sqrt_over_sqrt();

    // log a_n for generated kinds (n >= 1, passed as double so formal indices
    // beyond 2^53 remain usable in tail formulas).
    double log_zero(double n) const;
    // number of zeros with a_n <= e^log_r (multiplicity-blind; generated kinds
    // have p_n = 1 so this is also the multiplicity count)
    double count_at_or_below(double log_r) const;
};

// f(z) = c z^p0 prod_{n<=N} (1 + z/a_n)^{p_n}, with a certified bound on the
// tail dropped beyond N.
//
// Generated families evaluate zeros with a_n <= ~4|z| factor by factor; the
// remaining kept zeros (a potentially enormous formal range; N itself is a
// real-valued count) enter through the expansion
//   sum_n log(1 + z/a_n) = sum_j (-1)^{j+1} z^j S_j / j,   S_j = sum_n a_n^{-j},
// with the sums S_j precomputed from Hurwitz-style tails at a ladder of split
// radii (one per log-unit below max_log_radius). At the chosen split the
// expansion ratio |z|/a_n stays below e/4, so 60 terms reach ~1e-17.
class EntireProductFunction {
  public:
    double c() const { return c_; }
    int p0() const { return p0_; }
    const ZeroFamily& family() const { return family_; }
    double max_log_radius() const { return max_log_radius_; }
    double tol() const { return tol_; }

    // N: how many zeros the truncation keeps (explicit + implicit)
    double formal_zero_count() const { return n_formal_; }
    std::size_t explicit_zero_count() const { return log_zeros_.size(); }
    bool has_implicit_range() const {
        return n_formal_ > static_cast<double>(log_zeros_.size());
    }

    double explicit_log_zero(std::size_t i) const { return log_zeros_[i]; }
    int explicit_multiplicity(std::size_t i) const { return mults_[i]; }

    // bound on |log f - log f_truncated| at radius e^log_r (dropped zeros only;
    // +inf when the bound overflows, which honestly flags a vacuous budget)
    double tail_bound(double log_r) const;

    // p0 + sum of p_n over kept zeros with a_n < e^log_r
    double total_multiplicity_below(double log_r) const;

    // log f(z) as a LogComplex whose arg is Im g(z) for the branch
    // g = log|c| + i arg(c) + p0 Log z + sum p_n Log(1 + z/a_n), all principal.
    // Throws zero_factor_error at zeros and out_of_validity_error when an
    // implicit-range truncation is evaluated beyond its validity radius.
    LogComplex eval_log(const LogComplex& z) const;

    friend EntireProductFunction truncate(double c, int p0, const ZeroFamily& family,
                                          double max_log_radius, double tol);

  private:
    EntireProductFunction() = default;

    // series for sum over (n_below, N] of Log(1 + z/a_n), valid for
    // |z| <= e^{valid_log_radius}
    struct SeriesLevel {
        double valid_log_radius = 0.0;
        std::size_t n_below = 0;               // zeros evaluated explicitly
        std::vector<double> log_power_sums;    // log S_j, j = 1..J; empty if none
    };

    const SeriesLevel& pick_level(double log_r) const;

    double c_ = 1.0;
    int p0_ = 0;
    ZeroFamily family_;
    double max_log_radius_ = 0.0;
    double tol_ = 0.0;
    double n_formal_ = 0.0;

    std::vector<double> log_zeros_;  // ascending
    std::vector<int> mults_;
    std::vector<SeriesLevel> levels_;  // descending valid_log_radius
    double log_tail_coeff_ = -1e308;   // log sum_{n>N} p_n / a_n
};

// Build the finite product with N zeros chosen minimally so that the dropped
// tail satisfies sum_{n>N} p_n log(1 + |z|/a_n) <= tol for all
// |z| <= e^{max_log_radius} (via log(1+x) <= x and the family's tail sum).
// Throws tail_not_summable_error when the family has no summable tail.
EntireProductFunction truncate(double c, int p0, const ZeroFamily& family,
                               double max_log_radius, double tol);

// True iff eval_log(f, conj z) equals eval_log(f, z) with negated argument to
// the given tolerance (arguments compared modulo 2*pi; for c < 0 the two
// branch values differ by a full turn).
bool conj_symmetry_check(const EntireProductFunction& f, const LogComplex& z,
                         double tol = 1e-10);

}  // namespace spiderweb

#endif  // SPIDERWEB_ENTIRE_PRODUCT_HPP
