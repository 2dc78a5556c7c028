#include "spiderweb/entire_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spiderweb/errors.hpp"
#include "spiderweb/zeta_sums.hpp"

namespace spiderweb {

namespace {

using logpolar::is_zero;
using logpolar::kNegInf;
using logpolar::one_plus;
using logpolar::wrap_angle;

// Zeros with a_n <= 4 e^{split radius} are evaluated factor by factor; the
// series handles the rest with ratio below 1/4 at a split radius >= |z|.
constexpr double kLogExplicitMargin = 1.3862943611198906;  // log 4

// Evaluation is allowed this far past max_log_radius; the series ratio is
// then still <= e^0.5/4 < 0.42 and the order-64 cutoff keeps ~1e-16.
constexpr double kValiditySlack = 0.5;

constexpr int kSeriesOrder = 64;
constexpr int kSeriesLadderDepth = 28;

// Hard cap on materialized zeros (16 bytes each).
constexpr std::size_t kExplicitBudget = 20'000'000;

}  // namespace

ZeroFamily ZeroFamily::explicit_list(std::vector<ZeroEntry> entries) {
    ZeroFamily f;
    f.kind = FamilyKind::explicit_list;
    f.zeros = std::move(entries);
    return f;
}

ZeroFamily ZeroFamily::power_law(double alpha, double q) {
    if (!(alpha > 0.0) || !(q > 0.0))
        throw std::invalid_argument("power_law family: need alpha > 0, q > 0");
    ZeroFamily f;
    f.kind = FamilyKind::power_law;
    f.alpha = alpha;
    f.q = q;
    return f;
}

ZeroFamily ZeroFamily::cosh_sqrt() {
    ZeroFamily f;
    f.kind = FamilyKind::cosh_sqrt;
    return f;
}

ZeroFamily ZeroFamily::sinh_sqrt_over_sqrt() {
    ZeroFamily f;
    f.kind = FamilyKind::sinh_sqrt_over_sqrt;
    return f;
}

double ZeroFamily::log_zero(double n) const {
    switch (kind) {
        case FamilyKind::power_law:
            return std::log(alpha) + q * std::log(n);
        case FamilyKind::cosh_sqrt:
            // ((2n-1) pi / 2)^2
            return 2.0 * (std::log(2.0 * n - 1.0) + std::log(M_PI / 2.0));
        case FamilyKind::sinh_sqrt_over_sqrt:
            return 2.0 * std::log(n * M_PI);
        case FamilyKind::explicit_list: {
            auto idx = static_cast<std::size_t>(n) - 1;
            return std::log(zeros.at(idx).a);
        }
    }
    throw std::logic_error("unreachable");
}

double ZeroFamily::count_at_or_below(double log_r) const {
    switch (kind) {
        case FamilyKind::power_law:
            return std::floor(std::exp((log_r - std::log(alpha)) / q) + 1e-12);
        case FamilyKind::cosh_sqrt: {
            // a_n <= r  <=>  n <= sqrt(r)/pi + 1/2
            double n = std::exp(0.5 * log_r) / M_PI + 0.5;
            return std::floor(n + 1e-12);
        }
        case FamilyKind::sinh_sqrt_over_sqrt:
            return std::floor(std::exp(0.5 * log_r) / M_PI + 1e-12);
        case FamilyKind::explicit_list: {
            double count = 0;
            for (const auto& z : zeros)
                if (std::log(z.a) <= log_r) count += 1;
            return count;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// log of sum_{n > N} 1/a_n for a generated family.
double log_reciprocal_tail(const ZeroFamily& fam, double n_above) {
    switch (fam.kind) {
        case FamilyKind::power_law:
            if (fam.q <= 1.0)
                throw tail_not_summable_error("power-law family with q <= 1 has divergent tail");
            return -std::log(fam.alpha) + zeta_sums::log_hurwitz_tail(fam.q, n_above + 1.0);
        case FamilyKind::cosh_sqrt:
            // sum (2/((2n-1)pi))^2 = (1/pi^2) sum (n-1/2)^{-2}
            return -2.0 * std::log(M_PI) + zeta_sums::log_hurwitz_tail(2.0, n_above + 0.5);
        case FamilyKind::sinh_sqrt_over_sqrt:
            return -2.0 * std::log(M_PI) + zeta_sums::log_hurwitz_tail(2.0, n_above + 1.0);
        case FamilyKind::explicit_list:
            return kNegInf;
    }
    throw std::logic_error("unreachable");
}

// log of S_j = sum_{n=A}^{B} a_n^{-j}; requires A <= B.
double log_power_sum(const ZeroFamily& fam, int j, double a_first, double b_last) {
    double s, off, scale;
    switch (fam.kind) {
        case FamilyKind::power_law:
            s = fam.q * j;
            off = 0.0;
            scale = -j * std::log(fam.alpha);
            break;
        case FamilyKind::cosh_sqrt:
            s = 2.0 * j;
            off = -0.5;
            scale = -2.0 * j * std::log(M_PI);
            break;
        case FamilyKind::sinh_sqrt_over_sqrt:
            s = 2.0 * j;
            off = 0.0;
            scale = -2.0 * j * std::log(M_PI);
            break;
        default:
            throw std::logic_error("log_power_sum: generated families only");
    }
    double head = zeta_sums::log_hurwitz_tail(s, a_first + off);
    double rest = zeta_sums::log_hurwitz_tail(s, b_last + 1.0 + off);
    return scale + zeta_sums::log_diff_exp(head, rest);
}

}  // namespace

EntireProductFunction truncate(double c, int p0, const ZeroFamily& family,
                               double max_log_radius, double tol) {
    if (c == 0.0) throw std::invalid_argument("truncate: c must be nonzero");
    if (p0 < 0) throw std::invalid_argument("truncate: p0 must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("truncate: tol must be positive");
    if (!std::isfinite(max_log_radius))
        throw std::invalid_argument("truncate: max_log_radius must be finite");

    EntireProductFunction f;
    f.c_ = c;
    f.p0_ = p0;
    f.family_ = family;
    f.max_log_radius_ = max_log_radius;
    f.tol_ = tol;

    if (family.kind == FamilyKind::explicit_list) {
        double prev = 0.0;
        for (const auto& z : family.zeros) {
            if (z.p < 0) throw std::invalid_argument("truncate: negative multiplicity");
            if (z.p == 0) continue;  // zero-multiplicity entries are dropped
            if (!(z.a > 0.0)) throw std::invalid_argument("truncate: zeros must be positive");
            if (!(z.a > prev))
                throw std::invalid_argument("truncate: zeros must be strictly ascending");
            prev = z.a;
            f.log_zeros_.push_back(std::log(z.a));
            f.mults_.push_back(z.p);
        }
        f.n_formal_ = static_cast<double>(f.log_zeros_.size());
        f.log_tail_coeff_ = kNegInf;
    } else {
        // Minimal N with e^{max_log_radius} * sum_{n>N} 1/a_n <= tol.
        auto tail_log_bound = [&](double n) {
            return max_log_radius + log_reciprocal_tail(family, n);
        };
        const double log_tol = std::log(tol);
        if (tail_log_bound(0.0) <= log_tol) {
            f.n_formal_ = 0.0;
        } else {
            double lo = 0.0, hi = 1.0;  // lo fails; search for a passing hi
            while (tail_log_bound(hi) > log_tol) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e300)
                    throw tail_not_summable_error("truncate: tail never meets tol");
            }
            // exact minimal integer N (as a double; past 2^53 the bisection
            // converges to the representable floor)
            while (hi - lo > 1.0) {
                double mid = std::floor(lo + (hi - lo) / 2.0);
                if (mid <= lo || mid >= hi) break;
                if (tail_log_bound(mid) > log_tol)
                    lo = mid;
                else
                    hi = mid;
            }
            f.n_formal_ = hi;
        }
        f.log_tail_coeff_ = log_reciprocal_tail(family, f.n_formal_);

        double n_explicit =
            std::min(f.n_formal_,
                     family.count_at_or_below(max_log_radius + kLogExplicitMargin));
        if (n_explicit > static_cast<double>(kExplicitBudget))
            throw out_of_validity_error(
                "truncate: explicit zero budget exceeded; reduce max_log_radius");
        auto ne = static_cast<std::size_t>(n_explicit);
        f.log_zeros_.reserve(ne);
        for (std::size_t n = 1; n <= ne; ++n)
            f.log_zeros_.push_back(family.log_zero(static_cast<double>(n)));
        f.mults_.assign(ne, 1);

        // Series ladder: one split per log-unit of radius, so evaluation at
        // |z| well inside the validity disk only walks zeros up to ~4e|z|.
        for (int d = 0; d <= kSeriesLadderDepth; ++d) {
            EntireProductFunction::SeriesLevel level;
            level.valid_log_radius = max_log_radius - d;
            double below = std::min(
                f.n_formal_,
                family.count_at_or_below(level.valid_log_radius + kLogExplicitMargin));
            level.n_below = static_cast<std::size_t>(std::max(0.0, below));
            if (static_cast<double>(level.n_below) < f.n_formal_) {
                level.log_power_sums.reserve(kSeriesOrder);
                for (int j = 1; j <= kSeriesOrder; ++j)
                    level.log_power_sums.push_back(log_power_sum(
                        family, j, static_cast<double>(level.n_below) + 1.0,
                        f.n_formal_));
            }
            f.levels_.push_back(std::move(level));
            if (f.levels_.back().n_below == 0) break;  // nothing left to split
        }
    }

    if (f.p0_ == 0 && f.log_zeros_.empty() && f.n_formal_ == 0.0)
        throw std::invalid_argument("truncate: function would be constant (p0 = 0, no zeros)");
    return f;
}

double EntireProductFunction::tail_bound(double log_r) const {
    if (std::isinf(log_tail_coeff_)) return 0.0;
    double lb = log_r + log_tail_coeff_;
    if (lb > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(lb);
}

double EntireProductFunction::total_multiplicity_below(double log_r) const {
    double total = p0_;
    auto it = std::lower_bound(log_zeros_.begin(), log_zeros_.end(), log_r);
    for (auto j = log_zeros_.begin(); j != it; ++j)
        total += mults_[static_cast<std::size_t>(j - log_zeros_.begin())];
    if (has_implicit_range()) {
        double count = std::min(n_formal_, family_.count_at_or_below(log_r));
        double extra = count - static_cast<double>(log_zeros_.size());
        if (extra > 0) total += extra;
    }
    return total;
}

const EntireProductFunction::SeriesLevel& EntireProductFunction::pick_level(
    double log_r) const {
    int d = static_cast<int>(std::floor(max_log_radius_ - log_r));
    d = std::clamp(d, 0, static_cast<int>(levels_.size()) - 1);
    return levels_[static_cast<std::size_t>(d)];
}

LogComplex EntireProductFunction::eval_log(const LogComplex& z) const {
    if (is_zero(z)) {
        if (p0_ >= 1) throw zero_factor_error("eval_log: z = 0 with p0 >= 1");
        return {std::log(std::abs(c_)), c_ < 0 ? M_PI : 0.0};
    }
    const double lam = z.log_mod;
    const double theta = wrap_angle(z.arg);

    if (has_implicit_range() && lam > max_log_radius_ + kValiditySlack)
        throw out_of_validity_error("eval_log: |z| beyond truncation validity radius");

    std::size_t n_explicit = log_zeros_.size();
    const SeriesLevel* level = nullptr;
    if (!levels_.empty()) {
        level = &pick_level(lam);
        n_explicit = level->n_below;
    }

    double acc_lm = std::log(std::abs(c_)) + p0_ * lam;
    double acc_ar = (c_ < 0 ? M_PI : 0.0) + p0_ * theta;

    const double ct = std::cos(theta), st = std::sin(theta);
    for (std::size_t i = 0; i < n_explicit; ++i) {
        const double d = lam - log_zeros_[i];
        const double p = mults_[i];
        if (d <= logpolar::kSmallRegimeLogMod) {
            const double m = std::exp(d);
            const double u = m * ct, v = m * st;
            acc_lm += p * 0.5 * std::log1p(2.0 * u + (u * u + v * v));
            acc_ar += p * std::atan2(v, 1.0 + u);
        } else {
            LogComplex u = one_plus({d, theta});
            if (is_zero(u))
                throw zero_factor_error("eval_log: z at a zero of f");
            acc_lm += p * u.log_mod;
            acc_ar += p * u.arg;
        }
    }

    if (level != nullptr && !level->log_power_sums.empty()) {
        // sum over (n_below, N] of Log(1 + z/a_n), expanded in z
        double re = 0.0, im = 0.0;
        double sign = 1.0;
        for (int j = 1; j <= kSeriesOrder; ++j) {
            double t =
                std::exp(j * lam + level->log_power_sums[static_cast<std::size_t>(j - 1)]) /
                static_cast<double>(j);
            re += sign * t * std::cos(j * theta);
            im += sign * t * std::sin(j * theta);
            if (t < 1e-18 * (1.0 + std::abs(re))) break;
            sign = -sign;
        }
        acc_lm += re;
        acc_ar += im;
    }

    return {acc_lm, acc_ar};
}

bool conj_symmetry_check(const EntireProductFunction& f, const LogComplex& z, double tol) {
    LogComplex a = f.eval_log(z);
    LogComplex b = f.eval_log(logpolar::conj(z));
    if (std::abs(a.log_mod - b.log_mod) > tol) return false;
    return std::abs(wrap_angle(a.arg + b.arg)) <= tol;
}

}  // namespace spiderweb
