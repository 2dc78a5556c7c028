#include "spiderweb/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spiderweb/errors.hpp"

namespace spiderweb {

double log_max_modulus(const EntireProductFunction& f, double log_r) {
    return f.eval_log({log_r, 0.0}).log_mod;
}

double log_min_modulus(const EntireProductFunction& f, double log_r) {
    try {
        return f.eval_log({log_r, M_PI}).log_mod;
    } catch (const zero_factor_error&) {
        throw at_zero_error("log_min_modulus: r coincides with a zero of f");
    }
}

double estimate_order(const EntireProductFunction& f, double log_r_lo, double log_r_hi,
                      int n_samples) {
    if (!(log_r_hi > log_r_lo)) throw range_too_small_error("estimate_order: empty range");
    std::vector<double> xs, ys;
    for (int i = 0; i < n_samples; ++i) {
        double lr = log_r_lo + (log_r_hi - log_r_lo) * i / std::max(1, n_samples - 1);
        double lm = log_max_modulus(f, lr);
        if (lm > 0.0) {
            xs.push_back(lr);
            ys.push_back(std::log(lm));
        }
    }
    if (xs.size() < 8)
        throw range_too_small_error("estimate_order: fewer than 8 usable samples");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool hadamard_check(const EntireProductFunction& f, double log_r, double cexp) {
    if (!(cexp > 1.0)) throw precondition_failed_error("hadamard_check: need c > 1");
    double lhs = log_max_modulus(f, cexp * log_r);
    double rhs = cexp * log_max_modulus(f, log_r);
    double budget = f.tail_bound(cexp * log_r) + cexp * f.tail_bound(log_r) + 1e-9;
    return lhs >= rhs - budget;
}

namespace {

// Ternary search for the maximum of log m over [lo, hi] (zero-free interior).
double ternary_max_log_min(const EntireProductFunction& f, double lo, double hi,
                           double* arg_best) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
        double m1 = a + (b - a) / 3.0;
        double m2 = b - (b - a) / 3.0;
        double v1, v2;
        try {
            v1 = log_min_modulus(f, m1);
        } catch (const at_zero_error&) {
            v1 = -std::numeric_limits<double>::infinity();
        }
        try {
            v2 = log_min_modulus(f, m2);
        } catch (const at_zero_error&) {
            v2 = -std::numeric_limits<double>::infinity();
        }
        if (v1 < v2)
            a = m1;
        else
            b = m2;
    }
    double mid = 0.5 * (a + b);
    *arg_best = mid;
    try {
        return log_min_modulus(f, mid);
    } catch (const at_zero_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

std::optional<double> find_min_condition_rho(const EntireProductFunction& f, double log_r,
                                             double m_exp) {
    if (!(m_exp > 1.0))
        throw precondition_failed_error("find_min_condition_rho: need m_exp > 1");
    const double lo = log_r, hi = m_exp * log_r;
    if (!(hi > lo)) return std::nullopt;
    const double target = log_max_modulus(f, log_r);

    // Walls: interval ends plus every kept zero inside the interval.
    std::vector<double> walls{lo};
    for (std::size_t i = 0; i < f.explicit_zero_count(); ++i) {
        double lz = f.explicit_log_zero(i);
        if (lz > lo && lz < hi) walls.push_back(lz);
        if (lz >= hi) break;
    }
    walls.push_back(hi);

    const double pad = 1e-9;  // keep strictly inside (r, r^m) and off zeros

    // First pass: rank the zero-free gaps by log m at their log-midpoints,
    // then ternary-refine only the leading candidates.
    struct Gap {
        double a, b, mid_value;
    };
    std::vector<Gap> gaps;
    for (std::size_t i = 0; i + 1 < walls.size(); ++i) {
        double a = walls[i] + pad, b = walls[i + 1] - pad;
        if (b <= a) continue;
        double mid = 0.5 * (a + b);
        double v;
        try {
            v = log_min_modulus(f, mid);
        } catch (const at_zero_error&) {
            v = -std::numeric_limits<double>::infinity();
        }
        gaps.push_back({a, b, v});
    }
    std::sort(gaps.begin(), gaps.end(),
              [](const Gap& x, const Gap& y) { return x.mid_value > y.mid_value; });

    double best = -std::numeric_limits<double>::infinity();
    double best_arg = 0.0;
    std::size_t refine = std::min<std::size_t>(gaps.size(), 16);
    for (std::size_t i = 0; i < refine; ++i) {
        double arg;
        double v = ternary_max_log_min(f, gaps[i].a, gaps[i].b, &arg);
        if (v > best) {
            best = v;
            best_arg = arg;
        }
    }
    if (best >= target) return best_arg;
    return std::nullopt;
}

namespace {

std::vector<double> iterate_impl(const EntireProductFunction& f, double log_R, double eps,
                                 int n) {
    if (!(eps > 0.0) || eps > 1.0)
        throw precondition_failed_error("iterate: need 0 < eps <= 1");
    std::vector<double> out{log_R};
    if (log_max_modulus(f, log_R) <= log_R)
        throw precondition_failed_error("iterate: M(R) > R fails at the given R");
    double lam = log_R;
    for (int k = 0; k < n; ++k) {
        if (f.has_implicit_range() && lam > f.max_log_radius())
            throw out_of_validity_error("iterate: log-radius left the truncation validity");
        lam = eps * log_max_modulus(f, lam);
        out.push_back(lam);
    }
    return out;
}

}  // namespace

std::vector<double> iterate_log_max(const EntireProductFunction& f, double log_R, int n) {
    return iterate_impl(f, log_R, 1.0, n);
}

std::vector<double> iterate_log_mu(const EntireProductFunction& f, double log_R, double eps,
                                   int n) {
    return iterate_impl(f, log_R, eps, n);
}

GrowthProfile growth_profile(const EntireProductFunction& f, double log_r_lo,
                             double log_r_hi, int n_samples) {
    if (!(log_r_hi > log_r_lo) || n_samples < 2)
        throw range_too_small_error("growth_profile: empty range");
    GrowthProfile gp;
    for (int i = 0; i < n_samples; ++i) {
        double lr = log_r_lo + (log_r_hi - log_r_lo) * i / (n_samples - 1);
        double lM = log_max_modulus(f, lr);
        double lm;
        try {
            lm = log_min_modulus(f, lr);
        } catch (const at_zero_error&) {
            lm = -std::numeric_limits<double>::infinity();
        }
        gp.samples.push_back({lr, lM, lm});
    }
    try {
        gp.order_estimate = estimate_order(f, log_r_lo, log_r_hi, std::max(n_samples, 16));
    } catch (const range_too_small_error&) {
        gp.order_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    gp.hadamard_ok = true;
    for (const auto& s : gp.samples) {
        double cexp = 1.5;
        if (cexp * s[0] <= log_r_hi && s[0] > 0.0 && !hadamard_check(f, s[0], cexp)) {
            gp.hadamard_ok = false;
            break;
        }
    }
    return gp;
}

std::string growth_profile_csv(const GrowthProfile& profile) {
    std::ostringstream os;
    os.precision(15);
    os << "log_r,log_M,log_m\n";
    for (const auto& s : profile.samples)
        os << s[0] << "," << s[1] << "," << s[2] << "\n";
    os << "# order_estimate," << profile.order_estimate << "\n";
    return os.str();
}

double empirical_hadamard_threshold(const EntireProductFunction& f, double log_r_lo,
                                    double log_r_hi, int n_samples,
                                    const std::vector<double>& cexps) {
    std::vector<double> grid;
    for (int i = 0; i < n_samples; ++i)
        grid.push_back(log_r_lo + (log_r_hi - log_r_lo) * i / std::max(1, n_samples - 1));
    double eval_limit = f.has_implicit_range()
                            ? f.max_log_radius()
                            : std::numeric_limits<double>::infinity();

    double threshold = std::numeric_limits<double>::infinity();
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        bool ok = *it > 0.0;
        for (double c : cexps) {
            if (!ok) break;
            if (c * *it > eval_limit) continue;  // outside validity: not tested
            if (!hadamard_check(f, *it, c)) ok = false;
        }
        if (!ok) break;
        threshold = *it;
    }
    return threshold;
}

double empirical_power_growth_threshold(const EntireProductFunction& f, double kappa,
                                        double log_r_lo, double log_r_hi, int n_samples) {
    double threshold = std::numeric_limits<double>::infinity();
    for (int i = n_samples - 1; i >= 0; --i) {
        double lr = log_r_lo + (log_r_hi - log_r_lo) * i / std::max(1, n_samples - 1);
        if (log_max_modulus(f, lr) > kappa * lr)
            threshold = lr;
        else
            break;
    }
    return threshold;
}

}  // namespace spiderweb
