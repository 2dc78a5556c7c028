#include "spiderweb/subharmonic.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "spiderweb/curves.hpp"
#include "spiderweb/errors.hpp"
#include "spiderweb/modulus.hpp"

namespace spiderweb {

namespace {

constexpr double kQuadTol = 1e-9;

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double fa,
                        double m, double fm, double b, double fb, double whole, double tol,
                        int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double left = simpson(a, fa, flm, m, fm);
    double right = simpson(m, fm, frm, b, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(g, a, fa, lm, flm, m, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(g, m, fm, rm, frm, b, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = g(a), fb = g(b), fm = g(m);
    double whole = simpson(a, fa, fm, b, fb);
    return adaptive_simpson(g, a, fa, m, fm, b, fb, whole, tol, 48);
}

}  // namespace

double B_lambda(const EntireProductFunction& f, double log_r, double log_lambda) {
    return std::max(0.0, log_max_modulus(f, log_r) - log_lambda);
}

double T_lambda(const EntireProductFunction& f, double log_r, double log_lambda) {
    LevelTheta lt = level_theta(f, log_r, log_lambda);
    if (lt.kind == LevelThetaKind::Empty) return 0.0;
    double upper = (lt.kind == LevelThetaKind::FullCircle) ? M_PI : lt.theta;
    auto integrand = [&](double theta) {
        double u = f.eval_log({log_r, theta}).log_mod - log_lambda;
        return u > 0.0 ? u : 0.0;
    };
    return integrate(integrand, 0.0, upper, kQuadTol) / M_PI;
}

double r_T_prime(const EntireProductFunction& f, double log_r, double log_lambda) {
    const double h = 1e-4;
    auto diff = [&](double step) {
        return (T_lambda(f, log_r + step, log_lambda) -
                T_lambda(f, log_r - step, log_lambda)) /
               (2.0 * step);
    };
    double d_h = diff(h);
    double d_h2 = diff(h / 2.0);
    return (4.0 * d_h2 - d_h) / 3.0;
}

std::pair<double, double> winding_mean_identity(const EntireProductFunction& f,
                                                double log_r, double log_lambda) {
    Curve arc = level_arc(f, log_r, log_lambda, 1024);
    double lhs = delta_arg(f, arc).delta_arg;
    double rhs = 2.0 * M_PI * r_T_prime(f, log_r, log_lambda);
    return {lhs, rhs};
}

bool poisson_bound_check(const EntireProductFunction& f, double log_r, double log_r0,
                         double log_lambda) {
    if (!(log_r < log_r0))
        throw precondition_failed_error("poisson_bound_check: need r < r0");
    const double slack = 1e-8;
    double B_r = B_lambda(f, log_r, log_lambda);
    double T_r = T_lambda(f, log_r, log_lambda);
    double T_r0 = T_lambda(f, log_r0, log_lambda);
    double ratio = std::exp(log_r - log_r0);  // r/r0 < 1
    double factor = (1.0 + ratio) / (1.0 - ratio);
    return T_r <= B_r + slack && B_r <= factor * T_r0 + slack;
}

bool milloux_schmidt_check(const EntireProductFunction& f, double log_r, double log_r0,
                           double log_M_level) {
    if (!(log_r < log_r0))
        throw precondition_failed_error("milloux_schmidt_check: need r < r0");

    // u_M has vanishing circle minima iff m(rho) <= M-level for rho < r0.
    const int n_spot = 32;
    for (int i = 0; i < n_spot; ++i) {
        double lr = log_r0 - 10.0 + 10.0 * (i + 0.5) / n_spot;
        double lm;
        try {
            lm = log_min_modulus(f, lr);
        } catch (const at_zero_error&) {
            continue;  // a zero on the circle certainly vanishes
        }
        if (lm > log_M_level + 1e-12) {
            std::ostringstream os;
            os << "milloux_schmidt_check: circle minimum exceeds the level at log_r = "
               << lr;
            throw hypothesis_unmet_error(os.str());
        }
    }

    double B_r = std::max(0.0, log_max_modulus(f, log_r) - log_M_level);
    double B_r0 = std::max(0.0, log_max_modulus(f, log_r0) - log_M_level);
    double factor = (4.0 / M_PI) * std::atan(std::exp(0.5 * (log_r - log_r0)));
    return B_r <= factor * B_r0 + 1e-8;
}

double wind_growth_rhs(const EntireProductFunction& f, double log_t, double a) {
    const double log_M = log_max_modulus(f, log_t);
    const double log_r2 = (1.0 + a) * log_t;
    const double log_s = (1.0 + 0.5 * a) * log_t;
    auto B_M = [&](double lr) {
        return std::max(0.0, log_max_modulus(f, lr) - log_M);
    };
    double numer = B_M(log_r2 - std::log(2.0)) / 3.0 - 2.0 * B_M(log_s) - 4.0 * log_M;
    double denom = 0.5 * (log_r2 - log_t);
    return numer / denom;
}

MeanProfile mean_profile(const EntireProductFunction& f, double log_lambda,
                         double log_r_lo, double log_r_hi, int n_samples) {
    MeanProfile mp;
    mp.log_lambda = log_lambda;
    for (int i = 0; i < n_samples; ++i) {
        double lr = log_r_lo + (log_r_hi - log_r_lo) * i / std::max(1, n_samples - 1);
        mp.samples.push_back({lr, B_lambda(f, lr, log_lambda), T_lambda(f, lr, log_lambda),
                              r_T_prime(f, lr, log_lambda)});
    }
    return mp;
}

std::string mean_profile_csv(const MeanProfile& profile) {
    std::ostringstream os;
    os.precision(15);
    os << "log_r,B,T,rTprime\n";
    for (const auto& s : profile.samples)
        os << s[0] << "," << s[1] << "," << s[2] << "," << s[3] << "\n";
    return os.str();
}

}  // namespace spiderweb
