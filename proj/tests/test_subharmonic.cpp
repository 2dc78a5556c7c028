#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spiderweb/errors.hpp"
#include "spiderweb/modulus.hpp"
#include "spiderweb/subharmonic.hpp"
#include "spiderweb/theorems.hpp"

using namespace spiderweb;

namespace {

EntireProductFunction cosh_trunc(double max_log_radius, double tol = 1e-10) {
    return truncate(1.0, 0, ZeroFamily::cosh_sqrt(), max_log_radius, tol);
}

}  // namespace

TEST_CASE("B_lambda basics") {
    auto f = cosh_trunc(std::log(10.0));
    double log_r = std::log(4.0);
    double log_M = log_max_modulus(f, log_r);
    CHECK(B_lambda(f, log_r, log_M + 0.5) == 0.0);
    CHECK(B_lambda(f, log_r, 0.0) ==
          doctest::Approx(std::log(std::cosh(2.0))).epsilon(1e-9));
    CHECK(B_lambda(f, log_r, log_M - 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("T_lambda against brute-force quadrature") {
    auto f = cosh_trunc(std::log(60.0));
    double log_r = std::log(30.0);

    // lambda >= M(r): zero
    CHECK(T_lambda(f, log_r, log_max_modulus(f, log_r) + 1.0) == 0.0);

    // lambda <= m(r): full-circle mean, cross-checked by 1e5-point quadrature
    double log_m = log_min_modulus(f, log_r);
    double lam = log_m - 1.0;
    double got = T_lambda(f, log_r, lam);
    double ref = oracles::brute_T_mean(f, log_r, lam, 100'000);
    CHECK(got == doctest::Approx(ref).epsilon(1e-7));

    // intermediate level: same cross-check
    double lam2 = 0.5 * (log_m + log_max_modulus(f, log_r));
    CHECK(T_lambda(f, log_r, lam2) ==
          doctest::Approx(oracles::brute_T_mean(f, log_r, lam2, 100'000)).epsilon(1e-6));
}

TEST_CASE("T <= B always") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> lr(0.5, std::log(100.0));
    std::uniform_real_distribution<double> frac(0.0, 1.2);
    auto f = cosh_trunc(std::log(120.0));
    auto g = truncate(1.0, 0, ZeroFamily::power_law(1.0, 3.0), std::log(120.0), 1e-10);
    for (const auto& fn : {f, g}) {
        for (int i = 0; i < 10; ++i) {
            double log_r = lr(rng);
            double lam = frac(rng) * log_max_modulus(fn, log_r);
            CHECK(T_lambda(fn, log_r, lam) <= B_lambda(fn, log_r, lam) + 1e-9);
        }
    }
}

TEST_CASE("T is convex and increasing in log r") {
    auto f = cosh_trunc(std::log(200.0));
    double lam = 1.0;
    const int n = 30;
    double lo = std::log(5.0), hi = std::log(150.0);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i)
        vals.push_back(T_lambda(f, lo + (hi - lo) * i / (n - 1), lam));
    for (int i = 1; i < n; ++i) CHECK(vals[i] >= vals[i - 1] - 1e-9);
    for (int i = 1; i + 1 < n; ++i)
        CHECK(vals[i - 1] - 2.0 * vals[i] + vals[i + 1] >= -1e-8);
}

TEST_CASE("r_T_prime is nonnegative and locally zero above M") {
    auto f = cosh_trunc(std::log(60.0));
    double log_r = std::log(20.0);
    CHECK(r_T_prime(f, log_r, log_max_modulus(f, log_r + 1.0) + 5.0) == 0.0);
    CHECK(r_T_prime(f, log_r, 1.0) >= -1e-8);
}

TEST_CASE("winding equals 2 pi r T': full-circle case forced by argument principle") {
    // single zero at 1, r = 2, lambda below the circle minimum
    auto f = truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1}}), 10.0, 1e-12);
    double log_r = std::log(2.0);
    double lam = log_min_modulus(f, log_r) + std::log(0.9);
    auto [lhs, rhs] = winding_mean_identity(f, log_r, lam);
    CHECK(lhs == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
    CHECK(rhs == doctest::Approx(2.0 * M_PI).epsilon(0.01));
}

TEST_CASE("winding equals 2 pi r T': arc cases") {
    auto f = cosh_trunc(std::log(40.0));
    double log_r = std::log(30.0);
    auto [lhs, rhs] = winding_mean_identity(f, log_r, 0.0);
    CHECK(std::abs(lhs - rhs) <= 0.02 * std::max(std::abs(lhs), 1.0));

    // lambda near M(r): tiny arc, harder quadrature, 5% tolerance
    double log_M = log_max_modulus(f, log_r);
    auto [lhs2, rhs2] = winding_mean_identity(f, log_r, log_M - 0.05);
    CHECK(std::abs(lhs2 - rhs2) <= 0.05 * std::max(std::abs(lhs2), 1.0));
}

TEST_CASE("winding-mean identity across a 20-case matrix") {
    std::vector<EntireProductFunction> fns;
    fns.push_back(cosh_trunc(std::log(250.0)));
    fns.push_back(truncate(1.0, 0, ZeroFamily::sinh_sqrt_over_sqrt(), std::log(250.0), 1e-10));
    fns.push_back(truncate(1.0, 0, ZeroFamily::power_law(2.0, 2.5), std::log(250.0), 1e-10));
    fns.push_back(truncate(1.0, 1, ZeroFamily::power_law(1.0, 3.0), std::log(250.0), 1e-10));
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> lr(std::log(5.0), std::log(200.0));
    std::uniform_real_distribution<double> frac(0.05, 0.9);
    int cases = 0;
    for (const auto& fn : fns) {
        for (int i = 0; i < 5; ++i) {
            double log_r = lr(rng);
            double lam = frac(rng) * log_max_modulus(fn, log_r);
            auto [lhs, rhs] = winding_mean_identity(fn, log_r, lam);
            CHECK(std::abs(lhs - rhs) <= 0.02 * std::max(std::abs(lhs), 1.0));
            ++cases;
        }
    }
    CHECK(cases == 20);
}

TEST_CASE("poisson bound") {
    auto f = cosh_trunc(std::log(100.0));
    // r = r0/2: factor 3
    CHECK(poisson_bound_check(f, std::log(20.0), std::log(40.0), 1.0));
    // degenerate: everything zero above M(r0)
    CHECK(poisson_bound_check(f, std::log(20.0), std::log(40.0),
                              log_max_modulus(f, std::log(40.0)) + 2.0));
    // property sweep
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> lr0(1.0, std::log(90.0));
    std::uniform_real_distribution<double> gap(0.05, 1.0);
    std::uniform_real_distribution<double> frac(0.0, 1.1);
    auto g = truncate(1.0, 0, ZeroFamily::power_law(1.0, 3.0), std::log(100.0), 1e-10);
    for (int i = 0; i < 20; ++i) {
        const auto& fn = (i % 2 == 0) ? f : g;
        double l0 = lr0(rng);
        double l = l0 - gap(rng);
        double lam = frac(rng) * log_max_modulus(fn, l0);
        CHECK(poisson_bound_check(fn, l, l0, lam));
    }
}

TEST_CASE("milloux-schmidt inequality") {
    auto f = cosh_trunc(std::log(1e5));
    // u_M with M = M(t), t <= r: circle minima vanish since m <= 1 <= M-level
    double log_t = std::log(50.0);
    double level = log_max_modulus(f, log_t);

    // r = r0/2: factor (4/pi) arctan sqrt(1/2) ~ 0.78
    double log_r0 = std::log(800.0);
    double log_r = log_r0 - std::log(2.0);
    CHECK(milloux_schmidt_check(f, log_r, log_r0, level));
    double factor = (4.0 / M_PI) * std::atan(std::sqrt(0.5));
    CHECK(factor == doctest::Approx(0.78).epsilon(0.01));

    // r -> r0: factor -> 1 and the inequality approaches B(r) <= B(r0)
    CHECK(milloux_schmidt_check(f, log_r0 - 1e-4, log_r0, level));

    // hypothesis violation: level far below the circle minima near r0
    auto g = truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1}}), 20.0, 1e-12);
    CHECK_THROWS_AS(milloux_schmidt_check(g, 15.0, 16.0, 0.5), hypothesis_unmet_error);
}

TEST_CASE("milloux-schmidt at the documented exponent pattern") {
    // r = t^{1+a/2}, r0 = t^{1+a}/2: the bound becomes
    // B_M(t^{1+a/2}) <= (4 sqrt2 / pi) t^{-a/4} B_M(t^{1+a}/2) given t^{a/4} >= 2 sqrt2
    auto f = cosh_trunc(std::log(1e10) + 1.0);
    double log_t = std::log(100.0);
    double a = 4.0;
    double level = log_max_modulus(f, log_t);
    double log_s = (1.0 + 0.5 * a) * log_t;
    double log_r0 = (1.0 + a) * log_t - std::log(2.0);
    REQUIRE(milloux_schmidt_check(f, log_s, log_r0, level));
    double B_s = std::max(0.0, log_max_modulus(f, log_s) - level);
    double B_r0 = std::max(0.0, log_max_modulus(f, log_r0) - level);
    double coeff = (4.0 * std::sqrt(2.0) / M_PI) * std::exp(-0.25 * a * log_t);
    CHECK(B_s <= coeff * B_r0 + 1e-8);
}

TEST_CASE("growth inequality instance: B_M(t^{1+a}/2) >= pi a t^{a/4} log M / (8 sqrt2)") {
    auto f = cosh_trunc(std::log(1e10) + 1.0);
    double log_t = std::log(100.0);
    double a = 4.0;
    REQUIRE(winding_bound_admissible(log_t, a, 1.0));
    double log_M = log_max_modulus(f, log_t);
    double B = std::max(0.0, log_max_modulus(f, (1.0 + a) * log_t - std::log(2.0)) - log_M);
    double rhs = M_PI * a * std::exp(0.25 * a * log_t) * log_M / (8.0 * std::sqrt(2.0));
    CHECK(B >= rhs);
}

TEST_CASE("wind_growth_rhs signs and degenerate limits") {
    auto f = cosh_trunc(std::log(1e10) + 1.0);
    double log_t = std::log(100.0);

    // healthy a: positive lower bound for the winding difference
    CHECK(wind_growth_rhs(f, log_t, 4.0) > 0.0);

    // a too small: B_M(s) dominates and the bound is vacuous (negative)
    CHECK(wind_growth_rhs(f, log_t, 0.01) < 0.0);
}

TEST_CASE("mean profile CSV") {
    auto f = cosh_trunc(std::log(50.0));
    MeanProfile mp = mean_profile(f, 1.0, std::log(5.0), std::log(40.0), 5);
    CHECK(mp.samples.size() == 5);
    for (const auto& s : mp.samples) {
        CHECK(s[2] <= s[1] + 1e-9);  // T <= B
        CHECK(s[3] >= -1e-8);        // rT' >= 0
    }
    CHECK(mean_profile_csv(mp).find("log_r,B,T,rTprime") == 0);
}
