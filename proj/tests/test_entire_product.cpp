#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spiderweb/entire_product.hpp"
#include "spiderweb/errors.hpp"
#include "spiderweb/zeta_sums.hpp"

using namespace spiderweb;

namespace {

EntireProductFunction cosh_trunc(double max_log_radius, double tol = 1e-10) {
    return truncate(1.0, 0, ZeroFamily::cosh_sqrt(), max_log_radius, tol);
}

}  // namespace

TEST_CASE("truncation counts for the documented examples") {
    // explicit list keeps its zeros and has a zero tail
    auto f = truncate(1.0, 0,
                      ZeroFamily::explicit_list({{1.0, 1}, {2.0, 1}, {5.0, 2}}), 50.0,
                      1e-12);
    CHECK(f.explicit_zero_count() == 3);
    CHECK(f.formal_zero_count() == 3.0);
    CHECK(f.tail_bound(100.0) == 0.0);

    // cosh preset at radius 100, tol 1e-10: N from r * sum_{n>N} 4/((2n-1)^2 pi^2),
    // i.e. about r/(pi^2 tol) ~ 1.01e11
    auto g = cosh_trunc(std::log(100.0));
    CHECK(g.formal_zero_count() > 9e10);
    CHECK(g.formal_zero_count() < 1.1e11);
    CHECK(g.tail_bound(std::log(100.0)) <= 1e-10);
    // minimality: one fewer kept zero must fail the bound
    auto cosh_tail = [&](double N) {
        return std::exp(std::log(100.0) - 2.0 * std::log(M_PI) +
                        zeta_sums::log_hurwitz_tail(2.0, N + 0.5));
    };
    CHECK(cosh_tail(g.formal_zero_count()) <= 1e-10);
    CHECK(cosh_tail(g.formal_zero_count() - 1.0) > 1e-10);

    // power law q = 3 at radius 1000, tol 1e-8: N ~ ceil(sqrt(1000/(2e-8)))
    auto h = truncate(1.0, 0, ZeroFamily::power_law(1.0, 3.0), std::log(1000.0), 1e-8);
    CHECK(h.formal_zero_count() > 2.2e5);
    CHECK(h.formal_zero_count() < 2.3e5);
}

TEST_CASE("tail not summable for q <= 1") {
    CHECK_THROWS_AS(truncate(1.0, 0, ZeroFamily::power_law(1.0, 1.0), 3.0, 1e-8),
                    tail_not_summable_error);
}

TEST_CASE("eval_log single-zero sanity") {
    auto f = truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1}}), 10.0, 1e-12);
    // f(1) = 2
    LogComplex v = f.eval_log({0.0, 0.0});
    CHECK(v.log_mod == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(v.arg == doctest::Approx(0.0));
    // f(-3) = -2
    LogComplex w = f.eval_log({std::log(3.0), M_PI});
    CHECK(w.log_mod == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(logpolar::wrap_angle(w.arg - M_PI)) <= 1e-12);
    // z = -1 is the zero
    CHECK_THROWS_AS(f.eval_log({0.0, M_PI}), zero_factor_error);
}

TEST_CASE("cosh_sqrt truncation matches the closed form") {
    auto f = cosh_trunc(std::log(4.0) + 0.1);
    // z = 4: log cosh 2
    LogComplex v = f.eval_log({std::log(4.0), 0.0});
    CHECK(v.log_mod == doctest::Approx(std::log(std::cosh(2.0))).epsilon(2e-10));
    CHECK(std::cosh(2.0) == doctest::Approx(3.762195691).epsilon(1e-9));
    // z = -4 approached as arg -> pi: log|cos 2|
    LogComplex w = f.eval_log({std::log(4.0), M_PI});
    CHECK(w.log_mod ==
          doctest::Approx(std::log(std::abs(std::cos(2.0)))).epsilon(1e-9));
    CHECK(std::abs(std::cos(2.0)) == doctest::Approx(0.416146837).epsilon(1e-9));
}

TEST_CASE("cosh_sqrt truncation off-axis against the stable closed form") {
    auto f = cosh_trunc(std::log(500.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lr(-2.0, std::log(500.0));
    std::uniform_real_distribution<double> th(-M_PI + 0.05, M_PI - 0.05);
    for (int i = 0; i < 60; ++i) {
        double log_r = lr(rng), theta = th(rng);
        double ref = oracles::log_abs_cosh_sqrt(log_r, theta);
        LogComplex v = f.eval_log({log_r, theta});
        CHECK(v.log_mod == doctest::Approx(ref).epsilon(5e-9));
    }
}

TEST_CASE("sinh_sqrt_over_sqrt truncation against the closed form") {
    auto f = truncate(1.0, 0, ZeroFamily::sinh_sqrt_over_sqrt(), std::log(300.0), 1e-10);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lr(-1.0, std::log(300.0));
    std::uniform_real_distribution<double> th(-M_PI + 0.05, M_PI - 0.05);
    for (int i = 0; i < 40; ++i) {
        double log_r = lr(rng), theta = th(rng);
        double ref = oracles::log_abs_sinh_sqrt_over_sqrt(log_r, theta);
        LogComplex v = f.eval_log({log_r, theta});
        CHECK(v.log_mod == doctest::Approx(ref).epsilon(5e-9));
    }
}

TEST_CASE("power-law q=2 truncation against the sinh closed form") {
    double alpha = 7.5;
    auto f = truncate(1.0, 0, ZeroFamily::power_law(alpha, 2.0), std::log(200.0), 1e-10);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> lr(0.0, std::log(200.0));
    std::uniform_real_distribution<double> th(-M_PI + 0.05, M_PI - 0.05);
    for (int i = 0; i < 40; ++i) {
        double log_r = lr(rng), theta = th(rng);
        double ref = oracles::log_abs_power_q2(alpha, log_r, theta);
        LogComplex v = f.eval_log({log_r, theta});
        CHECK(v.log_mod == doctest::Approx(ref).epsilon(5e-9));
    }
}

TEST_CASE("eval at z = 0") {
    auto f = truncate(-2.0, 0, ZeroFamily::explicit_list({{1.0, 1}}), 5.0, 1e-12);
    LogComplex v = f.eval_log(logpolar::zero());
    CHECK(v.log_mod == doctest::Approx(std::log(2.0)));
    CHECK(v.arg == doctest::Approx(M_PI));

    auto g = truncate(1.0, 2, ZeroFamily::explicit_list({{1.0, 1}}), 5.0, 1e-12);
    CHECK_THROWS_AS(g.eval_log(logpolar::zero()), zero_factor_error);
}

TEST_CASE("validity guard for implicit-range truncations") {
    auto f = cosh_trunc(std::log(100.0));
    REQUIRE(f.has_implicit_range());
    CHECK_THROWS_AS(f.eval_log({std::log(100.0) + 2.0, 0.0}), out_of_validity_error);
}

TEST_CASE("conjugation symmetry including negative c") {
    auto f = cosh_trunc(std::log(50.0));
    CHECK(conj_symmetry_check(f, {0.0, M_PI / 2.0}));            // z = i
    CHECK(conj_symmetry_check(f, logpolar::from_cartesian(2.0, 3.0)));

    auto g = truncate(-2.0, 1, ZeroFamily::explicit_list({{1.0, 1}, {3.0, 2}}), 8.0,
                      1e-12);
    CHECK(conj_symmetry_check(g, logpolar::from_cartesian(0.5, 0.5)));
}

TEST_CASE("zero-multiplicity entries are dropped, misordered zeros rejected") {
    auto f = truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1}, {2.0, 0}, {3.0, 1}}),
                      5.0, 1e-12);
    CHECK(f.explicit_zero_count() == 2);
    CHECK_THROWS_AS(
        truncate(1.0, 0, ZeroFamily::explicit_list({{2.0, 1}, {1.0, 1}}), 5.0, 1e-12),
        std::invalid_argument);
    CHECK_THROWS_AS(truncate(0.0, 1, ZeroFamily::cosh_sqrt(), 5.0, 1e-12),
                    std::invalid_argument);
}

TEST_CASE("strict angular monotonicity of |f| on [0, pi]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lr(-1.0, std::log(80.0));
    auto f = cosh_trunc(std::log(80.0));
    auto g = truncate(2.0, 1, ZeroFamily::power_law(0.5, 3.0), std::log(80.0), 1e-10);
    for (const auto& fn : {f, g}) {
        for (int rep = 0; rep < 10; ++rep) {
            double log_r = lr(rng);
            double prev = fn.eval_log({log_r, 0.0}).log_mod;
            for (int k = 1; k <= 24; ++k) {
                double theta = M_PI * k / 24.0;
                double cur = fn.eval_log({log_r, theta}).log_mod;
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("multiplicity count below a radius") {
    auto f = truncate(1.0, 2, ZeroFamily::explicit_list({{1.0, 1}, {4.0, 3}, {9.0, 2}}),
                      5.0, 1e-12);
    CHECK(f.total_multiplicity_below(std::log(0.5)) == 2.0);   // p0 only
    CHECK(f.total_multiplicity_below(std::log(2.0)) == 3.0);
    CHECK(f.total_multiplicity_below(std::log(100.0)) == 8.0);
}
