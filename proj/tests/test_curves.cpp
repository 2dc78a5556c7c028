#include <doctest.h>

#include <cmath>
#include <random>

#include "spiderweb/curves.hpp"
#include "spiderweb/errors.hpp"
#include "spiderweb/modulus.hpp"

using namespace spiderweb;

namespace {

EntireProductFunction single_zero() {
    return truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1}}), 10.0, 1e-12);
}

}  // namespace

TEST_CASE("delta_arg of a near-constant curve is zero") {
    auto f = single_zero();
    Curve c;
    c.points.push_back({std::log(2.0), 0.3});
    c.points.push_back({std::log(2.0) + 1e-14, 0.3});
    WindingResult r = delta_arg(f, c);
    CHECK(std::abs(r.delta_arg) < 1e-12);
}

TEST_CASE("argument principle: single zero, full circle at r = 2") {
    auto f = single_zero();
    WindingResult r = delta_arg(f, make_circle(std::log(2.0), 64));
    CHECK(r.delta_arg == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    CHECK(r.max_step_arg < M_PI / 2.0);
}

TEST_CASE("argument principle: cosh circle r = 30 encloses two zeros") {
    // a_1 ~ 2.4674, a_2 ~ 22.207 inside; a_3 ~ 61.685 outside
    auto f = truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(30.0) + 0.2, 1e-10);
    CHECK(f.total_multiplicity_below(std::log(30.0)) == 2.0);
    WindingResult r = delta_arg(f, make_circle(std::log(30.0), 64));
    CHECK(r.delta_arg == doctest::Approx(4.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("argument principle across random functions and radii") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lr(0.5, std::log(300.0));
    std::vector<EntireProductFunction> fns;
    fns.push_back(truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(400.0), 1e-10));
    fns.push_back(truncate(-1.5, 2, ZeroFamily::sinh_sqrt_over_sqrt(), std::log(400.0), 1e-10));
    fns.push_back(truncate(1.0, 1, ZeroFamily::power_law(2.0, 3.0), std::log(400.0), 1e-10));
    fns.push_back(truncate(2.0, 0,
                           ZeroFamily::explicit_list({{0.5, 2}, {3.0, 1}, {40.0, 3}}),
                           std::log(400.0), 1e-10));
    for (const auto& f : fns) {
        for (int rep = 0; rep < 4; ++rep) {
            double log_r = lr(rng);
            // nudge the radius off any zero
            bool on_zero = false;
            for (std::size_t i = 0; i < f.explicit_zero_count(); ++i)
                if (std::abs(f.explicit_log_zero(i) - log_r) < 1e-3) on_zero = true;
            if (on_zero) log_r += 5e-3;
            double expected = 2.0 * M_PI * f.total_multiplicity_below(log_r);
            WindingResult r = delta_arg(f, make_circle(log_r, 128));
            CHECK(std::abs(r.delta_arg - expected) <= 1e-8);
        }
    }
}

TEST_CASE("delta_arg_between: additivity, reversal, empty traversal") {
    auto f = single_zero();
    Curve circle = make_circle(std::log(2.0), 64);
    std::size_t n = circle.points.size();
    CHECK(delta_arg_between(f, circle, 5, 5) == 0.0);
    double whole = delta_arg_between(f, circle, 0, n - 1);
    double part1 = delta_arg_between(f, circle, 0, n / 2);
    double part2 = delta_arg_between(f, circle, n / 2, n - 1);
    CHECK(part1 + part2 == doctest::Approx(whole).epsilon(1e-10));
    CHECK(delta_arg_between(f, circle, n / 2, 0) == doctest::Approx(-part1));
}

TEST_CASE("refinement independence: doubling samples moves delta_arg < 1e-8") {
    auto f = truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(50.0), 1e-10);
    double a = delta_arg(f, make_circle(std::log(50.0) - 0.7, 64)).delta_arg;
    double b = delta_arg(f, make_circle(std::log(50.0) - 0.7, 128)).delta_arg;
    CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("reflected curve has the same winding") {
    auto f = truncate(1.0, 0, ZeroFamily::sinh_sqrt_over_sqrt(), std::log(80.0), 1e-10);
    Curve c;
    int n = 40;
    for (int i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / (n - 1);
        c.points.push_back({std::log(3.0) + t * std::log(20.0), 0.2 + 2.5 * t});
    }
    Curve reflected;
    for (auto it = c.points.rbegin(); it != c.points.rend(); ++it)
        reflected.points.push_back({it->log_mod, -it->arg});
    double a = delta_arg(f, c).delta_arg;
    double b = delta_arg(f, reflected).delta_arg;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("refinement limit fires when winding outruns the depth cap") {
    // a multiplicity-1e6 zero concentrates ~pi*1e6 radians of image argument
    // inside a 1e-8-wide parameter window; depth 40 cannot resolve that
    auto f = truncate(1.0, 0, ZeroFamily::explicit_list({{1.0, 1'000'000}}), 10.0, 1e-12);
    Curve c;
    c.points.push_back({-0.1, M_PI - 1e-8});
    c.points.push_back({0.1, M_PI - 1e-8});
    CHECK_THROWS_AS(delta_arg(f, c), refinement_limit_error);
}

TEST_CASE("zero hit during refinement propagates zero_factor") {
    auto f = single_zero();
    Curve c;
    c.points.push_back({-0.5, M_PI});
    c.points.push_back({0.5, M_PI});  // midpoint interpolates to exactly -1
    CHECK_THROWS_AS(delta_arg(f, c), zero_factor_error);
}

TEST_CASE("level_theta cases") {
    auto f = truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(10.0), 1e-10);
    double log_r = std::log(4.0);
    double log_M = log_max_modulus(f, log_r);

    CHECK(level_theta(f, log_r, log_M + 1.0).kind == LevelThetaKind::Empty);
    // lambda exactly at the maximum: boundary of the monotone range
    LevelTheta at_max = level_theta(f, log_r, log_M);
    CHECK(at_max.kind == LevelThetaKind::Angle);
    CHECK(at_max.theta < 1e-6);

    // |cosh sqrt(4 e^{i theta})| = 1 has a root in (0, pi)
    LevelTheta lt = level_theta(f, log_r, 0.0);
    REQUIRE(lt.kind == LevelThetaKind::Angle);
    double lo = f.eval_log({log_r, lt.theta + 1e-6}).log_mod;
    double hi = f.eval_log({log_r, lt.theta - 1e-6}).log_mod;
    CHECK(lo < 0.0);
    CHECK(hi > 0.0);

    // lambda below the circle minimum: full circle (radius between zeros)
    double log_m = log_min_modulus(f, log_r);
    CHECK(level_theta(f, log_r, log_m - 0.5).kind == LevelThetaKind::FullCircle);
}

TEST_CASE("level_theta is monotone in lambda") {
    auto f = truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(40.0), 1e-10);
    double log_r = std::log(30.0);
    double prev = M_PI;
    for (double lam : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        LevelTheta lt = level_theta(f, log_r, lam);
        REQUIRE(lt.kind == LevelThetaKind::Angle);
        CHECK(lt.theta < prev);
        prev = lt.theta;
    }
}

TEST_CASE("level_arc construction and endpoint accuracy") {
    auto f = truncate(1.0, 0, ZeroFamily::cosh_sqrt(), std::log(10.0), 1e-10);
    double log_r = std::log(4.0);

    Curve arc = level_arc(f, log_r, 0.0, 100);
    CHECK(!arc.closed);
    CHECK(arc.points.size() >= 100);
    // symmetric point set
    CHECK(arc.points.front().arg == doctest::Approx(-arc.points.back().arg));
    // endpoints satisfy |log|f| - log lambda| <= 1e-9
    CHECK(std::abs(f.eval_log(arc.points.front()).log_mod) <= 1e-9);
    CHECK(std::abs(f.eval_log(arc.points.back()).log_mod) <= 1e-9);

    double log_m = log_min_modulus(f, log_r);
    Curve full = level_arc(f, log_r, log_m - 0.5, 64);
    CHECK(full.closed);

    CHECK_THROWS_AS(level_arc(f, log_r, 100.0, 64), empty_level_set_error);
}

TEST_CASE("extract_annulus_subcurve basics") {
    double l1 = std::log(2.0), l2 = std::log(8.0);

    // radial segment from r1/2 to 2 r2: returns exactly the [r1, r2] portion
    Curve seg = make_radial_segment(std::log(1.0), std::log(16.0), 0.7, 50);
    Curve sub = extract_annulus_subcurve(seg, l1, l2);
    CHECK(sub.points.front().log_mod == doctest::Approx(l1));
    CHECK(sub.points.back().log_mod == doctest::Approx(l2));
    for (const auto& p : sub.points) {
        CHECK(p.log_mod >= l1 - 1e-12);
        CHECK(p.log_mod <= l2 + 1e-12);
    }

    // enters, retreats, then crosses: the final crossing arc is returned
    Curve wiggle;
    wiggle.points = {{std::log(1.0), 0.0},
                     {std::log(3.0), 0.1},
                     {std::log(1.2), 0.2},
                     {std::log(1.5), 0.3},
                     {std::log(10.0), 0.4}};
    Curve w = extract_annulus_subcurve(wiggle, l1, l2);
    CHECK(w.points.front().log_mod == doctest::Approx(l1));
    CHECK(w.points.back().log_mod == doctest::Approx(l2));
    // it is the final crossing: the arc starts after the retreat
    CHECK(w.points.front().arg > 0.2);

    // entirely inside the open annulus: no crossing
    Curve inside = make_radial_segment(std::log(3.0), std::log(5.0), 0.0, 10);
    CHECK_THROWS_AS(extract_annulus_subcurve(inside, l1, l2), not_crossing_error);
}

TEST_CASE("curve CSV round trip") {
    Curve c = make_circle(2.5, 32);
    Curve back = curve_from_csv(curve_csv(c));
    REQUIRE(back.points.size() == c.points.size());
    CHECK(back.closed);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(back.points[i].log_mod == doctest::Approx(c.points[i].log_mod));
        CHECK(back.points[i].arg == doctest::Approx(c.points[i].arg));
    }
}
