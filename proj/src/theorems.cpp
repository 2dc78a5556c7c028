#include "spiderweb/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "spiderweb/errors.hpp"
#include "spiderweb/modulus.hpp"

namespace spiderweb {

using logpolar::wrap_angle;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTwoPi = 2.0 * M_PI;
// Guard for log-radius data carried through cascade steps.
constexpr double kLogRadiusGuard = 1e300;
}  // namespace

double admissibility_constant_small() { return 48.0 * kSqrt2 / M_PI; }
double admissibility_constant_large() { return 384.0 * kSqrt2 / M_PI; }
double winding_bound_coefficient() { return M_PI * M_PI / (48.0 * kSqrt2); }

bool winding_bound_admissible(double log_t, double a, double log_R1_surrogate) {
    if (!(a > 0.0) || !(log_t > 0.0)) return false;
    if (log_t < log_R1_surrogate) return false;
    double quarter = 0.25 * a * log_t;  // log t^{a/4}
    if (quarter < std::log(admissibility_constant_small())) return false;
    return std::log(a) + quarter >= std::log(admissibility_constant_large());
}

double winding_lower_bound(double log_t, double a, double log_M_t) {
    double quarter = 0.25 * a * log_t;
    if (quarter > 700.0) return std::numeric_limits<double>::infinity();
    return winding_bound_coefficient() * std::exp(quarter) * log_M_t / log_t;
}

namespace {

void require_upper_half_plane(const Curve& curve, const char* who) {
    for (const auto& p : curve.points) {
        double a = wrap_angle(p.arg);
        if (a < -1e-12)
            throw precondition_failed_error(std::string(who) +
                                            ": curve leaves the closed upper half-plane");
    }
}

}  // namespace

WindingCertificate verify_winding_lower_bound(const EntireProductFunction& f,
                                              const Curve& curve, double log_t, double a,
                                              double log_R1_surrogate) {
    if (!(a > 0.0))
        throw precondition_failed_error("verify_winding_lower_bound: need a > 0");
    require_upper_half_plane(curve, "verify_winding_lower_bound");

    const double log_top = (1.0 + a) * log_t;
    Curve crossing = extract_annulus_subcurve(curve, log_t, log_top);

    WindingCertificate cert;
    cert.log_t = log_t;
    cert.a = a;
    cert.log_M_t = log_max_modulus(f, log_t);
    cert.lower_bound = winding_lower_bound(log_t, a, cert.log_M_t);

    // winding far beyond the bound adds nothing to the verdict; stop the
    // traversal once the spread is safely past it
    double cap = std::isfinite(cert.lower_bound)
                     ? std::max(2.0 * cert.lower_bound, cert.lower_bound + 30.0)
                     : std::numeric_limits<double>::infinity();
    CurveTrace trace = trace_log_image(f, crossing, cap);
    cert.measurement_capped = trace.arg_range_capped;
    cert.min_log_f = trace.min_image_log_mod;
    cert.max_log_f = trace.max_image_log_mod;

    // modulus hypothesis 1/M(t) < |f| < M(t): refined samples on the traversed
    // part, plus the given samples beyond it when the traversal was capped
    double lo_f = trace.min_image_log_mod, hi_f = trace.max_image_log_mod;
    if (trace.arg_range_capped) {
        for (const auto& p : crossing.points) {
            double v = f.eval_log(p).log_mod;
            lo_f = std::min(lo_f, v);
            hi_f = std::max(hi_f, v);
        }
    }
    if (!(lo_f > -cert.log_M_t) || !(hi_f < cert.log_M_t)) {
        std::ostringstream os;
        os << "verify_winding_lower_bound: 1/M(t) < |f| < M(t) fails on the arc "
           << "(log|f| range [" << lo_f << ", " << hi_f << "], log M(t) = "
           << cert.log_M_t << ")";
        throw hypothesis_violated_error(os.str());
    }

    // The continued argument is a potential along the arc, so the best
    // endpoint pair is (argmin, argmax) of the cumulative values.
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < trace.image.size(); ++i) {
        if (trace.image[i].arg < trace.image[imin].arg) imin = i;
        if (trace.image[i].arg > trace.image[imax].arg) imax = i;
    }
    cert.subcurve.points = trace.domain;
    cert.endpoint_index0 = imin;
    cert.endpoint_index1 = imax;
    cert.measured_delta_arg = trace.image[imax].arg - trace.image[imin].arg;

    double quarter = 0.25 * a * log_t;
    double bound_sensitivity =
        quarter > 700.0 ? std::numeric_limits<double>::infinity()
                        : winding_bound_coefficient() * std::exp(quarter) / log_t;
    cert.tail_budget = 2.0 * f.tail_bound(log_top) + bound_sensitivity * f.tail_bound(log_t);
    cert.admissible = winding_bound_admissible(log_t, a, log_R1_surrogate);
    cert.passed = cert.measured_delta_arg + cert.tail_budget >= cert.lower_bound;
    return cert;
}

TrichotomyCase decide_trichotomy(double image_min, double image_max, double log_M_s,
                                 double l, double b) {
    if (image_min <= log_M_s && image_max >= (l - b) * log_M_s)
        return TrichotomyCase::stretch_to_image_band;
    if (image_min <= log_M_s / l && image_max >= log_M_s)
        return TrichotomyCase::stretch_from_root_band;
    return TrichotomyCase::wind;
}

TrichotomyResult classify_trichotomy(const EntireProductFunction& f, const Curve& curve,
                                     double log_s, double l, double b, double m_exp,
                                     const SurrogateThresholds& surrogates) {
    auto fail = [](const std::string& what) {
        throw precondition_failed_error("classify_trichotomy: " + what);
    };
    if (!(b > 0.0)) fail("need b > 0");
    if (!(l > b)) fail("need l > b");
    if (log_s < 0.0 || log_s < surrogates.log_R0 || log_s < surrogates.log_R1)
        fail("s >= max(1, R0, R1) violated");
    if (l < std::max(m_exp, 1.0 + b)) fail("l >= max(m, 1 + b) violated");
    const double log_M_s = log_max_modulus(f, log_s);
    if (log_M_s < 2.0 * log_s) fail("M(s) >= s^2 violated");
    if (0.25 * b * log_s < std::log(admissibility_constant_small()))
        fail("s^{b/4} >= 48 sqrt2/pi violated");
    if (std::log(b) + 0.25 * b * log_s - std::log(l - b) <
        std::log(admissibility_constant_large()))
        fail("b s^{b/4}/(l-b) >= 384 sqrt2/pi violated");

    require_upper_half_plane(curve, "classify_trichotomy");
    Curve span = extract_annulus_subcurve(curve, log_s, l * log_s);
    ModulusRange range = trace_log_modulus_range(f, span);

    TrichotomyResult result;
    result.log_M_s = log_M_s;
    result.image_min = range.min_log_mod;
    result.image_max = range.max_log_mod;
    result.which = decide_trichotomy(result.image_min, result.image_max, log_M_s, l, b);

    switch (result.which) {
        case TrichotomyCase::stretch_to_image_band:
            result.evidence_lo = log_M_s;
            result.evidence_hi = (l - b) * log_M_s;
            break;
        case TrichotomyCase::stretch_from_root_band:
            result.evidence_lo = log_M_s / l;
            result.evidence_hi = log_M_s;
            break;
        case TrichotomyCase::wind: {
            if (!(result.image_min > log_M_s / l) ||
                !(result.image_max < (l - b) * log_M_s)) {
                std::ostringstream os;
                os << "classify_trichotomy: no case matches; the image band condition "
                      "M(s)^{1/l} < |f| < M(s)^{l-b} fails (log|f| range ["
                   << result.image_min << ", " << result.image_max << "])";
                throw hypothesis_violated_error(os.str());
            }
            result.certificate = verify_winding_lower_bound(
                f, span, (l - b) * log_s, b / (l - b), surrogates.log_R1);
            if (result.certificate.lower_bound < kTwoPi - 1e-9)
                throw precondition_failed_error(
                    "classify_trichotomy: wind-case lower bound fell below 2 pi; "
                    "the admissibility preconditions cannot have held");
            break;
        }
    }
    return result;
}

namespace {

Curve fold_into_upper_half_plane(const Curve& curve) {
    Curve folded;
    folded.points.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        LogComplex q{p.log_mod, std::abs(wrap_angle(p.arg))};
        if (!folded.points.empty()) {
            const auto& last = folded.points.back();
            if (last.log_mod == q.log_mod && last.arg == q.arg) continue;
        }
        folded.points.push_back(q);
    }
    return folded;
}

Curve image_as_curve(const CurveTrace& trace) {
    Curve img;
    img.points.reserve(trace.image.size());
    for (const auto& p : trace.image) {
        if (!img.points.empty()) {
            const auto& last = img.points.back();
            if (last.log_mod == p.log_mod && last.arg == p.arg) continue;
        }
        img.points.push_back(p);
    }
    return img;
}

}  // namespace

CascadeReport run_cascade(const EntireProductFunction& f, const Curve& curve0,
                          double log_r0, double m_exp,
                          const SurrogateThresholds& surrogates, int max_steps) {
    if (!(m_exp > 1.0)) throw precondition_failed_error("run_cascade: need m_exp > 1");
    CascadeReport report;
    report.m_exp = m_exp;
    report.L = m_exp + 4.0;
    report.eps = 1.0 / report.L;
    report.log_r0 = log_r0;

    const double L = report.L;
    const double kappa = 4.0 * L * L;

    // Size condition on R: M(r) > r^{4L^2} from the seed radius on (checked on
    // a grid up to the seed's own annulus and re-checked live at each step).
    double growth_threshold = empirical_power_growth_threshold(
        f, kappa, std::min(1.0, 0.25 * log_r0), log_r0, 64);
    if (!(log_r0 > growth_threshold))
        throw precondition_failed_error(
            "run_cascade: log_r0 below the empirical M(r) > r^{4L^2} threshold");

    validate_curve(curve0);
    {
        double lo = 1e308, hi = -1e308;
        for (const auto& p : curve0.points) {
            lo = std::min(lo, p.log_mod);
            hi = std::max(hi, p.log_mod);
        }
        if (!(lo <= log_r0) || !(hi >= L * log_r0))
            throw precondition_failed_error(
                "run_cascade: seed curve must meet C(r0) and C(r0^L)");
    }

    Curve current = curve0;
    double log_r = log_r0;
    double L_n = L - 1.0;
    int n = 0;
    for (; n < max_steps; ++n) {
        const double b = 1.0 / ((n + 1.0) * (n + 1.0));
        CascadeStep step;
        step.n = n;
        step.log_r = log_r;
        step.L_n = L_n;

        const double span_top = L_n * log_r;
        if (!(span_top < kLogRadiusGuard)) {
            step.outcome = CascadeOutcome::stop;
            step.note = "log-radius guard reached";
            report.steps.push_back(step);
            break;
        }
        if (f.has_implicit_range() && span_top > f.max_log_radius()) {
            step.outcome = CascadeOutcome::stop;
            step.note = "truncation validity limit";
            report.steps.push_back(step);
            break;
        }
        step.tail_budget = f.tail_bound(span_top);

        double log_M = log_max_modulus(f, log_r);
        if (!std::isfinite(log_M) || !(log_M > kappa * log_r)) {
            step.outcome = CascadeOutcome::stop;
            step.note = std::isfinite(log_M) ? "M(r) > r^{4L^2} failed at this radius"
                                             : "log M overflow";
            report.steps.push_back(step);
            break;
        }

        Curve folded = fold_into_upper_half_plane(current);
        TrichotomyResult tri =
            classify_trichotomy(f, folded, log_r, L_n, b, m_exp, surrogates);
        step.trichotomy_case = static_cast<int>(tri.which);

        if (tri.which == TrichotomyCase::wind) {
            step.outcome = CascadeOutcome::wind;
            report.steps.push_back(step);
            report.wind_event = true;
            report.wind_certificate = tri.certificate;
            break;
        }

        // Stretch: next base radius from the case band, then the image curve
        // restricted to the next annulus.
        double next_log_r = (tri.which == TrichotomyCase::stretch_to_image_band)
                                ? log_M
                                : log_M / L_n;
        double L_next = L_n - b;
        if (!(next_log_r < kLogRadiusGuard / std::max(1.0, L_next))) {
            step.outcome = CascadeOutcome::stop;
            step.note = "next log-radius beyond double-range guard";
            report.steps.push_back(step);
            break;
        }

        Curve span = extract_annulus_subcurve(folded, log_r, L_n * log_r);
        CurveTrace trace = trace_log_image(f, span);
        Curve image = image_as_curve(trace);
        Curve next;
        try {
            next = extract_annulus_subcurve(image, next_log_r, L_next * next_log_r);
        } catch (const not_crossing_error&) {
            step.outcome = CascadeOutcome::stop;
            step.note = "image curve failed to span the next annulus";
            report.steps.push_back(step);
            break;
        }

        step.outcome = CascadeOutcome::stretch;
        report.steps.push_back(step);
        current = next;
        log_r = next_log_r;
        L_n = L_next;
    }
    report.final_n = report.steps.empty() ? 0 : report.steps.back().n;
    return report;
}

namespace {

nlohmann::json certificate_to_json_obj(const WindingCertificate& cert) {
    nlohmann::json j;
    j["log_t"] = cert.log_t;
    j["a"] = cert.a;
    j["measured_delta_arg"] = cert.measured_delta_arg;
    j["lower_bound"] = cert.lower_bound;
    j["tail_budget"] = cert.tail_budget;
    j["admissible"] = cert.admissible;
    j["passed"] = cert.passed;
    j["measurement_capped"] = cert.measurement_capped;
    j["log_M_t"] = cert.log_M_t;
    j["log_f_range"] = {cert.min_log_f, cert.max_log_f};
    j["endpoint_indices"] = {cert.endpoint_index0, cert.endpoint_index1};
    j["subcurve_points"] = cert.subcurve.points.size();
    j["constants"] = {{"admissible_small", admissibility_constant_small()},
                      {"admissible_large", admissibility_constant_large()},
                      {"bound_coefficient", winding_bound_coefficient()}};
    return j;
}

}  // namespace

std::string winding_certificate_json(const WindingCertificate& cert) {
    return certificate_to_json_obj(cert).dump(2);
}

std::string trichotomy_result_json(const TrichotomyResult& result) {
    nlohmann::json j;
    j["case"] = static_cast<int>(result.which);
    j["log_M_s"] = result.log_M_s;
    j["image_log_f_range"] = {result.image_min, result.image_max};
    if (result.which == TrichotomyCase::wind)
        j["certificate"] = certificate_to_json_obj(result.certificate);
    else
        j["evidence_band"] = {result.evidence_lo, result.evidence_hi};
    return j.dump(2);
}

std::string cascade_report_json(const CascadeReport& report) {
    nlohmann::json j;
    j["L"] = report.L;
    j["eps"] = report.eps;
    j["m_exp"] = report.m_exp;
    j["log_r0"] = report.log_r0;
    j["final_n"] = report.final_n;
    j["wind_event"] = report.wind_event;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps) {
        const char* outcome = s.outcome == CascadeOutcome::stretch  ? "stretch"
                              : s.outcome == CascadeOutcome::wind ? "wind"
                                                                  : "stop";
        steps.push_back({{"n", s.n},
                         {"log_r", s.log_r},
                         {"L_n", s.L_n},
                         {"outcome", outcome},
                         {"case", s.trichotomy_case},
                         {"tail_budget", s.tail_budget},
                         {"note", s.note}});
    }
    j["steps"] = steps;
    if (report.wind_event) j["wind_certificate"] = certificate_to_json_obj(report.wind_certificate);
    return j.dump(2);
}

}  // namespace spiderweb
