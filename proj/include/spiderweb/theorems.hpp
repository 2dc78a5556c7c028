#ifndef SPIDERWEB_THEOREMS_HPP
#define SPIDERWEB_THEOREMS_HPP

#include <string>
#include <vector>

#include "spiderweb/curves.hpp"
#include "spiderweb/entire_product.hpp"

namespace spiderweb {

// Admissibility constants for the winding lower bound:
//   t >= R1,  t^{a/4} >= 48 sqrt2 / pi,  a t^{a/4} >= 384 sqrt2 / pi.
double admissibility_constant_small();  // 48 sqrt2 / pi  ~ 21.6069
double admissibility_constant_large();  // 384 sqrt2 / pi ~ 172.855
double winding_bound_coefficient();     // pi^2 / (48 sqrt2) ~ 0.145395

bool winding_bound_admissible(double log_t, double a, double log_R1_surrogate);

// The winding lower bound pi^2 t^{a/4} log M(t) / (48 sqrt2 log t), assembled
// in log space (+inf if t^{a/4} overflows).
double winding_lower_bound(double log_t, double a, double log_M_t);

struct WindingCertificate {
    double log_t = 0.0;
    double a = 0.0;
    Curve subcurve;                        // refined crossing arc inside [t, t^{1+a}]
    std::size_t endpoint_index0 = 0;       // indices into subcurve.points
    std::size_t endpoint_index1 = 0;
    double measured_delta_arg = 0.0;       // max over endpoint pairs
    double lower_bound = 0.0;
    double tail_budget = 0.0;
    bool admissible = false;
    bool passed = false;                   // measured + tail_budget >= lower_bound
    bool measurement_capped = false;       // traversal stopped once safely past the bound
    double log_M_t = 0.0;
    double min_log_f = 0.0, max_log_f = 0.0;  // image range over the traversed arc
};

// Verify the winding lower bound for a curve in the closed upper half-plane
// meeting C(t) and C(t^{1+a}) with 1/M(t) < |f| < M(t) along it. Extracts the
// crossing arc, measures the continued argument between the best endpoint
// pair, and compares against the bound. Throws hypothesis_violated_error when
// the modulus hypothesis fails, not_crossing_error when a circle is missed.
WindingCertificate verify_winding_lower_bound(const EntireProductFunction& f,
                                              const Curve& curve, double log_t, double a,
                                              double log_R1_surrogate);

enum class TrichotomyCase { stretch_to_image_band = 1, stretch_from_root_band = 2, wind = 3 };

struct TrichotomyResult {
    TrichotomyCase which = TrichotomyCase::stretch_to_image_band;
    // cases 1-2: the image log-radius band [evidence_lo, evidence_hi] met
    double evidence_lo = 0.0, evidence_hi = 0.0;
    WindingCertificate certificate;  // case 3 only
    double log_M_s = 0.0;
    double image_min = 0.0, image_max = 0.0;  // measured log|f| range on the curve
};

struct SurrogateThresholds {
    double log_R0 = 0.0;  // minimum-condition threshold
    double log_R1 = 0.0;  // Hadamard convexity threshold
};

// Pure case decision from the measured image range (unit-testable without a
// function): case 1 if [image_min, image_max] covers [logM, (l-b) logM];
// case 2 if it covers [logM/l, logM]; case 3 otherwise.
TrichotomyCase decide_trichotomy(double image_min, double image_max, double log_M_s,
                                 double l, double b);

// Trichotomy for a curve in the closed upper half-plane meeting C(s), C(s^l):
// the image meets both C(M(s)) and C(M(s)^{l-b}) (case 1), or both
// C(M(s)^{1/l}) and C(M(s)) (case 2), or else the image range sits strictly
// inside the band and the winding verifier runs with t = s^{l-b}, a = b/(l-b)
// (case 3; its lower bound is >= 2 pi under the preconditions).
TrichotomyResult classify_trichotomy(const EntireProductFunction& f, const Curve& curve,
                                     double log_s, double l, double b, double m_exp,
                                     const SurrogateThresholds& surrogates);

enum class CascadeOutcome { stretch, wind, stop };

struct CascadeStep {
    int n = 0;
    double log_r = 0.0;
    double L_n = 0.0;
    CascadeOutcome outcome = CascadeOutcome::stop;
    int trichotomy_case = 0;
    double tail_budget = 0.0;  // truncation tail bound over the step's radii
    std::string note;
};

struct CascadeReport {
    double L = 0.0;
    double eps = 0.0;
    double m_exp = 0.0;
    double log_r0 = 0.0;
    std::vector<CascadeStep> steps;
    int final_n = 0;
    WindingCertificate wind_certificate;  // populated when a wind event fired
    bool wind_event = false;
};

// The stretch-or-wind induction: L = m_exp + 4, L_0 = L - 1,
// L_{n+1} = L_n - 1/(n+1)^2. At step n the current curve is folded into the
// upper half-plane and classified with s = r_n, l = L_n, b = 1/(n+1)^2.
// Cases 1-2 map the curve forward (image polyline, adaptively refined),
// restrict it to the next annulus and record a stretch; case 3 records a wind
// event and stops. Also stops at the double-range guard or max_steps.
CascadeReport run_cascade(const EntireProductFunction& f, const Curve& curve0,
                          double log_r0, double m_exp,
                          const SurrogateThresholds& surrogates, int max_steps = 8);

std::string winding_certificate_json(const WindingCertificate& cert);
std::string trichotomy_result_json(const TrichotomyResult& result);
std::string cascade_report_json(const CascadeReport& report);

}  // namespace spiderweb

#endif  // SPIDERWEB_THEOREMS_HPP
