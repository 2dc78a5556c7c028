#ifndef SPIDERWEB_CURVES_HPP
#define SPIDERWEB_CURVES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "spiderweb/entire_product.hpp"
#include "spiderweb/logpolar.hpp"

namespace spiderweb {

// A parameterized polyline in log-polar coordinates. Segments are geodesics in
// (log_mod, arg): interpolation is linear in both coordinates, which is the
// only meaningful notion at radii like e^1000.
struct Curve {
    std::vector<LogComplex> points;
    bool closed = false;
};

// Basic validity: >= 2 points, consecutive points distinct. Throws
// std::invalid_argument on violation.
void validate_curve(const Curve& curve);

Curve make_circle(double log_r, int n_samples);
Curve make_radial_segment(double log_r_lo, double log_r_hi, double arg, int n_samples);

struct WindingResult {
    double delta_arg = 0.0;
    int refinement_depth = 0;
    double max_step_arg = 0.0;  // < pi/2 at acceptance
};

// Net change of arg f along the curve via adaptive continuation: every segment
// is bisected (midpoint of log_mod and arg) until its image argument increment
// is < pi/2 and its image log-modulus increment is < 1. Depth > 40 raises
// refinement_limit_error (the curve passes too near a zero).
WindingResult delta_arg(const EntireProductFunction& f, const Curve& curve);

// Continuation restricted to the sub-polyline from index0 to index1
// (index0 > index1 traverses the reversal, negating the result).
double delta_arg_between(const EntireProductFunction& f, const Curve& curve,
                         std::size_t index0, std::size_t index1);

// Fully refined traversal: the refined domain polyline, the image polyline
// log f with argument continued (unwrapped) along it, and the image range.
struct CurveTrace {
    std::vector<LogComplex> domain;
    std::vector<LogComplex> image;
    int refinement_depth = 0;
    double max_step_arg = 0.0;
    double min_image_log_mod = 0.0;
    double max_image_log_mod = 0.0;
    bool arg_range_capped = false;  // traversal stopped early at the cap
};

// arg_range_cap: stop the traversal (cleanly, at a refined point) once the
// spread of the continued image argument reaches the cap. Winding measured up
// to a cap is still a valid lower witness; it just avoids paying for windings
// far beyond what a bound check needs.
CurveTrace trace_log_image(const EntireProductFunction& f, const Curve& curve,
                           double arg_range_cap =
                               std::numeric_limits<double>::infinity());

// Boundary angles theta(r) of {|f| > lambda} across a log-radius range, with
// warm-started bisection from sample to sample. Requires the level set to meet
// every sampled circle in a proper arc.
Curve trace_level_boundary(const EntireProductFunction& f, double log_r_lo,
                           double log_r_hi, double log_lambda, int n_samples);

// Range of log|f| along the curve, refined on the image modulus alone (steps
// < 1 in log|f|, domain steps < 1/2). Unlike trace_log_image this does not pay
// for image winding, which can be enormous on level-following curves.
struct ModulusRange {
    double min_log_mod = 0.0;
    double max_log_mod = 0.0;
};
ModulusRange trace_log_modulus_range(const EntireProductFunction& f, const Curve& curve);

enum class LevelThetaKind { Empty, FullCircle, Angle };

struct LevelTheta {
    LevelThetaKind kind = LevelThetaKind::Empty;
    double theta = 0.0;  // only for Angle; the unique theta in (0, pi) with |f| = lambda
};

// Where the circle of log-radius log_r meets {|f| > lambda}: the whole circle,
// nothing, or the arc |theta| < theta*. Uses the strict monotonicity of
// |f(re^{i theta})| in theta on [0, pi]; bisection to |dtheta| <= 1e-12.
LevelTheta level_theta(const EntireProductFunction& f, double log_r, double log_lambda);

// Polyline sampling of the closed arc {re^{i theta}: |theta| <= theta*} (or the
// full circle), uniform in theta, at least 64 samples.
Curve level_arc(const EntireProductFunction& f, double log_r, double log_lambda,
                int n_samples);

// A connected sub-polyline inside the closed log-annulus [log_r1, log_r2]
// touching both boundary circles; circle crossings are interpolated linearly
// in (log_mod, arg). Throws not_crossing_error when no such sub-arc exists.
Curve extract_annulus_subcurve(const Curve& curve, double log_r1, double log_r2);

std::string curve_csv(const Curve& curve);
Curve curve_from_csv(const std::string& text);

}  // namespace spiderweb

#endif  // SPIDERWEB_CURVES_HPP
