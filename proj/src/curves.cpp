#include "spiderweb/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spiderweb/errors.hpp"

namespace spiderweb {

using logpolar::wrap_angle;

void validate_curve(const Curve& curve) {
    if (curve.points.size() < 2)
        throw std::invalid_argument("curve needs at least 2 points");
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const auto& a = curve.points[i];
        const auto& b = curve.points[i + 1];
        if (a.log_mod == b.log_mod && a.arg == b.arg)
            throw std::invalid_argument("curve has consecutive duplicate points");
    }
}

Curve make_circle(double log_r, int n_samples) {
    Curve c;
    c.closed = true;
    int n = std::max(n_samples, 16);
    for (int i = 0; i <= n; ++i)
        c.points.push_back({log_r, -M_PI + 2.0 * M_PI * i / n});
    return c;
}

Curve make_radial_segment(double log_r_lo, double log_r_hi, double arg, int n_samples) {
    Curve c;
    int n = std::max(n_samples, 2);
    for (int i = 0; i < n; ++i)
        c.points.push_back({log_r_lo + (log_r_hi - log_r_lo) * i / (n - 1), arg});
    return c;
}

namespace {

constexpr int kMaxRefineDepth = 40;
constexpr double kMaxStepArg = M_PI / 2.0;
constexpr double kMaxStepLogMod = 1.0;

struct TraceState {
    const EntireProductFunction* f;
    CurveTrace* out;
    double continued_arg;  // running unwrapped image argument
    double min_arg, max_arg;
    double arg_range_cap;
    bool stopped = false;
};

void note_image_point(TraceState& st, const LogComplex& z, double image_log_mod,
                      double image_arg_continued) {
    st.out->domain.push_back(z);
    st.out->image.push_back({image_log_mod, image_arg_continued});
    st.out->min_image_log_mod = std::min(st.out->min_image_log_mod, image_log_mod);
    st.out->max_image_log_mod = std::max(st.out->max_image_log_mod, image_log_mod);
    st.min_arg = std::min(st.min_arg, image_arg_continued);
    st.max_arg = std::max(st.max_arg, image_arg_continued);
    if (st.max_arg - st.min_arg >= st.arg_range_cap) {
        st.stopped = true;
        st.out->arg_range_capped = true;
    }
}

// Refine the segment (z0 -> z1) whose endpoint images are known, emitting all
// refined points after z0. The continuation increment of a sufficiently small
// segment is the principal-valued increment of the image argument.
void refine_segment(TraceState& st, const LogComplex& z0, const LogComplex& F0,
                    const LogComplex& z1, const LogComplex& F1, int depth) {
    if (st.stopped) return;
    double step_arg = wrap_angle(F1.arg - F0.arg);
    double step_log = F1.log_mod - F0.log_mod;
    if (std::abs(step_arg) < kMaxStepArg && std::abs(step_log) < kMaxStepLogMod) {
        st.continued_arg += step_arg;
        st.out->refinement_depth = std::max(st.out->refinement_depth, depth);
        st.out->max_step_arg = std::max(st.out->max_step_arg, std::abs(step_arg));
        note_image_point(st, z1, F1.log_mod, st.continued_arg);
        return;
    }
    if (depth >= kMaxRefineDepth)
        throw refinement_limit_error(
            "delta_arg: refinement depth exceeded; curve passes too near a zero");
    LogComplex zm{0.5 * (z0.log_mod + z1.log_mod), 0.5 * (z0.arg + z1.arg)};
    LogComplex Fm = st.f->eval_log(zm);
    refine_segment(st, z0, F0, zm, Fm, depth + 1);
    refine_segment(st, zm, Fm, z1, F1, depth + 1);
}

}  // namespace

CurveTrace trace_log_image(const EntireProductFunction& f, const Curve& curve,
                           double arg_range_cap) {
    validate_curve(curve);
    CurveTrace trace;
    TraceState st{&f, &trace, 0.0, 0.0, 0.0, arg_range_cap, false};

    LogComplex za = curve.points.front();
    LogComplex Fa = f.eval_log(za);
    st.continued_arg = Fa.arg;
    st.min_arg = Fa.arg;
    st.max_arg = Fa.arg;
    trace.min_image_log_mod = Fa.log_mod;
    trace.max_image_log_mod = Fa.log_mod;
    note_image_point(st, za, Fa.log_mod, Fa.arg);

    for (std::size_t i = 1; i < curve.points.size() && !st.stopped; ++i) {
        LogComplex zb = curve.points[i];
        LogComplex Fb = f.eval_log(zb);
        refine_segment(st, za, Fa, zb, Fb, 0);
        za = zb;
        Fa = Fb;
    }
    return trace;
}

namespace {

void refine_modulus_range(const EntireProductFunction& f, ModulusRange& out,
                          const LogComplex& z0, double v0, const LogComplex& z1,
                          double v1, int depth) {
    double dv = v1 - v0;
    double dz = std::hypot(z1.log_mod - z0.log_mod, z1.arg - z0.arg);
    if (std::abs(dv) < kMaxStepLogMod && dz < 0.5) {
        out.min_log_mod = std::min(out.min_log_mod, v1);
        out.max_log_mod = std::max(out.max_log_mod, v1);
        return;
    }
    if (depth >= kMaxRefineDepth)
        throw refinement_limit_error(
            "trace_log_modulus_range: refinement depth exceeded near a zero");
    LogComplex zm{0.5 * (z0.log_mod + z1.log_mod), 0.5 * (z0.arg + z1.arg)};
    double vm = f.eval_log(zm).log_mod;
    refine_modulus_range(f, out, z0, v0, zm, vm, depth + 1);
    refine_modulus_range(f, out, zm, vm, z1, v1, depth + 1);
}

}  // namespace

ModulusRange trace_log_modulus_range(const EntireProductFunction& f, const Curve& curve) {
    validate_curve(curve);
    LogComplex za = curve.points.front();
    double va = f.eval_log(za).log_mod;
    ModulusRange out{va, va};
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        LogComplex zb = curve.points[i];
        double vb = f.eval_log(zb).log_mod;
        refine_modulus_range(f, out, za, va, zb, vb, 0);
        za = zb;
        va = vb;
    }
    return out;
}

Curve trace_level_boundary(const EntireProductFunction& f, double log_r_lo,
                           double log_r_hi, double log_lambda, int n_samples) {
    if (!(log_r_hi > log_r_lo))
        throw std::invalid_argument("trace_level_boundary: empty radius range");
    int n = std::max(n_samples, 2);
    Curve c;
    double prev_theta = -1.0;
    for (int i = 0; i < n; ++i) {
        double lr = log_r_lo + (log_r_hi - log_r_lo) * i / (n - 1);
        double lo = 0.0, hi = M_PI;
        if (prev_theta >= 0.0) {
            // warm bracket around the previous angle, expanded until it holds
            double w = 0.05;
            while (w < 4.0) {
                lo = std::max(0.0, prev_theta - w);
                hi = std::min(M_PI, prev_theta + w);
                double h_lo =
                    (lo == 0.0) ? 1.0 : f.eval_log({lr, lo}).log_mod - log_lambda;
                double h_hi =
                    (hi == M_PI) ? -1.0 : f.eval_log({lr, hi}).log_mod - log_lambda;
                if (h_lo >= 0.0 && h_hi <= 0.0) break;
                w *= 4.0;
            }
            if (w >= 4.0) {
                lo = 0.0;
                hi = M_PI;
            }
        }
        if (lo == 0.0 && f.eval_log({lr, 0.0}).log_mod < log_lambda)
            throw empty_level_set_error(
                "trace_level_boundary: level exceeds M(r) inside the range");
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            if (f.eval_log({lr, mid}).log_mod - log_lambda >= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        double theta = 0.5 * (lo + hi);
        c.points.push_back({lr, theta});
        prev_theta = theta;
    }
    return c;
}

WindingResult delta_arg(const EntireProductFunction& f, const Curve& curve) {
    CurveTrace trace = trace_log_image(f, curve);
    return {trace.image.back().arg - trace.image.front().arg, trace.refinement_depth,
            trace.max_step_arg};
}

double delta_arg_between(const EntireProductFunction& f, const Curve& curve,
                         std::size_t index0, std::size_t index1) {
    if (index0 >= curve.points.size() || index1 >= curve.points.size())
        throw std::invalid_argument("delta_arg_between: index out of range");
    if (index0 == index1) return 0.0;
    bool reversed = index0 > index1;
    std::size_t lo = std::min(index0, index1), hi = std::max(index0, index1);
    Curve sub;
    sub.points.assign(curve.points.begin() + static_cast<std::ptrdiff_t>(lo),
                      curve.points.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    double d = delta_arg(f, sub).delta_arg;
    return reversed ? -d : d;
}

LevelTheta level_theta(const EntireProductFunction& f, double log_r, double log_lambda) {
    double log_M = f.eval_log({log_r, 0.0}).log_mod;
    if (log_M < log_lambda) return {LevelThetaKind::Empty, 0.0};
    double log_m;
    bool at_zero = false;
    try {
        log_m = f.eval_log({log_r, M_PI}).log_mod;
    } catch (const zero_factor_error&) {
        log_m = -std::numeric_limits<double>::infinity();
        at_zero = true;
    }
    if (!at_zero && log_m > log_lambda) return {LevelThetaKind::FullCircle, 0.0};

    // |f(re^{i theta})| is strictly decreasing on [0, pi]; h(0) >= 0 >= h(pi).
    double lo = 0.0, hi = M_PI;
    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double h = f.eval_log({log_r, mid}).log_mod - log_lambda;
        if (h >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {LevelThetaKind::Angle, 0.5 * (lo + hi)};
}

Curve level_arc(const EntireProductFunction& f, double log_r, double log_lambda,
                int n_samples) {
    LevelTheta lt = level_theta(f, log_r, log_lambda);
    if (lt.kind == LevelThetaKind::Empty)
        throw empty_level_set_error("level_arc: lambda exceeds M(r)");
    int n = std::max(n_samples, 64);
    if (lt.kind == LevelThetaKind::FullCircle) return make_circle(log_r, n);
    double theta = lt.theta;
    if (!(theta > 1e-13))
        throw empty_level_set_error("level_arc: level arc degenerates to a point");
    Curve c;
    for (int i = 0; i < n; ++i)
        c.points.push_back({log_r, -theta + 2.0 * theta * i / (n - 1)});
    return c;
}

namespace {

LogComplex interp_at_level(const LogComplex& a, const LogComplex& b, double level) {
    double t = (level - a.log_mod) / (b.log_mod - a.log_mod);
    return {level, a.arg + t * (b.arg - a.arg)};
}

}  // namespace

Curve extract_annulus_subcurve(const Curve& curve, double log_r1, double log_r2) {
    validate_curve(curve);
    if (!(log_r1 < log_r2))
        throw std::invalid_argument("extract_annulus_subcurve: need log_r1 < log_r2");

    // Augment with exact boundary-crossing points.
    std::vector<LogComplex> pts;
    pts.push_back(curve.points.front());
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const auto& a = curve.points[i];
        const auto& b = curve.points[i + 1];
        double lo = std::min(a.log_mod, b.log_mod), hi = std::max(a.log_mod, b.log_mod);
        std::vector<double> levels;
        if (lo < log_r1 && log_r1 < hi) levels.push_back(log_r1);
        if (lo < log_r2 && log_r2 < hi) levels.push_back(log_r2);
        if (levels.size() == 2 && a.log_mod > b.log_mod) std::swap(levels[0], levels[1]);
        for (double lv : levels) pts.push_back(interp_at_level(a, b, lv));
        pts.push_back(b);
    }

    auto inside = [&](const LogComplex& p) {
        return p.log_mod >= log_r1 && p.log_mod <= log_r2;
    };
    auto touches = [&](const LogComplex& p, double level) { return p.log_mod == level; };

    // Scan maximal inside-runs; within each, take the stretch from the first
    // boundary contact to the first contact with the other boundary.
    std::size_t i = 0;
    while (i < pts.size()) {
        if (!inside(pts[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end + 1 < pts.size() && inside(pts[run_end + 1])) ++run_end;

        for (std::size_t s = i; s <= run_end; ++s) {
            bool s1 = touches(pts[s], log_r1), s2 = touches(pts[s], log_r2);
            if (!s1 && !s2) continue;
            double other = s1 ? log_r2 : log_r1;
            for (std::size_t e = s + 1; e <= run_end; ++e) {
                if (touches(pts[e], other)) {
                    Curve sub;
                    sub.points.assign(pts.begin() + static_cast<std::ptrdiff_t>(s),
                                      pts.begin() + static_cast<std::ptrdiff_t>(e) + 1);
                    // collapse accidental duplicates from crossing insertion
                    auto& v = sub.points;
                    v.erase(std::unique(v.begin(), v.end(),
                                        [](const LogComplex& x, const LogComplex& y) {
                                            return x.log_mod == y.log_mod && x.arg == y.arg;
                                        }),
                            v.end());
                    if (v.size() >= 2) return sub;
                }
            }
            break;  // first contact fixed; no later contact with the other boundary
        }
        i = run_end + 1;
    }
    throw not_crossing_error(
        "extract_annulus_subcurve: curve has no crossing arc of the annulus");
}

std::string curve_csv(const Curve& curve) {
    std::ostringstream os;
    os.precision(17);
    os << "log_mod,arg\n";
    for (const auto& p : curve.points) os << p.log_mod << "," << p.arg << "\n";
    return os.str();
}

Curve curve_from_csv(const std::string& text) {
    Curve c;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first) {  // header
            first = false;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("curve_from_csv: malformed line: " + line);
        c.points.push_back(
            {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    if (c.points.size() >= 2) {
        const auto& a = c.points.front();
        const auto& b = c.points.back();
        c.closed = (a.log_mod == b.log_mod &&
                    std::abs(wrap_angle(a.arg - b.arg)) < 1e-12);
    }
    return c;
}

}  // namespace spiderweb
