#include "spiderweb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <thread>

#include "spiderweb/errors.hpp"
#include "spiderweb/modulus.hpp"

namespace spiderweb {

EscapeThresholds make_escape_thresholds(const EntireProductFunction& f,
                                        const EscapeParams& params) {
    if (!(params.eps > 0.0) || params.eps > 1.0)
        throw precondition_failed_error("escape params: need 0 < eps <= 1");
    if (params.n_max < 1)
        throw precondition_failed_error("escape params: need n_max >= 1");

    const double eval_limit = f.has_implicit_range()
                                  ? f.max_log_radius()
                                  : std::numeric_limits<double>::infinity();
    auto ladder = [&](double eps) {
        std::vector<double> out;
        double lam = params.log_R;
        for (int k = 0; k < params.n_max; ++k) {
            if (!std::isfinite(lam) || lam > eval_limit) {
                out.push_back(std::numeric_limits<double>::infinity());
                lam = std::numeric_limits<double>::infinity();
                continue;
            }
            lam = eps * log_max_modulus(f, lam);
            out.push_back(lam);
        }
        return out;
    };

    EscapeThresholds th;
    th.log_M_iter = ladder(1.0);
    th.log_mu_iter = ladder(params.eps);

    double prev = params.log_R;
    for (double v : th.log_mu_iter) {
        if (!std::isfinite(v)) break;
        if (!(v > prev))
            throw precondition_failed_error(
                "escape params: mu-iteration is not strictly increasing from log_R; "
                "raise R or eps");
        prev = v;
    }
    return th;
}

PointClass classify_point(const EntireProductFunction& f, const LogComplex& z,
                          const EscapeParams& params, const EscapeThresholds& thresholds) {
    const double eval_limit = f.has_implicit_range()
                                  ? f.max_log_radius()
                                  : std::numeric_limits<double>::infinity();
    LogComplex w = z;
    bool fast_chain = true;
    for (int k = 1; k <= params.n_max; ++k) {
        if (!logpolar::is_zero(w) && w.log_mod > eval_limit)
            return {OrbitClass::UNDECIDED, k - 1};
        try {
            w = f.eval_log(w);
        } catch (const zero_factor_error&) {
            return {OrbitClass::LOW, k};  // orbit hit a zero of f
        } catch (const out_of_validity_error&) {
            return {OrbitClass::UNDECIDED, k - 1};
        }
        const double mu_k = thresholds.log_mu_iter[static_cast<std::size_t>(k - 1)];
        const double M_k = thresholds.log_M_iter[static_cast<std::size_t>(k - 1)];
        if (std::isinf(mu_k)) return {OrbitClass::UNDECIDED, k - 1};
        if (w.log_mod < mu_k) return {OrbitClass::LOW, k};
        if (!(w.log_mod >= M_k)) fast_chain = false;
    }
    return {fast_chain ? OrbitClass::FAST : OrbitClass::QUITE_FAST, params.n_max};
}

ClassGrid raster(const EntireProductFunction& f, const CartesianWindow& window, int width,
                 int height, const EscapeParams& params, int n_threads) {
    if (width < 16 || height < 16)
        throw precondition_failed_error("raster: resolution must be at least 16x16");
    EscapeThresholds thresholds = make_escape_thresholds(f, params);

    ClassGrid grid;
    grid.window = window;
    grid.width = width;
    grid.height = height;
    grid.params = params;
    grid.cells.resize(static_cast<std::size_t>(width) * height);

    auto run_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy) {
            for (int ix = 0; ix < width; ++ix) {
                LogComplex z = logpolar::from_cartesian(grid.cx(ix), grid.cy(iy));
                grid.cells[static_cast<std::size_t>(iy) * width + ix] =
                    classify_point(f, z, params, thresholds);
            }
        }
    };

    int threads = std::max(1, n_threads);
    if (threads == 1) {
        run_rows(0, height);
    } else {
        std::vector<std::thread> pool;
        int chunk = (height + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(height, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_rows, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

namespace {

struct Component {
    int id = 0;
    bool escape = false;
    std::vector<int> cells;
    double log_r_min = 1e308, log_r_max = -1e308;
    bool touches_boundary = false;
};

double cell_log_radius(const ClassGrid& g, int ix, int iy) {
    double x = g.cx(ix), y = g.cy(iy);
    double r = std::hypot(x, y);
    return r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
}

// Flood-fill one component over cells selected by `in_set`; 4- or 8-connected.
Component flood(const ClassGrid& g, std::vector<int>& label, int start, int id,
                bool eight_connected, bool (*in_set)(OrbitClass)) {
    Component comp;
    comp.id = id;
    std::queue<int> q;
    q.push(start);
    label[static_cast<std::size_t>(start)] = id;
    const int w = g.width, h = g.height;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        comp.cells.push_back(c);
        int ix = c % w, iy = c / w;
        double lr = cell_log_radius(g, ix, iy);
        comp.log_r_min = std::min(comp.log_r_min, lr);
        comp.log_r_max = std::max(comp.log_r_max, lr);
        if (ix == 0 || iy == 0 || ix == w - 1 || iy == h - 1) comp.touches_boundary = true;
        const int dx4[] = {1, -1, 0, 0}, dy4[] = {0, 0, 1, -1};
        const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1}, dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
        int nn = eight_connected ? 8 : 4;
        const int* dx = eight_connected ? dx8 : dx4;
        const int* dy = eight_connected ? dy8 : dy4;
        for (int k = 0; k < nn; ++k) {
            int jx = ix + dx[k], jy = iy + dy[k];
            if (jx < 0 || jy < 0 || jx >= w || jy >= h) continue;
            int j = jy * w + jx;
            if (label[static_cast<std::size_t>(j)] != 0) continue;
            if (!in_set(g.cells[static_cast<std::size_t>(j)].cls)) continue;
            label[static_cast<std::size_t>(j)] = id;
            q.push(j);
        }
    }
    return comp;
}

bool is_escaping(OrbitClass c) {
    return c == OrbitClass::QUITE_FAST || c == OrbitClass::FAST;
}
bool is_non_escaping(OrbitClass c) { return !is_escaping(c); }

// Does the component (marked with `id` in label) separate the origin cell from
// the window boundary? BFS from the origin cell over non-component cells.
bool surrounds_origin(const ClassGrid& g, const std::vector<int>& label, int id) {
    const int w = g.width, h = g.height;
    int ox = -1, oy = -1;
    for (int iy = 0; iy < h && ox < 0; ++iy)
        for (int ix = 0; ix < w; ++ix) {
            if (g.window.x0 + (g.window.x1 - g.window.x0) * ix / w <= 0.0 &&
                g.window.x0 + (g.window.x1 - g.window.x0) * (ix + 1) / w >= 0.0 &&
                g.window.y1 - (g.window.y1 - g.window.y0) * (iy + 1) / h <= 0.0 &&
                g.window.y1 - (g.window.y1 - g.window.y0) * iy / h >= 0.0) {
                ox = ix;
                oy = iy;
                break;
            }
        }
    if (ox < 0) return false;  // window does not contain the origin
    if (label[static_cast<std::size_t>(oy) * w + ox] == id) return false;

    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    std::queue<int> q;
    int start = oy * w + ox;
    q.push(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        int ix = c % w, iy = c / w;
        if (ix == 0 || iy == 0 || ix == w - 1 || iy == h - 1) return false;
        const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int jx = ix + dx[k], jy = iy + dy[k];
            if (jx < 0 || jy < 0 || jx >= w || jy >= h) continue;
            int j = jy * w + jx;
            if (seen[static_cast<std::size_t>(j)] || label[static_cast<std::size_t>(j)] == id)
                continue;
            seen[static_cast<std::size_t>(j)] = 1;
            q.push(j);
        }
    }
    return true;  // the boundary was never reached
}

}  // namespace

std::vector<RingReport> detect_rings(const ClassGrid& grid) {
    const int w = grid.width, h = grid.height;
    const double L = grid.params.L;
    std::vector<RingReport> out;

    // non-escaping components, 4-connected
    std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
    int next_id = 1;
    bool any_interior = false;
    for (int c = 0; c < w * h; ++c) {
        if (label[static_cast<std::size_t>(c)] != 0 ||
            !is_non_escaping(grid.cells[static_cast<std::size_t>(c)].cls))
            continue;
        Component comp = flood(grid, label, c, next_id++, false, is_non_escaping);
        RingReport r;
        r.component_id = comp.id;
        r.is_escape_ring = false;
        r.log_r_min = comp.log_r_min;
        r.log_r_max = comp.log_r_max;
        r.touches_boundary = comp.touches_boundary;
        r.cell_count = comp.cells.size();
        r.surrounds_origin = surrounds_origin(grid, label, comp.id);
        bool constraint_active = comp.log_r_min > L * grid.params.log_R;
        r.annulus_ok = !constraint_active || comp.log_r_max <= L * comp.log_r_min;
        if (!comp.touches_boundary) any_interior = true;
        out.push_back(r);
    }
    if (!any_interior)
        throw window_too_small_error(
            "detect_rings: every non-escaping component touches the window boundary");

    // escaping components, 8-connected; report the ones that wind around the origin
    std::vector<int> elabel(static_cast<std::size_t>(w) * h, 0);
    for (int c = 0; c < w * h; ++c) {
        if (elabel[static_cast<std::size_t>(c)] != 0 ||
            !is_escaping(grid.cells[static_cast<std::size_t>(c)].cls))
            continue;
        Component comp = flood(grid, elabel, c, next_id++, true, is_escaping);
        RingReport r;
        r.component_id = comp.id;
        r.is_escape_ring = true;
        r.log_r_min = comp.log_r_min;
        r.log_r_max = comp.log_r_max;
        r.touches_boundary = comp.touches_boundary;
        r.cell_count = comp.cells.size();
        r.surrounds_origin = surrounds_origin(grid, elabel, comp.id);
        bool constraint_active = comp.log_r_min > L * grid.params.log_R;
        r.annulus_ok = !constraint_active || comp.log_r_max <= L * comp.log_r_min;
        if (r.surrounds_origin) out.push_back(r);
    }
    return out;
}

std::string grid_pgm(const ClassGrid& grid) {
    static const int gray[4] = {0, 85, 170, 255};
    std::ostringstream os;
    os << "P2\n" << grid.width << " " << grid.height << "\n255\n";
    for (int iy = 0; iy < grid.height; ++iy) {
        for (int ix = 0; ix < grid.width; ++ix) {
            os << gray[static_cast<int>(grid.at(ix, iy).cls)];
            os << (ix + 1 == grid.width ? '\n' : ' ');
        }
    }
    return os.str();
}

std::string ring_report_csv(const std::vector<RingReport>& rings) {
    std::ostringstream os;
    os.precision(15);
    os << "component_id,kind,log_r_min,log_r_max,surrounds_origin,annulus_ok,"
          "touches_boundary,cell_count\n";
    for (const auto& r : rings) {
        os << r.component_id << "," << (r.is_escape_ring ? "ring" : "gap") << ","
           << r.log_r_min << "," << r.log_r_max << "," << (r.surrounds_origin ? 1 : 0)
           << "," << (r.annulus_ok ? 1 : 0) << "," << (r.touches_boundary ? 1 : 0) << ","
           << r.cell_count << "\n";
    }
    return os.str();
}

}  // namespace spiderweb
