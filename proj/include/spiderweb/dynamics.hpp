#ifndef SPIDERWEB_DYNAMICS_HPP
#define SPIDERWEB_DYNAMICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spiderweb/entire_product.hpp"

namespace spiderweb {

struct EscapeParams {
    double log_R = 0.0;
    double eps = 1.0;  // 1/L
    int n_max = 3;
    double L = 1.0;
};

enum class OrbitClass : std::uint8_t { LOW = 0, UNDECIDED = 1, QUITE_FAST = 2, FAST = 3 };

// Iterated thresholds lambda^M_k = log M^k(R) and lambda^mu_k = log mu^k(R),
// mu(r) = M(r)^eps. Entries become +inf once an iterate leaves the range where
// log M is computable; comparisons against +inf then fail, which soundly
// demotes FAST to QUITE_FAST at depths the truncation cannot certify.
struct EscapeThresholds {
    std::vector<double> log_M_iter;   // k = 1..n_max
    std::vector<double> log_mu_iter;  // k = 1..n_max
};

// Validates that the mu-iteration is strictly increasing from log_R (else the
// parameters are rejected with precondition_failed_error) and precomputes the
// threshold ladders.
EscapeThresholds make_escape_thresholds(const EntireProductFunction& f,
                                        const EscapeParams& params);

struct PointClass {
    OrbitClass cls = OrbitClass::UNDECIDED;
    int depth = 0;  // orbit steps actually compared
};

// Orbit classification: FAST when log|f^k(z)| >= lambda^M_k for all k <= n_max,
// QUITE_FAST when >= lambda^mu_k for all k, LOW when the orbit drops below the
// mu-ladder (or hits a zero), UNDECIDED when evaluation validity ended first.
PointClass classify_point(const EntireProductFunction& f, const LogComplex& z,
                          const EscapeParams& params, const EscapeThresholds& thresholds);

struct CartesianWindow {
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
};

struct ClassGrid {
    CartesianWindow window;
    int width = 0, height = 0;
    std::vector<PointClass> cells;  // row-major, row 0 at y = y1 (image order)
    EscapeParams params;

    const PointClass& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * width + ix]; }
    // cell-center coordinates
    double cx(int ix) const { return window.x0 + (window.x1 - window.x0) * (ix + 0.5) / width; }
    double cy(int iy) const { return window.y1 - (window.y1 - window.y0) * (iy + 0.5) / height; }
};

// Per-pixel classify_point at cell centers; deterministic for any thread count
// (rows are independent and the output layout is fixed).
ClassGrid raster(const EntireProductFunction& f, const CartesianWindow& window, int width,
                 int height, const EscapeParams& params, int n_threads = 1);

struct RingReport {
    int component_id = 0;
    bool is_escape_ring = false;  // true: QUITE_FAST ring; false: non-escaping gap
    double log_r_min = 0.0, log_r_max = 0.0;
    bool surrounds_origin = false;
    bool annulus_ok = false;
    bool touches_boundary = false;
    std::size_t cell_count = 0;
};

// Components of non-QUITE_FAST cells (4-connected) with their radial extents
// and the annulus check log_r_max <= L log_r_min (active when
// log_r_min > L log_R), plus QUITE_FAST components (8-connected) that wind
// around the origin cell. Raster-scale evidence, not proof.
// Throws window_too_small_error when every non-escaping component touches the
// window boundary.
std::vector<RingReport> detect_rings(const ClassGrid& grid);

// Plain-text PGM (P2), class codes {LOW, UNDECIDED, QUITE_FAST, FAST} mapped to
// gray levels {0, 85, 170, 255}; byte-stable across runs and thread counts.
std::string grid_pgm(const ClassGrid& grid);
std::string ring_report_csv(const std::vector<RingReport>& rings);

}  // namespace spiderweb

#endif  // SPIDERWEB_DYNAMICS_HPP
