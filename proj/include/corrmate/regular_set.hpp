#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrmate/correspondence.hpp"

namespace corrmate {

struct RasterWindow {
    cplx center{0.0, 0.0};
    double half_width = 3.0;
    int resolution = 512;

    // Column and row of z (row 0 is the top), nullopt outside.
    std::optional<std::pair<int, int>> pixel(cplx z) const;
    cplx pixel_center(int col, int row) const;
    double pixel_size() const { return 2.0 * half_width / resolution; }
};

struct LimitRaster {
    RasterWindow window;
    std::vector<std::uint8_t> mask;  // row-major, 1 on limit pixels
    bool at(int col, int row) const { return mask[static_cast<std::size_t>(row) * window.resolution + col] != 0; }
};

LimitRaster rasterize(const OrbitCloud& cloud, const RasterWindow& window);

// Pixels where the raster and the raster of the 1/z image of the cloud differ.
struct SymmetryDefect {
    std::size_t differing = 0;
    std::size_t limit_pixels = 0;
    double fraction_of_raster = 0.0;
    double fraction_of_limit = 0.0;
};

SymmetryDefect eta_symmetry_defect(const OrbitCloud& cloud, const RasterWindow& window);

struct ComponentInfo {
    int label = 0;
    std::size_t pixels = 0;
    std::string role;     // "T1", "U<j>" or "minor"
    int chain_index = -1;  // 0 for T1, j for U_j
};

struct ClassifyOptions {
    std::size_t min_component_pixels = 16;
    int adjacency_radius = 2;
    std::size_t min_adjacency_witnesses = 3;
    double eta_agreement_threshold = 0.99;
};

struct ComponentMap {
    RasterWindow window;
    std::vector<int> labels;  // -1 on limit pixels
    std::vector<ComponentInfo> components;
    std::vector<std::vector<std::size_t>> adjacency;  // witness counts between components
    int outer = -1;
    std::vector<int> chain;  // labels of U_1, ..., U_2n
    std::vector<std::pair<int, int>> critical_point_sides;  // chain indices met at each critical point
    double eta_agreement = 0.0;
    bool chain_ok = false;
    std::vector<std::string> notes;

    int label_at(int col, int row) const { return labels[static_cast<std::size_t>(row) * window.resolution + col]; }
    // Label of the pixel containing z, or the dominant label around it on the limit set.
    int label_near(cplx z, int radius = 1) const;
};

// AmbiguousComponents when the critical values do not lie in the unbounded component.
ComponentMap classify_regular_set(const CorrespondenceInstance& inst, const OrbitCloud& cloud,
                                  RasterWindow window, const ClassifyOptions& options = {});

struct CurveOptions {
    std::size_t samples_per_segment = 2000;
    std::size_t univalence_samples = 10000;
    double inward_offset = 1e-3;
    int seed_grid = 160;
};

struct FundamentalCurve {
    std::vector<cplx> curve;    // closed, counterclockwise, last point not repeated
    std::vector<cplx> anchors;  // -1, beta, critical points, 1, ..., 1/beta
    std::vector<std::string> segment_shapes;  // "arc", "chord" or "bent" for each edge of the half curve
    double eta_defect = 0.0;    // max distance of 1/z from the curve over samples
    int winding_about_zero = 0;
    int image_winding = 0;      // winding of R(curve) about R(0)
    std::size_t self_intersections = 0;
    double min_image_separation = 0.0;
    bool univalent = false;
    std::vector<cplx> seeds;    // grid points inside the curve
    std::vector<std::string> notes;
};

FundamentalCurve fundamental_curve(const CorrespondenceInstance& inst, const ComponentMap& map,
                                   const CurveOptions& options = {});

bool inside_curve(const FundamentalCurve& fc, cplx z, double boundary_tol = 1e-6);

// F(x) = R(1/z) with z the preimage of x in the closed domain; nullopt if none found.
std::optional<cplx> evaluate_F(const CorrespondenceInstance& inst, const FundamentalCurve& fc, cplx x);

// Binary PPM of the component map with the limit set, the curve and critical points drawn.
std::string render_ppm(const ComponentMap& map, const LimitRaster* raster, const FundamentalCurve* curve,
                       const CorrespondenceInstance* inst);

}  // namespace corrmate

namespace corrmate {

struct PhysicalOptions {
    double classify_dedupe = 1e-4;
    std::size_t classify_cap = 2000000;
    int classify_depth = 64;
    RasterWindow window{};
    unsigned seed = 1;
};

struct PhysicalCheck {
    bool physical = false;
    bool bounded = false;
    bool chain_ok = false;
    double max_modulus = 0.0;
    std::string reason;
};

// A validated variety point is kept as physical when its grand orbit stays
// bounded and the regular set shows the expected component chain.
PhysicalCheck check_physical(const ReducedFamilyParams& params, const PhysicalOptions& options = {});

// The saturated low-resolution orbit used for classification.
OrbitCloud classification_cloud(const CorrespondenceInstance& inst, const PhysicalOptions& options = {});

}  // namespace corrmate
