#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrmate/circle_map.hpp"
#include "corrmate/mateability.hpp"
#include "corrmate/moebius.hpp"
#include "corrmate/piecewise_map.hpp"

namespace corrmate {

struct LabeledGenerator {
    std::string label;
    MobiusMap map;
    int side_from;  // polygon side mapped by the generator ...
    int side_to;    // ... onto this side
};

struct GroupData {
    std::vector<LabeledGenerator> generators;
    IdealPolygon fundamental_polygon;
    std::optional<MobiusMap> rotation_symmetry;
};

// Largest endpoint error of the side pairings; InvalidMap above `tol`.
double validate_group(const GroupData& group, double tol = 1e-9);

struct BowenSeriesData {
    GroupData group;            // generators sigma_1..sigma_d
    PiecewiseMoebiusMap map;
    std::vector<double> cycle_defects;  // |tr^2 - 4| of every vertex-cycle transformation
};

// Punctured sphere with d+1 punctures on the regular ideal 2d-gon.
BowenSeriesData build_punctured_sphere_bs(int d);

struct HigherBowenSeriesData {
    GroupData group;  // sigma_i relabelled so that sigma_i maps i_- to i
    PiecewiseMoebiusMap aux_map;
    PiecewiseMoebiusMap map;  // minimalized aux map
    InnerDomain inner;
    std::vector<double> union_polygon_angles;  // vertices of W and all sigma_i W
};

HigherBowenSeriesData build_hbs_map(int d);

// Circle map in the coordinate w = z^N induced by a rotation-symmetric cover
// map with jumps at the N-th roots of unity.
class FactorBSMap : public CircleMap {
public:
    FactorBSMap(PiecewiseMoebiusMap cover_map, int cover_degree);

    const PiecewiseMoebiusMap& cover_map() const { return cover_; }
    int cover_degree() const { return n_; }

    std::vector<double> breakpoints() const override { return {0.0}; }
    double evaluate(double phi, Side side = Side::ccw) const override;
    double derivative(double phi, Side side = Side::ccw) const override;
    std::vector<double> preimages(double phi) const override;

    // Extension to the closed disk outside the fundamental domain, via the
    // principal N-th root.
    cplx evaluate_extended(cplx w) const;
    cplx derivative_extended(cplx w) const;

private:
    PiecewiseMoebiusMap cover_;
    int n_;
};

struct HeckeData {
    GroupData group;  // involutions g_1..g_N, N = 2 n_h
    FactorBSMap factor;
};

HeckeData build_hecke_fbs(int half_order);

struct CriticalPointData {
    cplx point;
    cplx value;
    int multiplicity = 0;
    double cluster_radius = 0.0;  // spread of the candidates over all sectors
    double value_spread = 0.0;
};

CriticalPointData factor_critical_point(const HeckeData& hecke);
// sup |A(A(w)) - w| over samples of the boundary of the fundamental domain
double boundary_involution_residual(const HeckeData& hecke, int samples = 1000);
// sup over samples of the defect in cover(theta + 2pi/N) = cover(theta) + 2pi/N,
// together with the generator permutation defect
double rotation_commutation_residual(const HeckeData& hecke, int samples = 1000);

}  // namespace corrmate
