#pragma once

#include <string>
#include <vector>

#include "corrmate/circle_map.hpp"
#include "corrmate/moebius.hpp"

namespace corrmate {

struct CircleArcPiece {
    double start;   // radians, in [0, 2pi)
    double length;  // counterclockwise extent, > 0
    MobiusMap branch;
    std::string label;

    double end() const { return start + length; }
};

// Convenience: piece on the counterclockwise arc from `from` to `to`.
CircleArcPiece arc_piece(double from, double to, const MobiusMap& branch, std::string label = {});

class PiecewiseMoebiusMap : public CircleMap {
public:
    // Validates the partition and the branches. With allow_jumps false the
    // branches must agree at shared endpoints within 1e-10.
    explicit PiecewiseMoebiusMap(std::vector<CircleArcPiece> pieces, bool allow_jumps = false);

    const std::vector<CircleArcPiece>& pieces() const { return pieces_; }
    bool allow_jumps() const { return allow_jumps_; }
    const std::vector<double>& jump_points() const { return jumps_; }

    std::size_t piece_index(double theta, Side side = Side::ccw) const;

    std::vector<double> breakpoints() const override;
    double evaluate(double theta, Side side = Side::ccw) const override;
    double derivative(double theta, Side side = Side::ccw) const override;
    std::vector<double> preimages(double phi) const override;

private:
    std::vector<CircleArcPiece> pieces_;
    bool allow_jumps_;
    std::vector<double> jumps_;
};

// Merges neighbouring pieces whose branches coincide (distance < 1e-10).
PiecewiseMoebiusMap minimalize(const PiecewiseMoebiusMap& map, double tol = 1e-10);

struct ExtensionRegion {
    std::size_t piece;       // index into the map's pieces
    std::size_t geodesic;    // index of the bounding geodesic
    double arc_start;
    double arc_length;
    MobiusMap branch;
};

struct CanonicalExtensionData {
    std::vector<GeodesicArc> geodesics;
    std::vector<ExtensionRegion> regions;
    IdealPolygon fundamental_polygon;
};

// Uses the pieces exactly as given: the polygon has one vertex per piece
// endpoint. Requires a continuous map with at least three pieces.
CanonicalExtensionData canonical_extension(const PiecewiseMoebiusMap& map);

}  // namespace corrmate
