#include "corrmate/piecewise_map.hpp"

#include <algorithm>
#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

namespace {

constexpr double kSnap = 1e-12;

// Angle of a branch value; the value is expected on the unit circle.
double angle_of(cplx w) { return arg_angle(w); }

}  // namespace

CircleArcPiece arc_piece(double from, double to, const MobiusMap& branch, std::string label) {
    double len = ccw_distance(from, to);
    if (len < kSnap) len = kTwoPi;
    return {wrap_angle(from), len, branch, std::move(label)};
}

PiecewiseMoebiusMap::PiecewiseMoebiusMap(std::vector<CircleArcPiece> pieces, bool allow_jumps)
    : pieces_(std::move(pieces)), allow_jumps_(allow_jumps) {
    if (pieces_.empty()) throw InvalidMap("no pieces");
    for (auto& p : pieces_) {
        p.start = wrap_angle(p.start);
        if (!(p.length > kSnap)) throw InvalidMap("degenerate arc");
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const CircleArcPiece& a, const CircleArcPiece& b) { return a.start < b.start; });
    double total = 0.0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const CircleArcPiece& p = pieces_[k];
        const CircleArcPiece& q = pieces_[(k + 1) % pieces_.size()];
        total += p.length;
        if (circle_gap(p.start + p.length, q.start) > kSnap)
            throw InvalidMap("arcs do not partition the circle");
        for (double s : {0.0, 0.5, 1.0}) {
            cplx w = p.branch.apply(std::polar(1.0, p.start + s * p.length));
            if (std::abs(std::abs(w) - 1.0) > 1e-10) throw InvalidMap("branch leaves the unit circle");
        }
        cplx left = p.branch.apply(std::polar(1.0, p.start + p.length));
        cplx right = q.branch.apply(std::polar(1.0, q.start));
        if (std::abs(left - right) > 1e-10) {
            if (!allow_jumps_) throw InvalidMap("branches disagree at a shared endpoint");
            jumps_.push_back(q.start);
        }
    }
    if (std::abs(total - kTwoPi) > 1e-9) throw InvalidMap("arcs do not cover the circle exactly once");
    std::sort(jumps_.begin(), jumps_.end());
}

std::size_t PiecewiseMoebiusMap::piece_index(double theta, Side side) const {
    double t = wrap_angle(theta);
    std::size_t m = pieces_.size();
    for (std::size_t k = 0; k < m; ++k) {
        const CircleArcPiece& p = pieces_[k];
        double edge = side == Side::ccw ? p.start : p.start + p.length;
        if (circle_gap(edge, t) <= kSnap) return k;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (ccw_distance(pieces_[k].start, t) < pieces_[k].length) return k;
    return m - 1;
}

std::vector<double> PiecewiseMoebiusMap::breakpoints() const {
    if (pieces_.size() == 1 && !allow_jumps_) {
        // a single continuous branch: its start is only nominal
        return {pieces_[0].start};
    }
    std::vector<double> b;
    for (const auto& p : pieces_) b.push_back(p.start);
    return b;
}

double PiecewiseMoebiusMap::evaluate(double theta, Side side) const {
    const CircleArcPiece& p = pieces_[piece_index(theta, side)];
    return angle_of(p.branch.apply(std::polar(1.0, theta)));
}

double PiecewiseMoebiusMap::derivative(double theta, Side side) const {
    const CircleArcPiece& p = pieces_[piece_index(theta, side)];
    cplx z = std::polar(1.0, theta);
    cplx w = p.branch.apply(z);
    return (z * p.branch.derivative(z) / w).real();
}

std::vector<double> PiecewiseMoebiusMap::preimages(double phi) const {
    cplx w = std::polar(1.0, phi);
    std::vector<double> out;
    for (const auto& p : pieces_) {
        double t = arg_angle(p.branch.inverse().apply(w));
        double offset = ccw_distance(p.start, t);
        if (offset < p.length - kSnap) out.push_back(t);
        else if (kTwoPi - offset <= kSnap) out.push_back(p.start);
    }
    return merge_angles(out);
}

PiecewiseMoebiusMap minimalize(const PiecewiseMoebiusMap& map, double tol) {
    const auto& ps = map.pieces();
    std::size_t m = ps.size();
    auto same = [&](std::size_t a, std::size_t b) { return ps[a].branch.distance(ps[b].branch) < tol; };
    std::size_t first = m;
    for (std::size_t k = 0; k < m; ++k)
        if (!same((k + m - 1) % m, k)) {
            first = k;
            break;
        }
    if (first == m) {
        CircleArcPiece whole = ps[0];
        whole.length = kTwoPi;
        return PiecewiseMoebiusMap({whole}, map.allow_jumps());
    }
    std::vector<CircleArcPiece> merged;
    for (std::size_t s = 0; s < m; ++s) {
        std::size_t k = (first + s) % m;
        if (s > 0 && same((k + m - 1) % m, k)) merged.back().length += ps[k].length;
        else merged.push_back(ps[k]);
    }
    return PiecewiseMoebiusMap(std::move(merged), map.allow_jumps());
}

CanonicalExtensionData canonical_extension(const PiecewiseMoebiusMap& map) {
    if (map.allow_jumps() && !map.jump_points().empty())
        throw InvalidMap("canonical extension needs a continuous map");
    const auto& ps = map.pieces();
    if (ps.size() < 3) throw TooFewBreakpoints("need at least three break-points");
    CanonicalExtensionData out;
    std::vector<cplx> vertices;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        cplx a = std::polar(1.0, ps[k].start);
        cplx b = std::polar(1.0, ps[k].start + ps[k].length);
        out.geodesics.emplace_back(a, b);
        out.regions.push_back({k, k, ps[k].start, ps[k].length, ps[k].branch});
        vertices.push_back(a);
        labels.push_back("gamma_" + std::to_string(k + 1));
    }
    out.fundamental_polygon = IdealPolygon(vertices, labels);
    return out;
}

}  // namespace corrmate
