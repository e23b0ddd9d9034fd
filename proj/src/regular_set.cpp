#include "corrmate/regular_set.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "corrmate/error.hpp"
#include "corrmate/parallel.hpp"

namespace corrmate {

std::optional<std::pair<int, int>> RasterWindow::pixel(cplx z) const {
    double x = (z.real() - (center.real() - half_width)) / (2.0 * half_width) * resolution;
    double y = ((center.imag() + half_width) - z.imag()) / (2.0 * half_width) * resolution;
    if (!(x >= 0.0 && y >= 0.0 && x < resolution && y < resolution)) return std::nullopt;
    return std::make_pair(static_cast<int>(x), static_cast<int>(y));
}

cplx RasterWindow::pixel_center(int col, int row) const {
    double s = pixel_size();
    return {center.real() - half_width + (col + 0.5) * s, center.imag() + half_width - (row + 0.5) * s};
}

LimitRaster rasterize(const OrbitCloud& cloud, const RasterWindow& window) {
    LimitRaster r{window, std::vector<std::uint8_t>(static_cast<std::size_t>(window.resolution) * window.resolution, 0)};
    for (const auto& p : cloud.points) {
        if (p.z.infinite) continue;
        if (auto px = window.pixel(p.z.value))
            r.mask[static_cast<std::size_t>(px->second) * window.resolution + px->first] = 1;
    }
    return r;
}

SymmetryDefect eta_symmetry_defect(const OrbitCloud& cloud, const RasterWindow& window) {
    LimitRaster a = rasterize(cloud, window);
    OrbitCloud mirrored;
    mirrored.points.reserve(cloud.points.size());
    for (const auto& p : cloud.points) mirrored.points.push_back({eta(p.z), p.generation, p.parent, p.direction});
    LimitRaster b = rasterize(mirrored, window);
    SymmetryDefect d;
    std::size_t either = 0;
    for (std::size_t i = 0; i < a.mask.size(); ++i) {
        if (a.mask[i] != b.mask[i]) ++d.differing;
        if (a.mask[i]) ++d.limit_pixels;
        if (a.mask[i] || b.mask[i]) ++either;
    }
    d.fraction_of_raster = static_cast<double>(d.differing) / static_cast<double>(a.mask.size());
    d.fraction_of_limit = either ? static_cast<double>(d.differing) / static_cast<double>(either) : 0.0;
    return d;
}

int ComponentMap::label_near(cplx z, int radius) const {
    auto px = window.pixel(z);
    if (!px) return -1;
    int here = label_at(px->first, px->second);
    if (here >= 0) return here;
    std::map<int, int> votes;
    int res = window.resolution;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            int c = px->first + dx, r = px->second + dy;
            if (c < 0 || r < 0 || c >= res || r >= res) continue;
            int l = label_at(c, r);
            if (l >= 0) ++votes[l];
        }
    int best = -1, count = 0;
    for (auto [l, v] : votes)
        if (v > count) best = l, count = v;
    return best;
}

namespace {

std::set<int> labels_around(const ComponentMap& m, cplx z, int radius) {
    std::set<int> out;
    auto px = m.window.pixel(z);
    if (!px) return out;
    int res = m.window.resolution;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            int c = px->first + dx, r = px->second + dy;
            if (c < 0 || r < 0 || c >= res || r >= res) continue;
            int l = m.label_at(c, r);
            if (l >= 0) out.insert(l);
        }
    return out;
}

}  // namespace

ComponentMap classify_regular_set(const CorrespondenceInstance& inst, const OrbitCloud& cloud, RasterWindow window,
                                  const ClassifyOptions& opt) {
    ComponentMap m;
    std::vector<cplx> must_see = inst.critical_values;
    must_see.insert(must_see.end(), inst.critical_points.begin(), inst.critical_points.end());
    must_see.push_back(inst.beta);
    must_see.push_back(1.0 / inst.beta);
    double needed = 0.0;
    for (cplx z : must_see)
        needed = std::max({needed, std::abs(z.real() - window.center.real()), std::abs(z.imag() - window.center.imag())});
    if (needed > 0.9 * window.half_width) {
        window.half_width = needed / 0.9;
        m.notes.push_back("window enlarged to half width " + std::to_string(window.half_width));
    }
    m.window = window;
    const int res = window.resolution;
    LimitRaster raster = rasterize(cloud, window);
    m.labels.assign(raster.mask.size(), -2);
    for (std::size_t i = 0; i < raster.mask.size(); ++i)
        if (raster.mask[i]) m.labels[i] = -1;

    int next = 0;
    std::deque<int> queue;
    for (int start = 0; start < res * res; ++start) {
        if (m.labels[start] != -2) continue;
        ComponentInfo info;
        info.label = next;
        m.labels[start] = next;
        queue.push_back(start);
        while (!queue.empty()) {
            int idx = queue.front();
            queue.pop_front();
            ++info.pixels;
            int c = idx % res, r = idx / res;
            const int nb[4][2] = {{c - 1, r}, {c + 1, r}, {c, r - 1}, {c, r + 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= res || q[1] >= res) continue;
                int j = q[1] * res + q[0];
                if (m.labels[j] == -2) {
                    m.labels[j] = next;
                    queue.push_back(j);
                }
            }
        }
        m.components.push_back(info);
        ++next;
    }

    std::map<int, std::size_t> border;
    for (int k = 0; k < res; ++k)
        for (int idx : {k, (res - 1) * res + k, k * res, k * res + res - 1})
            if (m.labels[idx] >= 0) ++border[m.labels[idx]];
    std::size_t best = 0;
    for (auto [l, count] : border)
        if (count > best) best = count, m.outer = l;
    if (border.size() > 1) m.notes.push_back("several components reach the raster border");
    if (m.outer < 0) throw AmbiguousComponents("no unbounded component on the raster");
    m.components[m.outer].role = "T1";
    m.components[m.outer].chain_index = 0;

    for (cplx v : inst.critical_values) {
        int l = m.label_near(v, 2);
        if (l != m.outer)
            throw AmbiguousComponents("critical value " + std::to_string(v.real()) + "+" + std::to_string(v.imag()) +
                                      "i is not in the unbounded component");
    }

    std::size_t k = m.components.size();
    m.adjacency.assign(k, std::vector<std::size_t>(k, 0));
    int rad = opt.adjacency_radius;
    for (int r = 0; r < res; ++r)
        for (int c = 0; c < res; ++c) {
            if (m.label_at(c, r) != -1) continue;
            std::set<int> near;
            for (int dy = -rad; dy <= rad; ++dy)
                for (int dx = -rad; dx <= rad; ++dx) {
                    int cc = c + dx, rr = r + dy;
                    if (cc < 0 || rr < 0 || cc >= res || rr >= res) continue;
                    int l = m.label_at(cc, rr);
                    if (l >= 0) near.insert(l);
                }
            for (auto a = near.begin(); a != near.end(); ++a)
                for (auto b = std::next(a); b != near.end(); ++b) {
                    ++m.adjacency[*a][*b];
                    ++m.adjacency[*b][*a];
                }
        }

    std::vector<int> bounded;
    for (const auto& ci : m.components) {
        if (ci.label == m.outer) continue;
        if (ci.pixels >= opt.min_component_pixels) bounded.push_back(ci.label);
        else m.components[ci.label].role = "minor";
    }
    auto adjacent = [&](int a, int b) { return m.adjacency[a][b] >= opt.min_adjacency_witnesses; };
    auto beta_distance = [&](int label) {
        double d = std::numeric_limits<double>::infinity();
        for (int r = 0; r < res; ++r)
            for (int c = 0; c < res; ++c)
                if (m.label_at(c, r) == label) d = std::min(d, std::abs(window.pixel_center(c, r) - inst.beta));
        return d;
    };

    const int n = inst.params.n;
    bool path = true;
    std::vector<int> ends;
    for (int a : bounded) {
        int deg = 0;
        for (int b : bounded)
            if (a != b && adjacent(a, b)) ++deg;
        if (deg == 1) ends.push_back(a);
        else if (deg != 2) path = false;
    }
    if (ends.size() != 2) path = false;
    if (path) {
        int start = beta_distance(ends[0]) <= beta_distance(ends[1]) ? ends[0] : ends[1];
        std::vector<int> order{start};
        int prev = -1, cur = start;
        while (true) {
            int nxt = -1;
            for (int b : bounded)
                if (b != cur && b != prev && adjacent(cur, b)) nxt = b;
            if (nxt < 0) break;
            order.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        path = order.size() == bounded.size();
        m.chain = order;
    }
    if (!path) {
        m.notes.push_back("bounded components do not form a chain");
        m.chain = bounded;
        std::sort(m.chain.begin(), m.chain.end(),
                  [&](int a, int b) { return beta_distance(a) < beta_distance(b); });
    }
    for (std::size_t j = 0; j < m.chain.size(); ++j) {
        m.components[m.chain[j]].chain_index = static_cast<int>(j) + 1;
        m.components[m.chain[j]].role = "U" + std::to_string(j + 1);
    }
    bool count_ok = static_cast<int>(m.chain.size()) == 2 * n;
    if (!count_ok)
        m.notes.push_back("found " + std::to_string(m.chain.size()) + " bounded components, expected " +
                          std::to_string(2 * n));

    m.eta_agreement = count_ok ? 1.0 : 0.0;
    if (count_ok) {
        std::vector<std::size_t> total(m.chain.size(), 0), agree(m.chain.size(), 0);
        for (int r = 0; r < res; ++r)
            for (int c = 0; c < res; ++c) {
                int l = m.label_at(c, r);
                if (l < 0) continue;
                int j = m.components[l].chain_index;
                if (j < 1) continue;
                cplx z = window.pixel_center(c, r);
                if (std::abs(z) < 1e-12 || !window.pixel(1.0 / z)) continue;
                ++total[j - 1];
                if (labels_around(m, 1.0 / z, 1).count(m.chain[2 * n - j])) ++agree[j - 1];
            }
        for (std::size_t j = 0; j < m.chain.size(); ++j)
            if (total[j]) m.eta_agreement = std::min(m.eta_agreement, double(agree[j]) / double(total[j]));
    }

    bool critical_ok = true;
    for (cplx c : inst.critical_points) {
        std::vector<int> idx;
        for (int l : labels_around(m, c, 3))
            if (m.components[l].chain_index >= 1) idx.push_back(m.components[l].chain_index);
        std::sort(idx.begin(), idx.end());
        if (idx.size() == 2 && idx[1] == idx[0] + 1) {
            m.critical_point_sides.emplace_back(idx[0], idx[1]);
        } else {
            m.critical_point_sides.emplace_back(-1, -1);
            critical_ok = false;
        }
    }
    if (!critical_ok) m.notes.push_back("some critical point is not at the meeting point of consecutive components");
    if (m.eta_agreement < opt.eta_agreement_threshold) m.notes.push_back("1/z does not swap U_j and U_(2n+1-j)");
    m.chain_ok = count_ok && path && critical_ok && m.eta_agreement >= opt.eta_agreement_threshold;
    return m;
}

namespace {

bool segment_clear(const ComponentMap& m, cplx a, cplx b, int label, int margin, double skip_a, double skip_b) {
    double px = m.window.pixel_size();
    double len = std::abs(b - a);
    int steps = std::max(50, static_cast<int>(4.0 * len / px));
    int res = m.window.resolution;
    for (int s = 0; s <= steps; ++s) {
        double t = double(s) / steps;
        if (t * len < skip_a || (1.0 - t) * len < skip_b) continue;
        auto p = m.window.pixel(a + t * (b - a));
        if (!p) return false;
        for (int dy = -margin; dy <= margin; ++dy)
            for (int dx = -margin; dx <= margin; ++dx) {
                int c = p->first + dx, r = p->second + dy;
                if (c < 0 || r < 0 || c >= res || r >= res) return false;
                if (m.label_at(c, r) != label) return false;
            }
    }
    return true;
}

void append_segment(std::vector<cplx>& out, cplx a, cplx b, std::size_t samples) {
    for (std::size_t k = 0; k < samples; ++k) out.push_back(a + (double(k) / samples) * (b - a));
}

int winding_number(const std::vector<cplx>& pts, cplx about) {
    double total = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        cplx a = pts[k] - about, b = pts[(k + 1) % pts.size()] - about;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
    double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double distance_to_segment(cplx z, cplx a, cplx b) {
    cplx ab = b - a;
    double t = std::norm(ab) > 0 ? std::clamp(((z - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0) : 0.0;
    return std::abs(z - (a + t * ab));
}

double distance_to_curve(const std::vector<cplx>& curve, cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < curve.size(); ++k)
        d = std::min(d, distance_to_segment(z, curve[k], curve[(k + 1) % curve.size()]));
    return d;
}

bool crossing_inside(const std::vector<cplx>& poly, cplx z) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        cplx a = poly[i], b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            double x = a.real() + (z.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
            if (z.real() < x) in = !in;
        }
    }
    return in;
}

}  // namespace

namespace {

struct SegmentShape {
    std::string name;
    std::vector<cplx> points;  // from a, excluding b
};

std::vector<cplx> sample_arc(cplx a, cplx b, std::size_t samples) {
    double t0 = std::arg(a), t1 = t0 + wrap_angle(std::arg(b) - t0 + kPi) - kPi;
    std::vector<cplx> out;
    for (std::size_t k = 0; k < samples; ++k) out.push_back(std::polar(1.0, t0 + (t1 - t0) * double(k) / samples));
    return out;
}

bool polyline_clear(const ComponentMap& m, const std::vector<cplx>& pts, cplx b, int label, int margin, double skip) {
    cplx a = pts.front();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        cplx p = pts[k], q = k + 1 < pts.size() ? pts[k + 1] : b;
        double sa = std::max(0.0, skip - std::abs(p - a)), sb = std::max(0.0, skip - std::abs(q - b));
        if (!segment_clear(m, p, q, label, margin, sa, sb)) return false;
    }
    return true;
}

// Valid shapes for one edge of the half curve, best first.
std::vector<SegmentShape> segment_candidates(const ComponentMap& m, cplx a, cplx b, int label, std::size_t samples) {
    std::vector<SegmentShape> out;
    double skip = 4.0 * m.window.pixel_size();
    if (std::abs(std::abs(a) - 1.0) < 1e-6 && std::abs(std::abs(b) - 1.0) < 1e-6) {
        SegmentShape arc{"arc", sample_arc(a, b, samples)};
        std::vector<cplx> coarse;
        for (std::size_t k = 0; k < samples; k += std::max<std::size_t>(1, samples / 200)) coarse.push_back(arc.points[k]);
        if (polyline_clear(m, coarse, b, label, 0, skip)) out.push_back(arc);
    }
    if (segment_clear(m, a, b, label, 0, skip, skip)) {
        SegmentShape chord{"chord", {}};
        append_segment(chord.points, a, b, samples);
        out.push_back(chord);
    }
    cplx dir = (b - a) / std::abs(b - a);
    for (double f : {0.05, 0.1, 0.2, 0.35, 0.5, 0.75}) {
        for (double sign : {1.0, -1.0}) {
            cplx mid = 0.5 * (a + b) + sign * f * std::abs(b - a) * cplx(0, 1) * dir;
            if (segment_clear(m, a, mid, label, 2, 2 * skip, 0) && segment_clear(m, mid, b, label, 2, 0, 2 * skip)) {
                SegmentShape bent{"bent", {}};
                append_segment(bent.points, a, mid, samples / 2);
                append_segment(bent.points, mid, b, samples / 2);
                out.push_back(bent);
                return out;
            }
        }
    }
    return out;
}

void assess_curve(const CorrespondenceInstance& inst, FundamentalCurve& fc, const CurveOptions& opt) {
    fc.winding_about_zero = winding_number(fc.curve, 0.0);
    if (fc.winding_about_zero < 0) {
        std::reverse(fc.curve.begin(), fc.curve.end());
        fc.winding_about_zero = -fc.winding_about_zero;
    }

    std::vector<cplx> image(fc.curve.size());
    for (std::size_t k = 0; k < fc.curve.size(); ++k) image[k] = inst.r.evaluate(fc.curve[k]);
    fc.image_winding = winding_number(image, inst.r.evaluate(0.0));

    // inward offsets, sampled by arclength away from the corners
    std::vector<double> arc(fc.curve.size() + 1, 0.0);
    for (std::size_t k = 0; k < fc.curve.size(); ++k)
        arc[k + 1] = arc[k] + std::abs(fc.curve[(k + 1) % fc.curve.size()] - fc.curve[k]);
    double total = arc.back();
    double delta = opt.inward_offset;
    std::vector<cplx> offset_image;
    std::size_t seg = 0;
    for (std::size_t s = 0; s < opt.univalence_samples; ++s) {
        double t = total * (s + 0.5) / opt.univalence_samples;
        while (arc[seg + 1] < t) ++seg;
        cplx a = fc.curve[seg], b = fc.curve[(seg + 1) % fc.curve.size()];
        cplx z = a + (t - arc[seg]) / (arc[seg + 1] - arc[seg]) * (b - a);
        bool corner = false;
        for (cplx c : fc.anchors)
            if (std::abs(z - c) < 3.0 * delta) corner = true;
        if (corner) continue;
        cplx inward = cplx(0, 1) * (b - a) / std::abs(b - a);
        offset_image.push_back(inst.r.evaluate(z + delta * inward));
    }
    const std::size_t q = offset_image.size();
    std::atomic<std::size_t> crossings{0};
    std::vector<double> sep(q, std::numeric_limits<double>::infinity());
    parallel_for(q, [&](std::size_t i) {
        std::size_t local = 0;
        for (std::size_t j = i + 2; j < q; ++j) {
            if (i == 0 && j == q - 1) continue;
            sep[i] = std::min(sep[i], std::abs(offset_image[i] - offset_image[j]));
            if (segments_cross(offset_image[i], offset_image[(i + 1) % q], offset_image[j], offset_image[(j + 1) % q]))
                ++local;
        }
        crossings += local;
    });
    fc.self_intersections = crossings;
    fc.min_image_separation = q ? *std::min_element(sep.begin(), sep.end()) : 0.0;
    fc.univalent = fc.winding_about_zero == 1 && fc.image_winding == 1 && fc.self_intersections == 0 &&
                   fc.min_image_separation > 0.0;
}

}  // namespace

FundamentalCurve fundamental_curve(const CorrespondenceInstance& inst, const ComponentMap& m,
                                   const CurveOptions& opt) {
    const int n = inst.params.n;
    if (static_cast<int>(m.chain.size()) != 2 * n)
        throw AmbiguousComponents("component chain has the wrong length for a fundamental curve");

    // p_j joins U_j and U_{j+1}; p_n is 1.
    std::vector<cplx> half{cplx(-1.0), inst.beta};
    for (int j = 1; j <= n; ++j) {
        std::optional<cplx> p;
        for (std::size_t i = 0; i < inst.critical_points.size(); ++i)
            if (m.critical_point_sides[i] == std::make_pair(j, j + 1)) p = inst.critical_points[i];
        if (!p) throw AmbiguousComponents("no critical point between U" + std::to_string(j) + " and U" + std::to_string(j + 1));
        half.push_back(*p);
    }

    std::vector<std::string> notes;
    if (std::abs(half.back() - 1.0) > 1e-6) notes.push_back("the middle critical point is not 1");
    std::vector<std::vector<SegmentShape>> options;
    for (std::size_t s = 0; s + 1 < half.size(); ++s) {
        int label = s == 0 ? m.outer : m.chain[s - 1];
        auto cands = segment_candidates(m, half[s], half[s + 1], label, opt.samples_per_segment);
        if (cands.empty()) {
            notes.push_back("segment " + std::to_string(s) + " could not be validated in its component");
            SegmentShape chord{"chord", {}};
            append_segment(chord.points, half[s], half[s + 1], opt.samples_per_segment);
            cands.push_back(chord);
        }
        if (cands.size() > 2) cands.resize(2);
        options.push_back(std::move(cands));
    }

    std::vector<cplx> anchors = half;
    for (std::size_t k = half.size() - 1; k-- > 1;) anchors.push_back(1.0 / half[k]);

    std::size_t combos = 1;
    for (const auto& o : options) combos *= o.size();
    FundamentalCurve best;
    for (std::size_t code = 0; code < combos; ++code) {
        FundamentalCurve fc;
        fc.anchors = anchors;
        fc.notes = notes;
        std::vector<cplx> path;
        std::size_t rest = code;
        for (const auto& o : options) {
            const SegmentShape& shape = o[rest % o.size()];
            rest /= o.size();
            fc.segment_shapes.push_back(shape.name);
            path.insert(path.end(), shape.points.begin(), shape.points.end());
        }
        path.push_back(half.back());
        fc.curve = path;
        for (std::size_t k = path.size() - 1; k-- > 1;) fc.curve.push_back(1.0 / path[k]);
        assess_curve(inst, fc, opt);
        if (code == 0 || fc.univalent) best = std::move(fc);
        if (best.univalent) break;
    }
    FundamentalCurve& fc = best;
    if (fc.winding_about_zero != 1) fc.notes.push_back("the curve does not wind once around 0");
    if (!fc.univalent) fc.notes.push_back("univalence check failed");

    std::size_t stride = std::max<std::size_t>(1, fc.curve.size() / 200);
    for (std::size_t k = 0; k < fc.curve.size(); k += stride)
        fc.eta_defect = std::max(fc.eta_defect, distance_to_curve(fc.curve, 1.0 / fc.curve[k]));

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (cplx z : fc.curve) {
        xmin = std::min(xmin, z.real()), xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag()), ymax = std::max(ymax, z.imag());
    }
    for (int i = 0; i <= opt.seed_grid; ++i)
        for (int j = 0; j <= opt.seed_grid; ++j) {
            cplx z(xmin + (xmax - xmin) * i / opt.seed_grid, ymin + (ymax - ymin) * j / opt.seed_grid);
            if (crossing_inside(fc.curve, z)) fc.seeds.push_back(z);
        }
    for (cplx c : fc.anchors) fc.seeds.push_back(c);
    return fc;
}

bool inside_curve(const FundamentalCurve& fc, cplx z, double tol) {
    return crossing_inside(fc.curve, z) || distance_to_curve(fc.curve, z) <= tol;
}

std::optional<cplx> evaluate_F(const CorrespondenceInstance& inst, const FundamentalCurve& fc, cplx x) {
    std::vector<std::pair<double, cplx>> ranked;
    ranked.reserve(fc.seeds.size());
    for (cplx s : fc.seeds) ranked.emplace_back(std::abs(inst.r.evaluate(s) - x), s);
    std::size_t keep = std::min<std::size_t>(12, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
    std::optional<cplx> best;
    double best_res = std::numeric_limits<double>::infinity();
    double scale = std::max(1.0, std::abs(x));
    for (std::size_t k = 0; k < keep; ++k) {
        cplx z = ranked[k].second;
        double res = ranked[k].first;
        for (int it = 0; it < 200 && res > 1e-15 * scale; ++it) {
            cplx d = inst.dr.evaluate(z);
            if (d == cplx(0.0)) break;
            cplx step = (inst.r.evaluate(z) - x) / d;
            if (std::abs(step) > 0.25) step *= 0.25 / std::abs(step);
            z -= step;
            res = std::abs(inst.r.evaluate(z) - x);
            if (std::abs(step) < 1e-17) break;
        }
        if (res < best_res && res < 1e-9 * scale && inside_curve(fc, z)) {
            best_res = res;
            best = z;
        }
    }
    if (!best || std::abs(*best) < 1e-300) return std::nullopt;
    return inst.r.evaluate(1.0 / *best);
}

std::string render_ppm(const ComponentMap& m, const LimitRaster* raster, const FundamentalCurve* curve,
                       const CorrespondenceInstance* inst) {
    const int res = m.window.resolution;
    static const unsigned char palette[][3] = {{230, 90, 70},  {80, 160, 230}, {120, 200, 90}, {240, 190, 60},
                                               {170, 110, 220}, {60, 200, 190}, {230, 130, 180}, {150, 150, 80}};
    std::vector<unsigned char> rgb(static_cast<std::size_t>(res) * res * 3, 0);
    auto put = [&](int c, int r, unsigned char R, unsigned char G, unsigned char B) {
        if (c < 0 || r < 0 || c >= res || r >= res) return;
        std::size_t i = (static_cast<std::size_t>(r) * res + c) * 3;
        rgb[i] = R, rgb[i + 1] = G, rgb[i + 2] = B;
    };
    for (int r = 0; r < res; ++r)
        for (int c = 0; c < res; ++c) {
            int l = m.label_at(c, r);
            if (l < 0) continue;
            const ComponentInfo& ci = m.components[l];
            if (ci.chain_index == 0) put(c, r, 225, 225, 225);
            else if (ci.chain_index > 0) {
                const auto& p = palette[(ci.chain_index - 1) % 8];
                put(c, r, p[0], p[1], p[2]);
            } else put(c, r, 110, 110, 110);
        }
    if (raster)
        for (int r = 0; r < res; ++r)
            for (int c = 0; c < res; ++c)
                if (raster->at(c, r)) put(c, r, 0, 0, 0);
    if (curve)
        for (cplx z : curve->curve)
            if (auto p = m.window.pixel(z)) put(p->first, p->second, 200, 0, 0);
    if (inst) {
        auto mark = [&](cplx z, unsigned char R, unsigned char G, unsigned char B) {
            if (auto p = m.window.pixel(z))
                for (int dy = -2; dy <= 2; ++dy)
                    for (int dx = -2; dx <= 2; ++dx) put(p->first + dx, p->second + dy, R, G, B);
        };
        for (cplx c : inst->critical_points) mark(c, 0, 0, 200);
        for (cplx v : inst->critical_values) mark(v, 0, 120, 200);
        mark(inst->beta, 0, 150, 0);
        mark(1.0 / inst->beta, 0, 150, 0);
    }
    std::string out = "P6\n" + std::to_string(res) + " " + std::to_string(res) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    return out;
}

}  // namespace corrmate

namespace corrmate {

OrbitCloud classification_cloud(const CorrespondenceInstance& inst, const PhysicalOptions& opt) {
    OrbitOptions oo;
    oo.dedupe_resolution = opt.classify_dedupe;
    oo.cap = opt.classify_cap;
    oo.depth = opt.classify_depth;
    return grand_orbit(inst, oo);
}

PhysicalCheck check_physical(const ReducedFamilyParams& params, const PhysicalOptions& opt) {
    PhysicalCheck pc;
    try {
        CorrespondenceInstance inst = make_instance(params, opt.seed);
        OrbitCloud cloud = classification_cloud(inst, opt);
        for (const auto& p : cloud.points)
            if (!p.z.infinite) pc.max_modulus = std::max(pc.max_modulus, std::abs(p.z.value));
        pc.bounded = pc.max_modulus < 1e6;
        ComponentMap m = classify_regular_set(inst, cloud, opt.window);
        pc.chain_ok = m.chain_ok;
        if (!m.chain_ok && !m.notes.empty()) pc.reason = m.notes.back();
    } catch (const Error& e) {
        pc.reason = e.what();
    }
    pc.physical = pc.bounded && pc.chain_ok;
    if (!pc.bounded && pc.reason.empty()) pc.reason = "grand orbit is unbounded";
    return pc;
}

}  // namespace corrmate
