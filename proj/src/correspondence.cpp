#include "corrmate/correspondence.hpp"

#include <cmath>
#include <unordered_set>

#include "corrmate/error.hpp"
#include "corrmate/parallel.hpp"

namespace corrmate {

CorrespondenceInstance make_instance(const ReducedFamilyParams& params, unsigned seed) {
    CorrespondenceInstance inst;
    inst.params = params;
    inst.seed = seed;
    inst.r = reduced_polynomial(params);
    inst.dr = inst.r.derivative();
    BetaData bd = find_beta(inst.r, 1e-6, seed);
    inst.beta = bd.beta;
    inst.critical_points.push_back(bd.pairing.fixed_critical_point);
    for (const auto& [c, partner] : bd.pairing.pairs) {
        inst.critical_points.push_back(c);
        inst.critical_points.push_back(partner);
    }
    for (cplx c : inst.critical_points) inst.critical_values.push_back(inst.r.evaluate(c));
    return inst;
}

namespace {

// Roots of (R(w) - R(t)) / (w - t).
std::vector<cplx> fibre(const CorrespondenceInstance& inst, cplx t) {
    ComplexPolynomial shifted = inst.r - ComplexPolynomial({inst.r.evaluate(t)});
    ComplexPolynomial s = divide_linear(shifted, t).quotient;
    RootOptions ro;
    ro.seed = inst.seed;
    RootResult rr = find_roots(s, ro);
    if (!rr.converged) throw RootSolverStall("correspondence fibre did not converge");
    return rr.roots;
}

}  // namespace

std::vector<ComplexPoint> correspondence_step(const CorrespondenceInstance& inst, const ComplexPoint& u,
                                              Direction direction) {
    int branches = inst.branch_count();
    std::vector<ComplexPoint> out;
    if (direction == Direction::forward) {
        ComplexPoint t = eta(u);
        if (t.infinite) return std::vector<ComplexPoint>(branches, ComplexPoint::infinity());
        for (cplx w : fibre(inst, t.value)) out.emplace_back(w);
    } else {
        if (u.infinite) return std::vector<ComplexPoint>(branches, ComplexPoint(0.0));
        for (cplx w : fibre(inst, u.value)) out.push_back(eta(ComplexPoint(w)));
    }
    return out;
}

namespace {

struct CellKey {
    long long x, y;
    bool operator==(const CellKey& o) const { return x == o.x && y == o.y; }
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        return std::hash<long long>()(k.x * 0x9E3779B97F4A7C15LL ^ (k.y + 0x632BE59BD9B4E019LL));
    }
};

}  // namespace

OrbitCloud grand_orbit(const CorrespondenceInstance& inst, const OrbitOptions& opt) {
    OrbitCloud cloud;
    cloud.seed = opt.seed;
    cloud.dedupe_resolution = opt.dedupe_resolution;
    std::unordered_set<CellKey, CellHash> seen;
    bool infinity_seen = false;
    auto insert = [&](const ComplexPoint& z) {
        if (z.infinite) {
            if (infinity_seen) return false;
            infinity_seen = true;
            return true;
        }
        CellKey key{static_cast<long long>(std::floor(z.value.real() / opt.dedupe_resolution)),
                    static_cast<long long>(std::floor(z.value.imag() / opt.dedupe_resolution))};
        return seen.insert(key).second;
    };
    insert(opt.seed);
    cloud.points.push_back({opt.seed, 0, -1, Direction::forward});
    std::size_t begin = 0;
    for (int gen = 1; gen <= opt.depth; ++gen) {
        std::size_t end = cloud.points.size();
        std::vector<std::vector<OrbitPoint>> children(end - begin);
        parallel_for(end - begin, [&](std::size_t i) {
            const OrbitPoint& p = cloud.points[begin + i];
            for (Direction dir : {Direction::forward, Direction::backward})
                for (const ComplexPoint& c : correspondence_step(inst, p.z, dir))
                    children[i].push_back({c, gen, static_cast<long>(begin + i), dir});
        });
        std::size_t added = 0;
        for (auto& group : children) {
            for (auto& c : group) {
                if (cloud.points.size() >= opt.cap) {
                    cloud.cap_exceeded = true;
                    break;
                }
                if (insert(c.z)) {
                    cloud.points.push_back(c);
                    ++added;
                }
            }
            if (cloud.cap_exceeded) break;
        }
        cloud.generations = gen;
        if (cloud.cap_exceeded) break;
        if (added == 0) {
            cloud.saturated = true;
            break;
        }
        begin = end;
    }
    return cloud;
}

double relation_residual(const CorrespondenceInstance& inst, const OrbitCloud& cloud, std::size_t index) {
    const OrbitPoint& p = cloud.points[index];
    if (p.parent < 0) return 0.0;
    const ComplexPoint& parent = cloud.points[p.parent].z;
    // forward: R(child) = R(1/parent); backward: R(1/child) = R(parent)
    ComplexPoint lhs = p.direction == Direction::forward ? p.z : eta(p.z);
    ComplexPoint rhs = p.direction == Direction::forward ? eta(parent) : parent;
    if (lhs.infinite || rhs.infinite) return (lhs.infinite && rhs.infinite) ? 0.0 : 1e300;
    cplx target = inst.r.evaluate(rhs.value);
    return std::abs(inst.r.evaluate(lhs.value) - target) / std::max(1.0, std::abs(target));
}

}  // namespace corrmate
