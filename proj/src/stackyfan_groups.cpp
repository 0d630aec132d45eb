#include "toricstack/stackyfan.hpp"

#include <algorithm>
#include <set>

namespace ts {

namespace {

IntMatrix free_part(const IntMatrix& m, std::size_t d) { return m.block(0, 0, d, m.cols()); }

std::vector<Rat> rat_solve(const IntMatrix& M, const IntVec& c) {
    RatInverse inv = rational_inverse(M);
    IntVec num = inv.num * c;
    std::vector<Rat> out;
    for (const Int& x : num) out.push_back(Rat(x, inv.den));
    return out;
}

}  // namespace

void require_free(const StackyFan& fan, const char* what) {
    if (!fan.free_lattice())
        throw DomainError(std::string(what) + " is unsupported for a lattice with torsion");
}

ValidationReport validate(const StackyFan& fan) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.valid = false;
        rep.failures.push_back(std::move(msg));
    };
    const std::size_t dim = fan.d + fan.r();
    for (std::size_t i = 0; i < fan.r(); ++i)
        if (fan.torsion_factors[i] < 1) fail("torsion factor " + std::to_string(i) + " is not positive");
    bool shapes_ok = true;
    for (std::size_t i = 0; i < fan.n(); ++i) {
        if (fan.rays[i].size() != dim) {
            fail("ray " + std::to_string(i) + " has length " + std::to_string(fan.rays[i].size()) +
                 ", expected " + std::to_string(dim));
            shapes_ok = false;
        }
    }
    if (fan.cones.empty()) fail("no top cones");
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t k = 0; k < fan.cones.size(); ++k) {
        const auto& c = fan.cones[k];
        const std::string tag = "cone " + std::to_string(k);
        bool in_range = true;
        for (std::size_t i : c) {
            if (i >= fan.n()) {
                fail(tag + " references missing ray " + std::to_string(i));
                in_range = false;
            }
        }
        if (c.size() != fan.d)
            fail(tag + " has " + std::to_string(c.size()) + " rays, expected " + std::to_string(fan.d));
        std::vector<std::size_t> sorted = c;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            fail(tag + " not simplicial: repeated ray");
            continue;
        }
        if (!seen.insert(sorted).second) fail(tag + " duplicates an earlier cone");
        if (in_range && shapes_ok && rank(free_part(fan.ray_matrix().select_cols(c), fan.d)) != c.size())
            fail(tag + " not simplicial: rays are linearly dependent");
    }
    if (shapes_ok && rank(free_part(fan.ray_matrix(), fan.d)) != fan.d)
        fail("ray map has infinite cokernel");
    if (!fan.labels.empty() && fan.labels.size() != fan.n()) fail("label count differs from ray count");
    if (fan.polarization) {
        const auto& p = *fan.polarization;
        if (!p.H.empty() && p.H.size() != fan.n()) fail("polarization H has wrong length");
        for (const auto& x : p.Xi)
            if (x.size() != fan.n()) fail("polarization Xi entry has wrong length");
    }
    return rep;
}

void require_valid(const StackyFan& fan) {
    ValidationReport rep = validate(fan);
    if (rep.valid) return;
    std::string msg = "invalid fan:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    msg.pop_back();
    throw DomainError(msg);
}

GaleDual gale_dual(const StackyFan& fan) {
    require_valid(fan);
    const std::size_t n = fan.n();
    IntMatrix BQ = fan.ray_matrix().hstack(fan.Q());
    GaleDual g{cokernel(BQ.transpose()), IntMatrix()};
    g.beta_dual = g.DG.basis_change.select_cols([&] {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        return idx;
    }());
    // Make the first nonzero entry of each free coordinate positive.
    const std::size_t t = g.DG.torsion.size();
    for (std::size_t row = t; row < g.DG.ngens(); ++row) {
        for (std::size_t i = 0; i < n; ++i) {
            if (g.beta_dual(row, i) == 0) continue;
            if (g.beta_dual(row, i) < 0) {
                g.beta_dual.negate_row(row);
                g.DG.basis_change.negate_row(row);
                g.DG.lift.negate_col(row);
            }
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntVec v = g.DG.reduce(g.beta_dual.col(i));
        for (std::size_t row = 0; row < v.size(); ++row) g.beta_dual(row, i) = v[row];
    }
    return g;
}

FinAbGroup local_group(const StackyFan& fan, std::size_t cone) {
    require_valid(fan);
    IntMatrix BQ = fan.cone_matrix(cone).hstack(fan.Q());
    return cokernel(BQ.transpose());
}

IntMatrix torus_weights(const StackyFan& fan, std::size_t cone) {
    require_free(fan, "torus weights");
    require_valid(fan);
    return fan.cone_matrix(cone).transpose();
}

std::vector<BoxElement> box(const StackyFan& fan, std::size_t cone) {
    IntMatrix M = torus_weights(fan, cone);
    FinAbGroup G = cokernel(M);
    std::vector<BoxElement> out;
    for (const IntVec& g : G.elements()) out.push_back(box_split(fan, cone, G.lift_vec(g)).b);
    std::sort(out.begin(), out.end(), [](const BoxElement& a, const BoxElement& b) { return a.q < b.q; });
    return out;
}

BoxSplit box_split(const StackyFan& fan, std::size_t cone, const IntVec& c) {
    IntMatrix M = torus_weights(fan, cone);
    std::vector<Rat> q = rat_solve(M, c);
    BoxSplit s;
    s.b.cone = cone;
    for (std::size_t i = 0; i < q.size(); ++i) {
        s.l.push_back(numerator(floor_rat(q[i])));
        q[i] = frac_rat(q[i]);
    }
    s.b.q = q;
    s.b.point.assign(fan.d, Int(0));
    for (std::size_t i = 0; i < fan.d; ++i) {
        Rat acc = 0;
        for (std::size_t k = 0; k < fan.d; ++k) acc += Rat(M(i, k)) * q[k];
        s.b.point[i] = numerator(acc);
    }
    return s;
}

std::vector<std::size_t> shared_rays(const StackyFan& fan, std::size_t i, std::size_t j) {
    if (i >= fan.cones.size() || j >= fan.cones.size()) throw DomainError("not a top cone");
    std::vector<std::size_t> out;
    for (std::size_t a : fan.cones[i])
        if (std::find(fan.cones[j].begin(), fan.cones[j].end(), a) != fan.cones[j].end()) out.push_back(a);
    return out;
}

}  // namespace ts
