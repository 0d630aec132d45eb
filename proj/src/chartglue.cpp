#include "toricstack/chartglue.hpp"

#include <algorithm>
#include <stdexcept>

namespace ts {

namespace {

std::size_t position_in(const std::vector<std::size_t>& cone, std::size_t ray) {
    return static_cast<std::size_t>(std::find(cone.begin(), cone.end(), ray) - cone.begin());
}

IntVec concat(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

IntVec tail(const IntVec& v, std::size_t k) { return IntVec(v.end() - static_cast<long>(k), v.end()); }

// Exact solution of the nonsingular system M x = b; throws if x is not integral.
IntVec solve_exact(const IntMatrix& M, const IntVec& b) {
    if (M.rows() == 0) return {};
    RatInverse inv = rational_inverse(M);
    IntVec num = inv.num * b;
    for (Int& x : num) {
        if (x % inv.den != 0) throw std::logic_error("overlap splitting is not integral");
        x /= inv.den;
    }
    return num;
}

IntMatrix hermite_rows(const IntMatrix& M) {
    if (M.rows() == 0) return IntMatrix(0, 0);
    HermiteDecomposition h = hnf(M.transpose());
    return h.H.block(0, 0, M.rows(), M.rows());
}

}  // namespace

IntVec reduce_mod_lattice(const IntMatrix& H, IntVec x) {
    for (std::size_t i = 0; i < H.rows(); ++i) {
        Int k = floor_div(x[i], H(i, i));
        if (k == 0) continue;
        for (std::size_t j = i; j < H.cols(); ++j) x[j] -= k * H(i, j);
    }
    return x;
}

std::vector<IntVec> lattice_coset_reps(const IntMatrix& H) {
    std::vector<IntVec> out{IntVec(H.rows(), Int(0))};
    for (std::size_t i = H.rows(); i-- > 0;) {
        std::vector<IntVec> next;
        for (const IntVec& v : out) {
            for (Int x = 0; x < H(i, i); ++x) {
                IntVec w = v;
                w[i] = x;
                next.push_back(w);
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntVec ChartIntersection::char_from_i(const IntVec& f) const {
    return K_chars.normalize(concat(f, IntVec(d, Int(0))));
}

IntVec ChartIntersection::char_from_j(const IntVec& f) const {
    return K_chars.normalize(concat(IntVec(d, Int(0)), f));
}

IntVec ChartIntersection::mu_char(const IntVec& a) const {
    IntVec acc(2 * d, Int(0));
    for (std::size_t l = 0; l < p; ++l)
        for (std::size_t t = 0; t < 2 * d; ++t) acc[t] += a[l] * mu[l][t];
    return K_chars.normalize(acc);
}

ChartIntersection intersect(const StackyFan& fan, std::size_t i, std::size_t j) {
    require_free(fan, "chart intersection");
    require_valid(fan);
    if (i >= fan.cones.size() || j >= fan.cones.size()) throw DomainError("not a top cone");
    if (i == j) throw DomainError("chart intersection needs two distinct cones");

    ChartIntersection ci;
    ci.i = i;
    ci.j = j;
    ci.d = fan.d;
    const auto& ci_rays = fan.cones[i];
    const auto& cj_rays = fan.cones[j];
    ci.shared = shared_rays(fan, i, j);
    for (std::size_t r : ci_rays)
        if (std::find(ci.shared.begin(), ci.shared.end(), r) == ci.shared.end()) ci.only_i.push_back(r);
    for (std::size_t r : cj_rays)
        if (std::find(ci.shared.begin(), ci.shared.end(), r) == ci.shared.end()) ci.only_j.push_back(r);
    const std::size_t d = fan.d, s = ci.shared.size(), p = d - s;
    ci.p = p;
    for (std::size_t r : ci.shared) {
        ci.order_i.push_back(position_in(ci_rays, r));
        ci.order_j.push_back(position_in(cj_rays, r));
    }
    for (std::size_t r : ci.only_i) ci.order_i.push_back(position_in(ci_rays, r));
    for (std::size_t r : ci.only_j) ci.order_j.push_back(position_in(cj_rays, r));

    std::vector<std::size_t> uni = ci.shared;
    uni.insert(uni.end(), ci.only_i.begin(), ci.only_i.end());
    uni.insert(uni.end(), ci.only_j.begin(), ci.only_j.end());
    const std::size_t m = uni.size();
    IntMatrix Bu = fan.ray_matrix().select_cols(uni);
    ci.DG_union = cokernel(Bu.transpose());
    const std::size_t t = ci.DG_union.torsion.size();
    if (ci.DG_union.free_rank != p) throw std::logic_error("overlap group has unexpected rank");
    ci.DH = standard_group(ci.DG_union.torsion, 0);

    auto free_class = [&](std::size_t u) {
        IntVec e(m, Int(0));
        e[u] = 1;
        return tail(ci.DG_union.normalize(e), p);
    };
    ci.C = IntMatrix(d, d);
    ci.A = IntMatrix(d, d);
    for (std::size_t k = 0; k < s; ++k) {
        ci.C(k, k) = 1;
        ci.A(k, k) = 1;
        IntVec f = free_class(k);
        for (std::size_t l = 0; l < p; ++l) ci.C(s + l, k) = f[l];
    }
    for (std::size_t k = 0; k < p; ++k) {
        IntVec fi = free_class(s + k), fj = free_class(s + p + k);
        for (std::size_t l = 0; l < p; ++l) {
            ci.C(s + l, s + k) = fi[l];
            ci.A(s + l, s + k) = -fj[l];
        }
    }
    IntMatrix Mi = fan.cone_matrix(i).select_cols(ci.order_i).transpose();
    IntMatrix Mj = fan.cone_matrix(j).select_cols(ci.order_j).transpose();
    ci.chi = ci.C * Mi;
    if (ci.chi != ci.A * Mj) throw std::logic_error("overlap weights disagree");

    ci.DG_i = local_group(fan, i);
    ci.DG_j = local_group(fan, j);
    IntMatrix phi1(d, m), phi2(d, m);
    for (std::size_t u = 0; u < m; ++u) {
        std::size_t a = position_in(ci_rays, uni[u]), b = position_in(cj_rays, uni[u]);
        if (a < d) phi1(a, u) = 1;
        if (b < d) phi2(b, u) = 1;
    }
    IntMatrix rel(2 * d, 0);
    {
        IntMatrix top = ci.DG_i.relations.hstack(IntMatrix(d, ci.DG_j.relations.cols()));
        IntMatrix bot = IntMatrix(d, ci.DG_i.relations.cols()).hstack(ci.DG_j.relations);
        rel = top.vstack(bot);
    }
    auto pair_image = [&](const IntVec& z) { return concat(phi1 * z, (-phi2) * z); };
    std::vector<IntVec> dh_cols;
    for (std::size_t k = 0; k < t; ++k) dh_cols.push_back(pair_image(ci.DG_union.lift.col(k)));
    if (!dh_cols.empty()) rel = rel.hstack(IntMatrix::from_cols(dh_cols, 2 * d));
    ci.K_chars = cokernel(rel);
    for (std::size_t l = 0; l < p; ++l) ci.mu.push_back(pair_image(ci.DG_union.lift.col(t + l)));

    ci.phi1 = phi1;
    ci.phi2 = phi2;
    ci.proj1 = GroupHom{ci.DG_i, ci.K_chars, IntMatrix::identity(d).vstack(IntMatrix(d, d))};
    ci.proj2 = GroupHom{ci.DG_j, ci.K_chars, IntMatrix(d, d).vstack(IntMatrix::identity(d))};

    ci.H1 = hermite_rows(ci.Cpp());
    ci.H2 = hermite_rows(ci.App());
    ci.basis1 = lattice_coset_reps(ci.H1);
    ci.basis2 = lattice_coset_reps(ci.H2);
    return ci;
}

const std::vector<IntVec>& basis_monomials(const ChartIntersection& ci, int side) {
    if (side != 1 && side != 2) throw DomainError("side must be 1 or 2");
    return side == 1 ? ci.basis1 : ci.basis2;
}

SideSplit split_degree(const ChartIntersection& ci, int side, const IntVec& w) {
    const std::size_t s = ci.d - ci.p;
    IntVec ws(w.begin(), w.begin() + static_cast<long>(s));
    IntVec r = tail(w, ci.p);
    if (side == 1 && s > 0) {
        IntVec shift = ci.Cprime() * ws;
        for (std::size_t l = 0; l < ci.p; ++l) r[l] -= shift[l];
    }
    SideSplit out;
    out.a = reduce_mod_lattice(side == 1 ? ci.H1 : ci.H2, r);
    IntVec rest = r;
    for (std::size_t l = 0; l < ci.p; ++l) rest[l] -= out.a[l];
    out.c_nonshared = solve_exact(side == 1 ? ci.Cpp() : ci.App(), rest);
    return out;
}

std::vector<SaturationShift> saturation_shift(const ChartIntersection& ci, int side, const IntVec& Q) {
    const IntMatrix& M = side == 1 ? ci.C : ci.A;
    RatInverse inv = rational_inverse(M);
    std::vector<SaturationShift> out;
    for (const IntVec& a : basis_monomials(ci, side)) {
        IntVec v = Q;
        for (std::size_t l = 0; l < ci.p; ++l) v[ci.d - ci.p + l] -= a[l];
        IntVec num = inv.num * v;
        SaturationShift sh;
        sh.a = a;
        for (const Int& x : num) sh.q.push_back(frac_rat(Rat(x, inv.den)));
        out.push_back(std::move(sh));
    }
    return out;
}

}  // namespace ts
