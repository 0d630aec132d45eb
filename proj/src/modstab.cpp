#include "toricstack/modstab.hpp"

#include <set>
#include <stdexcept>

namespace ts {

namespace {

void require_surface(const StackyFan& fan, const char* what) {
    if (fan.d != 2) throw DomainError(std::string(what) + " needs a surface (d = 2)");
    require_free(fan, what);
    require_valid(fan);
}

void require_complete(const StackyFan& fan) {
    std::vector<int> uses(fan.n(), 0);
    for (const auto& c : fan.cones)
        for (std::size_t r : c) ++uses[r];
    for (int u : uses)
        if (u != 2) throw DomainError("fan is not complete");
}

}  // namespace

Rat IntersectionTable::pair(const IntVec& x, const std::vector<Rat>& y) const {
    Rat acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) acc += Rat(x[i]) * y[j] * D[i][j];
    return acc;
}

Rat IntersectionTable::pair(const IntVec& x, const IntVec& y) const {
    std::vector<Rat> yr(y.begin(), y.end());
    return pair(x, yr);
}

IntersectionTable intersection_table(const StackyFan& fan) {
    require_surface(fan, "intersection table");
    require_complete(fan);
    const std::size_t n = fan.n();
    IntersectionTable t;
    t.D.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        std::size_t i = fan.cones[c][0], j = fan.cones[c][1];
        Rat v(1, abs(det(fan.cone_matrix(c))));
        t.D[i][j] = t.D[j][i] = v;
    }
    // Sum_r <m, b_r> D_r = 0 for m = e_1, e_2 fixes the self-intersections.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = fan.rays[i][0] != 0 ? 0 : 1;
        Rat acc = 0;
        for (std::size_t r = 0; r < n; ++r)
            if (r != i) acc += Rat(fan.rays[r][k]) * t.D[r][i];
        t.D[i][i] = -acc / Rat(fan.rays[i][k]);
    }
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Rat acc = 0;
            for (std::size_t r = 0; r < n; ++r) acc += Rat(fan.rays[r][k]) * t.D[r][i];
            if (acc != 0) throw std::logic_error("intersection table violates a linear relation");
        }
    return t;
}

Polarization effective_polarization(const StackyFan& fan) {
    Polarization pol;
    if (fan.polarization) pol = *fan.polarization;
    if (pol.H.empty()) pol.H.assign(fan.n(), Rat(1));
    if (pol.Xi.empty())
        for (std::size_t r = 0; r < fan.n(); ++r) {
            IntVec e(fan.n(), Int(0));
            e[r] = 1;
            pol.Xi.push_back(e);
        }
    if (pol.H.size() != fan.n()) throw DomainError("polarization H has wrong length");
    for (const auto& x : pol.Xi)
        if (x.size() != fan.n()) throw DomainError("polarization Xi entry has wrong length");
    return pol;
}

std::size_t sheaf_rank(const SheafData& s) { return s.kind == "rank2_reflexive" ? 2 : 1; }

IntVec c1(const SheafData& s) {
    if (s.kind == "rank2_reflexive") {
        IntVec out = s.rank2.A;
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = 2 * s.rank2.A[r] + s.rank2.lambda[r];
        return out;
    }
    if (s.kind == "rank1_tf") return s.rank1.B;
    return s.B;
}

Rat modified_slope(const StackyFan& fan, const Polarization& pol, const SheafData& s) {
    IntersectionTable t = intersection_table(fan);
    IntVec c = c1(s);
    if (c.size() != fan.n()) throw DomainError("sheaf data must have one entry per ray");
    return t.pair(c, pol.H) / Rat(static_cast<long long>(sheaf_rank(s)));
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::strictly_semistable: return "strictly semistable";
        case Stability::unstable: return "unstable";
    }
    return "";
}

StabilityVerdict rank2_slope_stable(const StackyFan& fan, const Polarization& pol, const Rank2ReflexiveData& d) {
    IntersectionTable t = intersection_table(fan);
    check_rank2(fan, d);
    SheafData s;
    s.kind = "rank2_reflexive";
    s.rank2 = d;
    StabilityVerdict v;
    v.slope = t.pair(c1(s), pol.H) / 2;

    std::set<ProjPoint> lines;
    long generic = 0;
    for (std::size_t r = 0; r < fan.n(); ++r) {
        if (d.lambda[r] > 0) lines.insert(d.p[r]);
        generic = std::max(generic, d.p[r].generic_id + 1);
    }
    std::vector<ProjPoint> cand(lines.begin(), lines.end());
    cand.push_back(generic_point(generic));  // a line through no flag
    for (const ProjPoint& q : cand) {
        StabilityVerdict::Candidate c{q, d.A, 0};
        for (std::size_t r = 0; r < fan.n(); ++r)
            if (d.lambda[r] > 0 && d.p[r] == q) c.B[r] += d.lambda[r];
        c.slope = t.pair(c.B, pol.H);
        v.candidates.push_back(c);
    }
    for (std::size_t k = 1; k < v.candidates.size(); ++k)
        if (v.candidates[k].slope > v.candidates[v.witness].slope) v.witness = k;
    const Rat& worst = v.candidates[v.witness].slope;
    v.verdict = worst < v.slope ? Stability::stable
              : worst == v.slope ? Stability::strictly_semistable
                                 : Stability::unstable;
    return v;
}

Rat wps_chi_formula(const Int& a, const Int& b, const Int& c, const Int& x) {
    if (a < 1 || b < 1 || c < 1) throw DomainError("weights must be positive");
    Int s1 = 0, s2 = 0;
    for (Int k = 0; k < a * b * c; ++k) {
        s1 += x + k;
        s2 += (x + k) * (x + k);
    }
    Int num = a * a + b * b + c * c + 3 * a * b + 3 * b * c + 3 * c * a + 6 * ((a + b + c) * s1 + s2);
    return Rat(num, 12);
}

Int weighted_count(const Int& a, const Int& b, const Int& c, const Int& x) {
    Int count = 0;
    for (Int i = 0; a * i <= x; ++i)
        for (Int j = 0; a * i + b * j <= x; ++j)
            if ((x - a * i - b * j) % c == 0) ++count;
    return count;
}

Int wps_chi_oracle(const Int& a, const Int& b, const Int& c, const Int& x) {
    if (a < 1 || b < 1 || c < 1) throw DomainError("weights must be positive");
    if (x < a * b * c - 1) throw DomainError("outside vanishing range");
    Int total = 0;
    for (Int k = 0; k < a * b * c; ++k) total += weighted_count(a, b, c, x - k);
    return total;
}

Int skyscraper_chi(const StackyFan& fan, const Polarization& pol, std::size_t cone, const IntVec& alpha) {
    FinAbGroup DG = local_group(fan, cone);
    IntVec target = DG.reduce(alpha);
    Int count = 0;
    for (const IntVec& E : pol.Xi)
        if (DG.normalize(cone_slice(fan, E, cone)) == target) ++count;
    return count;
}

Int toric_chi(const StackyFan& fan, const IntVec& D) {
    require_surface(fan, "toric Euler characteristic");
    require_complete(fan);
    if (D.size() != fan.n()) throw DomainError("divisor vector must have one entry per ray");
    // Outside this box every V_m is a single proper arc of rays or misses the
    // polytopes of H^0 and H^2, so the graded piece has Euler characteristic 0.
    long long dmax = 0, bmax = 0;
    for (const Int& x : D) dmax = std::max(dmax, to_ll(abs(x)));
    for (const auto& b : fan.rays) bmax = std::max(bmax, to_ll(abs(b[0]) + abs(b[1])));
    const long long R = 2 * (dmax + 1) * bmax + 2;
    const std::size_t n = fan.n();
    std::vector<long long> b0(n), b1(n), dd(n);
    for (std::size_t r = 0; r < n; ++r) {
        b0[r] = to_ll(fan.rays[r][0]);
        b1[r] = to_ll(fan.rays[r][1]);
        dd[r] = to_ll(D[r]);
    }
    long long total = 0;
    std::vector<char> in(n);
    for (long long x = -R; x <= R; ++x)
        for (long long y = -R; y <= R; ++y) {
            long long verts = 0, edges = 0;
            for (std::size_t r = 0; r < n; ++r) {
                in[r] = x * b0[r] + y * b1[r] < -dd[r];
                verts += in[r];
            }
            for (const auto& c : fan.cones) edges += in[c[0]] && in[c[1]];
            total += 1 - verts + edges;
        }
    return Int(total);
}

}  // namespace ts
