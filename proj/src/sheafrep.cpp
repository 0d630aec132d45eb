#include "toricstack/sheafrep.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ts {

namespace {

void for_each_point(const IntVec& lo, const IntVec& hi, const std::function<void(const IntVec&)>& f) {
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (lo[k] > hi[k]) return;
    IntVec c = lo;
    for (;;) {
        f(c);
        std::size_t k = 0;
        while (k < c.size() && c[k] == hi[k]) c[k] = lo[k], ++k;
        if (k == c.size()) return;
        ++c[k];
    }
}

bool geq(const IntVec& a, const IntVec& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] < b[k]) return false;
    return true;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
    return out;
}

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
    return out;
}

void check_window_shape(const StackyFan& fan, const IntVec& lo, const IntVec& hi) {
    if (lo.size() != fan.d || hi.size() != fan.d) throw DomainError("window corners must have length d");
    for (std::size_t k = 0; k < fan.d; ++k)
        if (lo[k] > hi[k]) throw DomainError("empty window");
}

// Window whose only summand has dimension dim_at(c) at degree c, graded by the class of c.
SFamilyWindow make_window(const StackyFan& fan, std::size_t cone, const IntVec& lo, const IntVec& hi,
                          const IntVec& label_point, const IntVec& saturation,
                          const std::function<Int(const IntVec&)>& dim_at) {
    check_window_shape(fan, lo, hi);
    FinAbGroup DG = local_group(fan, cone);
    SFamilyWindow w;
    w.cone = cone;
    w.lo = lo;
    w.hi = hi;
    w.saturation = saturation;
    SFamilyWindow::Summand s;
    s.label = box_split(fan, cone, label_point).b.point;
    for_each_point(lo, hi, [&](const IntVec& c) {
        Int dim = dim_at(c);
        if (dim > 0) s.dims[c][DG.normalize(c)] = dim;
    });
    w.summands.push_back(std::move(s));
    return w;
}

}  // namespace

bool SFamilyWindow::contains(const IntVec& c) const { return geq(c, lo) && geq(hi, c); }

CharMultiset SFamilyWindow::at(const IntVec& c) const {
    CharMultiset out;
    for (const auto& s : summands) {
        auto it = s.dims.find(c);
        if (it == s.dims.end()) continue;
        for (const auto& [ch, m] : it->second) out[ch] += m;
    }
    return out;
}

Int SFamilyWindow::dim(const IntVec& c) const {
    Int total = 0;
    for (const auto& [ch, m] : at(c)) total += m;
    return total;
}

CharMultiset read_extended(const FinAbGroup& DG, const SFamilyWindow& w, const IntVec& c) {
    IntVec clamped = c;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] < w.lo[k])
            throw DomainError("read below the window on axis " + std::to_string(k) + " of chart " +
                              std::to_string(w.cone));
        if (c[k] > w.hi[k]) {
            if (w.saturation.size() != c.size() || w.saturation[k] > w.hi[k])
                throw DomainError("insufficient saturation on axis " + std::to_string(k) + " of chart " +
                                  std::to_string(w.cone));
            clamped[k] = w.hi[k];
        }
    }
    CharMultiset base = w.at(clamped);
    if (clamped == c) return base;
    IntVec shift = sub(c, clamped);
    CharMultiset out;
    for (const auto& [ch, m] : base) out[DG.normalize(add(DG.lift_vec(ch), shift))] += m;
    return out;
}

std::map<IntVec, SFamilyWindow> box_decompose(const SFamilyWindow& w) {
    std::map<IntVec, SFamilyWindow> out;
    for (const auto& s : w.summands) {
        auto [it, fresh] = out.try_emplace(s.label);
        if (fresh) {
            it->second.cone = w.cone;
            it->second.lo = w.lo;
            it->second.hi = w.hi;
            it->second.saturation = w.saturation;
        }
        it->second.summands.push_back(s);
    }
    return out;
}

SFamilyWindow direct_sum(const SFamilyWindow& a, const SFamilyWindow& b) {
    if (a.cone != b.cone || a.lo != b.lo || a.hi != b.hi) throw DomainError("windows do not match");
    SFamilyWindow out = a;
    for (std::size_t k = 0; k < out.saturation.size() && k < b.saturation.size(); ++k)
        out.saturation[k] = std::max(out.saturation[k], b.saturation[k]);
    out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
    return out;
}

IntVec cone_slice(const StackyFan& fan, const IntVec& B, std::size_t cone) {
    if (B.size() != fan.n()) throw DomainError("divisor vector must have one entry per ray");
    if (cone >= fan.cones.size()) throw DomainError("not a top cone");
    IntVec out;
    for (std::size_t r : fan.cones[cone]) out.push_back(B[r]);
    return out;
}

LineBundleChartData line_bundle_chart_data(const StackyFan& fan, const IntVec& B, std::size_t cone) {
    require_free(fan, "line bundle chart data");
    IntVec slice = cone_slice(fan, B, cone);
    BoxSplit sp = box_split(fan, cone, slice);
    return {sp.b, sp.l, local_group(fan, cone).normalize(slice)};
}

SFamilyWindow line_bundle_window(const StackyFan& fan, const IntVec& B, std::size_t cone, const IntVec& lo,
                                 const IntVec& hi) {
    require_free(fan, "line bundle windows");
    IntVec slice = cone_slice(fan, B, cone);
    check_window_shape(fan, lo, hi);
    if (!geq(slice, lo) || !geq(hi, slice)) throw DomainError("window excludes generator");
    return make_window(fan, cone, lo, hi, slice, slice,
                       [&](const IntVec& c) { return geq(c, slice) ? Int(1) : Int(0); });
}

ProjPoint proj_point(const Int& x, const Int& y) {
    if (x == 0 && y == 0) throw DomainError("(0:0) is not a projective point");
    Int g = gcd(x, y);
    ProjPoint p{x / g, y / g, -1};
    if (p.x < 0 || (p.x == 0 && p.y < 0)) p = {-p.x, -p.y, -1};
    return p;
}

ProjPoint generic_point(long id) { return ProjPoint{0, 0, id}; }

void check_rank2(const StackyFan& fan, const Rank2ReflexiveData& d) {
    if (d.A.size() != fan.n() || d.lambda.size() != fan.n() || d.p.size() != fan.n())
        throw DomainError("rank-2 data must have one entry per ray");
    for (const Int& l : d.lambda)
        if (l < 0) throw DomainError("rank-2 gaps must be non-negative");
}

void check_rank1(const StackyFan& fan, const Rank1TFData& d) {
    if (d.B.size() != fan.n()) throw DomainError("divisor vector must have one entry per ray");
    if (d.staircases.size() != fan.cones.size()) throw DomainError("one staircase per top cone is required");
    for (const auto& st : d.staircases) {
        std::set<IntVec> pts(st.begin(), st.end());
        for (const IntVec& v : st) {
            if (v.size() != fan.d) throw DomainError("staircase points must have length d");
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (v[k] < 0) throw DomainError("staircase points must be non-negative");
                if (v[k] > 0) {
                    IntVec u = v;
                    --u[k];
                    if (!pts.count(u)) throw DomainError("staircase is not downward closed");
                }
            }
        }
    }
}

namespace {

// dim of the intersection of the per-ray filtration spaces at chart degree c.
Int rank2_dim(const StackyFan& fan, const Rank2ReflexiveData& d, std::size_t cone, const IntVec& c) {
    std::set<ProjPoint> lines;
    for (std::size_t k = 0; k < fan.d; ++k) {
        std::size_t r = fan.cones[cone][k];
        if (c[k] < d.A[r]) return 0;
        if (c[k] < d.A[r] + d.lambda[r]) lines.insert(d.p[r]);
    }
    if (lines.empty()) return 2;
    return lines.size() == 1 ? 1 : 0;
}

IntVec rank1_saturation(const StackyFan& fan, const Rank1TFData& d, std::size_t cone) {
    const IntVec slice = cone_slice(fan, d.B, cone);
    IntVec s = slice;
    for (const IntVec& v : d.staircases[cone])
        for (std::size_t k = 0; k < fan.d; ++k)
            if (slice[k] + v[k] + 1 > s[k]) s[k] = slice[k] + v[k] + 1;
    return s;
}

}  // namespace

SFamilyWindow rank2_window(const StackyFan& fan, const Rank2ReflexiveData& d, std::size_t cone,
                           const IntVec& lo, const IntVec& hi) {
    require_free(fan, "rank-2 windows");
    check_rank2(fan, d);
    IntVec a = cone_slice(fan, d.A, cone);
    IntVec sat = add(a, cone_slice(fan, d.lambda, cone));
    return make_window(fan, cone, lo, hi, a, sat, [&](const IntVec& c) { return rank2_dim(fan, d, cone, c); });
}

SFamilyWindow rank1_window(const StackyFan& fan, const Rank1TFData& d, std::size_t cone, const IntVec& lo,
                           const IntVec& hi) {
    require_free(fan, "rank-1 windows");
    check_rank1(fan, d);
    IntVec slice = cone_slice(fan, d.B, cone);
    std::set<IntVec> holes(d.staircases[cone].begin(), d.staircases[cone].end());
    return make_window(fan, cone, lo, hi, slice, rank1_saturation(fan, d, cone), [&](const IntVec& c) {
        return geq(c, slice) && !holes.count(sub(c, slice)) ? Int(1) : Int(0);
    });
}

IntVec sheaf_generator(const StackyFan& fan, const SheafData& s, std::size_t cone) {
    if (s.kind == "rank2_reflexive") return cone_slice(fan, s.rank2.A, cone);
    if (s.kind == "rank1_tf") return cone_slice(fan, s.rank1.B, cone);
    return cone_slice(fan, s.B, cone);
}

IntVec sheaf_saturation(const StackyFan& fan, const SheafData& s, std::size_t cone) {
    if (s.kind == "rank2_reflexive")
        return add(cone_slice(fan, s.rank2.A, cone), cone_slice(fan, s.rank2.lambda, cone));
    if (s.kind == "rank1_tf") {
        check_rank1(fan, s.rank1);
        return rank1_saturation(fan, s.rank1, cone);
    }
    return cone_slice(fan, s.B, cone);
}

SFamilyWindow sheaf_window(const StackyFan& fan, const SheafData& s, std::size_t cone,
                           std::optional<std::pair<IntVec, IntVec>> window) {
    IntVec lo, hi;
    if (window) {
        lo = window->first;
        hi = window->second;
    } else {
        lo = sheaf_generator(fan, s, cone);
        hi = sheaf_saturation(fan, s, cone);
        for (auto& x : lo) --x;
        for (auto& x : hi) ++x;
    }
    if (s.kind == "rank2_reflexive") return rank2_window(fan, s.rank2, cone, lo, hi);
    if (s.kind == "rank1_tf") return rank1_window(fan, s.rank1, cone, lo, hi);
    return line_bundle_window(fan, s.B, cone, lo, hi);
}

std::vector<SFamilyWindow> sheaf_windows(const StackyFan& fan, const SheafData& s,
                                         std::optional<std::pair<IntVec, IntVec>> window) {
    std::vector<SFamilyWindow> out;
    for (std::size_t c = 0; c < fan.cones.size(); ++c) out.push_back(sheaf_window(fan, s, c, window));
    return out;
}

DecomposabilityVerdict rank2_decomposable(const Rank2ReflexiveData& d) {
    std::set<ProjPoint> pts;
    for (std::size_t r = 0; r < d.lambda.size(); ++r)
        if (d.lambda[r] > 0) pts.insert(d.p[r]);
    DecomposabilityVerdict v;
    v.decomposable = pts.size() <= 2;
    if (!v.decomposable) return v;
    v.witness.assign(pts.begin(), pts.end());
    for (const ProjPoint& q : {proj_point(1, 0), proj_point(0, 1)}) {
        if (v.witness.size() == 2) break;
        if (std::find(v.witness.begin(), v.witness.end(), q) == v.witness.end()) v.witness.push_back(q);
    }
    return v;
}

}  // namespace ts
