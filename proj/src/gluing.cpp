#include "toricstack/sheafrep.hpp"

#include <functional>
#include <set>

namespace ts {

namespace {

const SFamilyWindow& window_for(const std::vector<SFamilyWindow>& windows, std::size_t cone) {
    for (const auto& w : windows)
        if (w.cone == cone) return w;
    throw DomainError("no window for chart " + std::to_string(cone));
}

// Value of the localization at the non-shared coordinates: read at the top of the
// window on those axes and shift the characters down to c.
CharMultiset localized(const FinAbGroup& DG, const SFamilyWindow& w, const IntVec& c,
                       const std::vector<std::size_t>& inverted) {
    IntVec top = c;
    for (std::size_t k : inverted) {
        if (w.saturation.size() != c.size() || w.saturation[k] > w.hi[k])
            throw DomainError("insufficient saturation on axis " + std::to_string(k) + " of chart " +
                              std::to_string(w.cone));
        top[k] = w.hi[k];
    }
    CharMultiset base = read_extended(DG, w, top);
    CharMultiset out;
    for (const auto& [ch, m] : base) {
        IntVec v = DG.lift_vec(ch);
        for (std::size_t k : inverted) v[k] += c[k] - top[k];
        out[DG.normalize(v)] += m;
    }
    return out;
}

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

IntVec add_reduced(const FinAbGroup& G, const IntVec& a, const IntVec& b) {
    IntVec s = a;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += b[k];
    return G.reduce(s);
}

}  // namespace

GlueReport glue_check(const StackyFan& fan, const std::vector<SFamilyWindow>& windows, std::size_t i,
                      std::size_t j, std::optional<std::pair<IntVec, IntVec>> shared_box) {
    ChartIntersection ci = intersect(fan, i, j);
    const SFamilyWindow& wi = window_for(windows, i);
    const SFamilyWindow& wj = window_for(windows, j);
    const std::size_t d = ci.d, p = ci.p, s = d - p;

    IntVec slo(s), shi(s);
    if (shared_box) {
        slo = shared_box->first;
        shi = shared_box->second;
        if (slo.size() != s || shi.size() != s) throw DomainError("shared test box has the wrong length");
    } else {
        for (std::size_t t = 0; t < s; ++t) {
            slo[t] = std::max(wi.lo[ci.order_i[t]], wj.lo[ci.order_j[t]]);
            shi[t] = std::min(wi.hi[ci.order_i[t]], wj.hi[ci.order_j[t]]);
        }
    }
    Int period = abs(det(ci.Cpp()) * det(ci.App()));
    IntVec llo(p, Int(0)), lhi(p, period - 1);

    std::vector<std::size_t> inv_i(ci.order_i.begin() + static_cast<long>(s), ci.order_i.end());
    std::vector<std::size_t> inv_j(ci.order_j.begin() + static_cast<long>(s), ci.order_j.end());

    auto side = [&](int which, const IntVec& w) {
        SideSplit sp = split_degree(ci, which, w);
        const auto& order = which == 1 ? ci.order_i : ci.order_j;
        IntVec c(d);
        for (std::size_t t = 0; t < s; ++t) c[order[t]] = w[t];
        for (std::size_t t = 0; t < p; ++t) c[order[s + t]] = sp.c_nonshared[t];
        const FinAbGroup& DG = which == 1 ? ci.DG_i : ci.DG_j;
        CharMultiset vals = localized(DG, which == 1 ? wi : wj, c, which == 1 ? inv_i : inv_j);
        IntVec twist = ci.mu_char(sp.a);
        CharMultiset out;
        for (const auto& [ch, m] : vals) {
            IntVec base = which == 1 ? ci.char_from_i(DG.lift_vec(ch)) : ci.char_from_j(DG.lift_vec(ch));
            out[add_reduced(ci.K_chars, base, twist)] += m;
        }
        return out;
    };

    GlueReport rep;
    for_each_point(slo, shi, [&](const IntVec& ws) {
        for_each_point(llo, lhi, [&](const IntVec& wl) {
            if (!rep.ok) return;
            IntVec w = ws;
            w.insert(w.end(), wl.begin(), wl.end());
            ++rep.points_checked;
            if (side(1, w) != side(2, w)) {
                rep.ok = false;
                rep.first_failure = w;
                rep.detail = "representations of K differ";
            }
        });
    });
    if (rep.points_checked == 0) throw DomainError("shared test box is empty");
    return rep;
}

CharacteristicFunction characteristic_function(const StackyFan& fan, const std::vector<SFamilyWindow>& windows) {
    CharacteristicFunction cf;
    for (std::size_t cone = 0; cone < fan.cones.size(); ++cone) {
        const SFamilyWindow& w = window_for(windows, cone);
        std::set<IntVec> labels;
        for (const auto& s : w.summands) labels.insert(s.label);
        if (labels.size() > 1) throw DomainError("decomposable candidate on chart " + std::to_string(cone));
        CharacteristicFunction::Chart ch;
        ch.cone = cone;
        ch.label = labels.empty() ? IntVec(fan.d, Int(0)) : *labels.begin();
        ch.lo = w.lo;
        ch.hi = w.hi;
        ch.saturation = w.saturation;
        for (const auto& s : w.summands)
            for (const auto& [c, mult] : s.dims)
                for (const auto& [chr, m] : mult) ch.dims[c] += m;
        cf.charts.push_back(std::move(ch));
    }
    return cf;
}

CharacteristicFunction frame(const StackyFan& fan, const CharacteristicFunction& cf) {
    if (cf.charts.empty()) return cf;
    const auto& first = cf.charts[0];
    BoxSplit sp = box_split(fan, first.cone, first.saturation);
    IntVec m = sp.l;
    for (Int& x : m) x = -x;
    CharacteristicFunction out;
    for (const auto& ch : cf.charts) {
        IntVec shift = torus_weights(fan, ch.cone) * m;
        auto move = [&](IntVec v) {
            for (std::size_t k = 0; k < v.size(); ++k) v[k] += shift[k];
            return v;
        };
        CharacteristicFunction::Chart f;
        f.cone = ch.cone;
        f.label = ch.label;
        f.lo = move(ch.lo);
        f.hi = move(ch.hi);
        f.saturation = move(ch.saturation);
        for (const auto& [c, dim] : ch.dims) f.dims[move(c)] = dim;
        out.charts.push_back(std::move(f));
    }
    return out;
}

}  // namespace ts
