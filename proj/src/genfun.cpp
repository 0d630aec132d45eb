#include "toricstack/genfun.hpp"

#include <functional>

namespace ts {

QSeries QSeries::one(std::size_t order, const Rat& leading) {
    QSeries s;
    s.leading = leading;
    s.order = order;
    s.coeffs.assign(order + 1, Int(0));
    s.coeffs[0] = 1;
    return s;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    QSeries out;
    out.leading = a.leading + b.leading;
    out.order = std::min(a.order, b.order);
    out.coeffs.assign(out.order + 1, Int(0));
    for (std::size_t i = 0; i <= out.order; ++i)
        for (std::size_t j = 0; i + j <= out.order; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

QSeries series_inv_factor(const QSeries& base, const Int& e, const Int& m) {
    if (e <= 0) throw DomainError("factor exponent must be positive");
    if (m < 0) throw DomainError("factor multiplicity must be non-negative");
    QSeries out = base;
    const std::size_t step = e > Int(base.order) ? base.order + 1 : static_cast<std::size_t>(to_ll(e));
    // Dividing by (1 - t^e) m times: a running sum with stride e.
    for (Int k = 0; k < m; ++k)
        for (std::size_t w = step; w <= out.order; ++w) out.coeffs[w] += out.coeffs[w - step];
    return out;
}

QSeries wps_Z_closed_form(const Int& a, const Int& b, const Int& c, const Int& x, std::size_t order) {
    QSeries s = QSeries::one(order, wps_chi_formula(a, b, c, x));
    for (Int k = 1; k <= Int(order); ++k)
        for (const Int& e : {a * b * k, b * c * k, c * a * k})
            if (e <= Int(order)) s = series_inv_factor(s, e, 1);
    return s;
}

IntVec staircase_series(const std::function<Int(long, long)>& weight, std::size_t order) {
    IntVec counts(order + 1, Int(0));
    const long budget = static_cast<long>(order);
    // Columns u = 0, 1, ... with non-increasing heights.
    std::function<void(long, long, long)> grow = [&](long u, long max_h, long used) {
        ++counts[static_cast<std::size_t>(used)];
        long col = 0;
        for (long h = 1; h <= max_h; ++h) {
            col += to_ll(weight(u, h - 1));
            if (used + col > budget) break;
            grow(u + 1, h, used + col);
        }
    };
    grow(0, budget, 0);
    return counts;
}

Int modified_chi(const StackyFan& fan, const Polarization& pol, const IntVec& B) {
    Int total = 0;
    for (const IntVec& E : pol.Xi) {
        IntVec D = B;
        for (std::size_t r = 0; r < D.size(); ++r) D[r] -= E[r];
        total += toric_chi(fan, D);
    }
    return total;
}

ZOracle Z_oracle(const StackyFan& fan, const Polarization& pol, const IntVec& c1, std::size_t order) {
    if (fan.d != 2) throw DomainError("generating functions need a surface (d = 2)");
    if (c1.size() != fan.n()) throw DomainError("c1 must have one entry per ray");
    ZOracle z;
    z.series = QSeries::one(order, Rat(modified_chi(fan, pol, c1)));
    for (std::size_t cone = 0; cone < fan.cones.size(); ++cone) {
        FinAbGroup DG = local_group(fan, cone);
        std::map<IntVec, Int> chi;
        for (const IntVec& alpha : DG.elements()) {
            Int k = skyscraper_chi(fan, pol, cone, alpha);
            if (k == 0) throw DomainError("non-finite coefficient");
            chi[alpha] = k;
        }
        // The box at (u, v) is the weight space of the generator shifted by x^u y^v.
        IntVec base = cone_slice(fan, c1, cone);
        auto weight = [&](long u, long v) {
            IntVec c = base;
            c[0] += u;
            c[1] += v;
            return chi.at(DG.normalize(c));
        };
        IntVec counts = staircase_series(weight, order);
        z.per_chart.push_back(counts);
        QSeries part{0, order, counts};
        z.series = series_mul(z.series, part);
    }
    return z;
}

}  // namespace ts
