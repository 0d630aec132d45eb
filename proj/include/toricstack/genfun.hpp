#pragma once

#include "toricstack/modstab.hpp"

#include <functional>

namespace ts {

// Truncated series q^leading * sum_{w=0}^{order} coeffs[w] q^{-w}.
struct QSeries {
    Rat leading = 0;
    std::size_t order = 0;
    IntVec coeffs;  // size order + 1

    static QSeries one(std::size_t order, const Rat& leading = 0);
    bool operator==(const QSeries& o) const = default;
};

QSeries series_mul(const QSeries& a, const QSeries& b);
// Multiplies by (1 - q^{-e})^{-m}.
QSeries series_inv_factor(const QSeries& base, const Int& e, const Int& m);

QSeries wps_Z_closed_form(const Int& a, const Int& b, const Int& c, const Int& x, std::size_t order);

// Counts of staircases (finite downward-closed subsets of Z^2_{>=0}) by total
// weight, where the box (u, v) weighs weight(u, v) >= 1.
IntVec staircase_series(const std::function<Int(long, long)>& weight, std::size_t order);

// Modified Euler characteristic chi_Xi(L_B) = sum over Xi summands E of chi(L_{B-E}).
Int modified_chi(const StackyFan& fan, const Polarization& pol, const IntVec& B);

struct ZOracle {
    QSeries series;
    std::vector<IntVec> per_chart;  // staircase counts by weight, one list per top cone
};
ZOracle Z_oracle(const StackyFan& fan, const Polarization& pol, const IntVec& c1, std::size_t order);

}  // namespace ts
