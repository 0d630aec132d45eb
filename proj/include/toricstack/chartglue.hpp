#pragma once

#include "toricstack/stackyfan.hpp"

namespace ts {

// Data of the double overlap of charts i and j (free N only).
//
// Chart coordinates are reordered so the shared rays come first ("aligned order");
// order_i[t] is the position inside fan.cones[i] of the t-th aligned coordinate.
// The overlap chart W = C^{d-p} x (C*)^p has degree lattice Z^d = (tau; lambda),
// and a chart-i degree c (aligned) pulls back to the W-degree C c, a chart-j degree
// to A c. Both composites M -> Z^d agree: chi = C M_i = A M_j.
struct ChartIntersection {
    std::size_t i = 0, j = 0, d = 0, p = 0;
    std::vector<std::size_t> shared, only_i, only_j;  // ray indices
    std::vector<std::size_t> order_i, order_j;

    FinAbGroup DG_i, DG_j;   // local groups, presentation = chart coordinates in cone order
    FinAbGroup DG_union;     // presentation = rays in (shared, only_i, only_j) order
    FinAbGroup DH;           // torsion of DG_union
    FinAbGroup K_chars;      // X(K) = (DG_i + DG_j) / DH, presentation Z^{2d}
    GroupHom proj1, proj2;   // DG_i -> X(K), DG_j -> X(K)
    IntMatrix phi1, phi2;    // DG_union presentation -> chart presentations (restriction)
    std::vector<IntVec> mu;  // characters of the lambda coordinates, presentation Z^{2d}

    IntMatrix C, A, chi;
    IntMatrix H1, H2;        // Hermite bases of C_pp Z^p and A_pp Z^p (rows)
    std::vector<IntVec> basis1, basis2;

    IntMatrix Cpp() const { return C.block(d - p, d - p, p, p); }
    IntMatrix Cprime() const { return C.block(d - p, 0, p, d - p); }
    IntMatrix App() const { return A.block(d - p, d - p, p, p); }

    // X(K) characters (normalized coordinates) of chart characters and lambda monomials.
    IntVec char_from_i(const IntVec& f_presentation) const;
    IntVec char_from_j(const IntVec& f_presentation) const;
    IntVec mu_char(const IntVec& a) const;
};

ChartIntersection intersect(const StackyFan& fan, std::size_t i, std::size_t j);

// Canonical coset representatives of Z^p / L for L with Hermite row basis H.
IntVec reduce_mod_lattice(const IntMatrix& H, IntVec x);
std::vector<IntVec> lattice_coset_reps(const IntMatrix& H);

const std::vector<IntVec>& basis_monomials(const ChartIntersection& ci, int side);

// Splits the lambda part of a W-degree into (chart exponents, basis monomial):
// w_lambda - C' w_S = C_pp c_N + a on side 1, w_lambda = A_pp c_N + a on side 2.
struct SideSplit {
    IntVec c_nonshared;
    IntVec a;
};
SideSplit split_degree(const ChartIntersection& ci, int side, const IntVec& w);

struct SaturationShift {
    std::vector<Rat> q;  // fractional part of the chart exponent of Q - (0; a)
    IntVec a;
};
std::vector<SaturationShift> saturation_shift(const ChartIntersection& ci, int side, const IntVec& Q);

}  // namespace ts
