#pragma once

#include "toricstack/sheafrep.hpp"

namespace ts {

// Pairings D_i.D_j on a complete simplicial toric surface stack.
struct IntersectionTable {
    std::vector<std::vector<Rat>> D;  // n x n, symmetric
    Rat pair(const IntVec& x, const std::vector<Rat>& y) const;
    Rat pair(const IntVec& x, const IntVec& y) const;
};
IntersectionTable intersection_table(const StackyFan& fan);

// Polarization from the fan file, or the ray-bundle default: Xi = sum of O(D_i), H = sum D_i.
Polarization effective_polarization(const StackyFan& fan);

std::size_t sheaf_rank(const SheafData& s);
IntVec c1(const SheafData& s);
Rat modified_slope(const StackyFan& fan, const Polarization& pol, const SheafData& s);

enum class Stability { stable, strictly_semistable, unstable };
std::string to_string(Stability s);

struct StabilityVerdict {
    Stability verdict = Stability::stable;
    Rat slope;                 // of the rank-2 sheaf
    struct Candidate {
        ProjPoint line;
        IntVec B;              // sub-line-bundle divisor
        Rat slope;
    };
    std::vector<Candidate> candidates;
    std::size_t witness = 0;   // index of the candidate of largest slope
};
StabilityVerdict rank2_slope_stable(const StackyFan& fan, const Polarization& pol, const Rank2ReflexiveData& data);

Rat wps_chi_formula(const Int& a, const Int& b, const Int& c, const Int& x);
Int wps_chi_oracle(const Int& a, const Int& b, const Int& c, const Int& x);
// Lattice points of weighted degree x: #{(i,j,l) >= 0 : a i + b j + c l = x}.
Int weighted_count(const Int& a, const Int& b, const Int& c, const Int& x);

// Number of Xi summands whose fine grading at the fixed point of chart i is alpha.
Int skyscraper_chi(const StackyFan& fan, const Polarization& pol, std::size_t cone, const IntVec& alpha);

// Euler characteristic of O(sum D_r) on a complete toric surface stack, from the
// torus-graded pieces of cohomology.
Int toric_chi(const StackyFan& fan, const IntVec& D);

}  // namespace ts
