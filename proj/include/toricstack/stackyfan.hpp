#pragma once

#include "toricstack/abgrp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ts {

// Malformed input documents; surfaced by the CLI as exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Polarization {
    std::vector<Rat> H;           // ample class as sum h_i D_i
    std::vector<IntVec> Xi;       // generating sheaf summands L_B
};

// N = Z^d + Z/q_1 + ... + Z/q_r, presented as Z^{d+r} / Q Z^r.
struct StackyFan {
    std::size_t d = 0;
    IntVec torsion_factors;
    std::vector<IntVec> rays;                    // in presentation coordinates Z^{d+r}
    std::vector<std::vector<std::size_t>> cones; // top cones, ordered ray indices
    std::vector<std::string> labels;
    std::optional<Polarization> polarization;

    std::size_t n() const { return rays.size(); }
    std::size_t r() const { return torsion_factors.size(); }
    bool free_lattice() const { return torsion_factors.empty(); }
    IntMatrix Q() const;                          // (d+r) x r resolution matrix
    IntMatrix ray_matrix() const;                 // (d+r) x n, rays as columns
    IntMatrix cone_matrix(std::size_t cone) const; // B_sigma, (d+r) x d
};

StackyFan parse_fan_json(const std::string& text);
StackyFan load_fan(const std::string& path);
std::string fan_to_json(const StackyFan& fan);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> failures;
};
ValidationReport validate(const StackyFan& fan);
void require_valid(const StackyFan& fan);  // throws DomainError listing failures

struct GaleDual {
    FinAbGroup DG;
    IntMatrix beta_dual;  // DG.ngens() x n, normalized coordinates of the ray classes
};
GaleDual gale_dual(const StackyFan& fan);

// DG_sigma = coker([B_sigma Q]^T); for free N the presentation coordinates are the
// chart coordinates, so e_k maps to the fine-grading shift eta_k of the k-th ray.
FinAbGroup local_group(const StackyFan& fan, std::size_t cone);

// M_sigma := B_sigma^T (free N only).
IntMatrix torus_weights(const StackyFan& fan, std::size_t cone);

struct BoxElement {
    std::size_t cone = 0;
    std::vector<Rat> q;  // in [0,1)^d
    IntVec point;        // M_sigma * q
    bool operator==(const BoxElement& o) const { return cone == o.cone && point == o.point; }
};
std::vector<BoxElement> box(const StackyFan& fan, std::size_t cone);

// Splits a chart lattice point c = b + M_sigma * l into its box element b and l.
struct BoxSplit {
    BoxElement b;
    IntVec l;
};
BoxSplit box_split(const StackyFan& fan, std::size_t cone, const IntVec& c);

// Cones sharing all their rays with both i and j, reported as ray indices.
std::vector<std::size_t> shared_rays(const StackyFan& fan, std::size_t i, std::size_t j);

void require_free(const StackyFan& fan, const char* what);

}  // namespace ts
