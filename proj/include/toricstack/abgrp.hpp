#pragma once

#include "toricstack/intlinalg.hpp"

#include <stdexcept>
#include <string>

namespace ts {

// Raised for mathematically invalid requests; surfaced by the CLI as exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupHom {
    FinAbGroup source;
    FinAbGroup target;
    IntMatrix matrix;  // target.presentation_dim() x source.presentation_dim()

    bool descends() const;
    IntVec apply(const IntVec& source_presentation_vec) const;  // presentation coords
};

struct SubgroupResult {
    FinAbGroup group;
    GroupHom inclusion;
};

struct QuotientResult {
    FinAbGroup group;
    GroupHom projection;
};

// Group presented by a diagonal of invariant factors plus a free part.
FinAbGroup standard_group(const IntVec& torsion, std::size_t free_rank);
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

SubgroupResult hom_kernel(const GroupHom& f);
QuotientResult hom_cokernel(const GroupHom& f);
SubgroupResult torsion_subgroup(const FinAbGroup& g);
FinAbGroup dualize_to_characters(const FinAbGroup& g);

bool is_injective(const GroupHom& f);
bool is_surjective(const GroupHom& f);
bool same_invariants(const FinAbGroup& a, const FinAbGroup& b);
std::string describe(const FinAbGroup& g);

}  // namespace ts
