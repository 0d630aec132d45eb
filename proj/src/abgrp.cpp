#include "toricstack/abgrp.hpp"

#include <sstream>

namespace ts {

bool GroupHom::descends() const {
    if (matrix.rows() != target.presentation_dim() || matrix.cols() != source.presentation_dim())
        return false;
    IntMatrix img = matrix * source.relations;
    for (std::size_t j = 0; j < img.cols(); ++j)
        if (!target.is_zero(img.col(j))) return false;
    return true;
}

IntVec GroupHom::apply(const IntVec& v) const { return matrix * v; }

FinAbGroup standard_group(const IntVec& torsion, std::size_t free_rank) {
    IntMatrix rel(torsion.size() + free_rank, torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) rel(i, i) = torsion[i];
    return cokernel(rel);
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    const IntMatrix& ra = a.relations;
    const IntMatrix& rb = b.relations;
    IntMatrix rel(ra.rows() + rb.rows(), ra.cols() + rb.cols());
    for (std::size_t i = 0; i < ra.rows(); ++i)
        for (std::size_t j = 0; j < ra.cols(); ++j) rel(i, j) = ra(i, j);
    for (std::size_t i = 0; i < rb.rows(); ++i)
        for (std::size_t j = 0; j < rb.cols(); ++j) rel(ra.rows() + i, ra.cols() + j) = rb(i, j);
    return cokernel(rel);
}

SubgroupResult hom_kernel(const GroupHom& f) {
    if (!f.descends()) throw DomainError("not a homomorphism");
    const std::size_t a = f.source.presentation_dim();
    // x lies in the preimage lattice iff f x is in the image of the target relations.
    IntMatrix joint = f.matrix.hstack(f.target.relations);
    IntMatrix kb = kernel_basis(joint);
    std::vector<IntVec> gens;
    for (std::size_t j = 0; j < kb.cols(); ++j) {
        IntVec v(a);
        for (std::size_t i = 0; i < a; ++i) v[i] = kb(i, j);
        gens.push_back(v);
    }
    IntMatrix P(a, 0);
    if (!gens.empty()) {
        HermiteDecomposition h = hnf(IntMatrix::from_rows(gens));
        std::vector<IntVec> basis;
        for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) basis.push_back(h.H.row(i));
        if (!basis.empty()) P = IntMatrix::from_cols(basis, a);
    }
    // Source relations lie in the preimage lattice; express them in the basis P.
    const IntMatrix& R = f.source.relations;
    IntMatrix X(P.cols(), R.cols());
    for (std::size_t j = 0; j < R.cols(); ++j) {
        auto sol = solve(P, R.col(j));
        if (!sol) throw std::logic_error("hom_kernel: relation outside preimage lattice");
        for (std::size_t i = 0; i < P.cols(); ++i) X(i, j) = (*sol)[i];
    }
    FinAbGroup k = cokernel(X);
    return {k, GroupHom{k, f.source, P}};
}

QuotientResult hom_cokernel(const GroupHom& f) {
    if (!f.descends()) throw DomainError("not a homomorphism");
    FinAbGroup c = cokernel(f.target.relations.hstack(f.matrix));
    return {c, GroupHom{f.target, c, IntMatrix::identity(f.target.presentation_dim())}};
}

SubgroupResult torsion_subgroup(const FinAbGroup& g) {
    FinAbGroup t = standard_group(g.torsion, 0);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.torsion.size(); ++i) idx.push_back(i);
    IntMatrix inc = g.lift.select_cols(idx);
    return {t, GroupHom{t, g, inc}};
}

FinAbGroup dualize_to_characters(const FinAbGroup& g) {
    // Finite part: e_i maps to the character of weight 1/d_i on the same coordinate.
    // Free part: the dual lattice, identified with Z^r through the dual basis.
    return standard_group(g.torsion, g.free_rank);
}

bool is_injective(const GroupHom& f) {
    SubgroupResult k = hom_kernel(f);
    return k.group.free_rank == 0 && k.group.torsion.empty();
}

bool is_surjective(const GroupHom& f) {
    QuotientResult c = hom_cokernel(f);
    return c.group.free_rank == 0 && c.group.torsion.empty();
}

bool same_invariants(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

std::string describe(const FinAbGroup& g) {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : g.torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (g.free_rank) os << (first ? "" : " + ") << "Z^" << g.free_rank;
    if (first && !g.free_rank) os << "0";
    return os.str();
}

}  // namespace ts
