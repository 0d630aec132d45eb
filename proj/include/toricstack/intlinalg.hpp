#pragma once

#include "toricstack/bigint.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ts {

// Dense integer matrix with exact entries. 0 rows or 0 cols is legal.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);
    static IntMatrix from_cols(const std::vector<IntVec>& cols, std::size_t rows = 0);
    static IntMatrix diagonal(const IntVec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    IntMatrix transpose() const;
    IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    IntMatrix hstack(const IntMatrix& other) const;
    IntMatrix vstack(const IntMatrix& other) const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& o) const = default;

    bool is_zero() const;
    std::string str() const;

    // Elementary operations used by the normal-form routines.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);  // row dst += k*row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);  // col dst += k*col src
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

struct SmithDecomposition {
    IntMatrix U, S, V;  // U*A*V = S
    IntVec diagonal() const;
    std::size_t rank() const;
};

struct HermiteDecomposition {
    IntMatrix U, H;  // U*A = H, H in row echelon form
    std::vector<std::size_t> pivot_cols;
};

SmithDecomposition snf(const IntMatrix& A);
HermiteDecomposition hnf(const IntMatrix& A);

// Columns form a lattice basis of {v : A v = 0}.
IntMatrix kernel_basis(const IntMatrix& A);

// One integer solution of A x = b, if any.
std::optional<IntVec> solve(const IntMatrix& A, const IntVec& b);

Int det(const IntMatrix& A);
std::size_t rank(const IntMatrix& A);
bool is_unimodular(const IntMatrix& A);

// Rational inverse of a square nonsingular matrix, returned as (adjugate-like N, d)
// with A^{-1} = N / d and d > 0.
struct RatInverse {
    IntMatrix num;
    Int den;
};
RatInverse rational_inverse(const IntMatrix& A);

// Finitely generated abelian group Z^m / im(relations), normalized to
// Z/d_1 + ... + Z/d_t + Z^free with d_i >= 2 and d_i | d_{i+1}.
struct FinAbGroup {
    IntMatrix relations;     // m x k presentation
    IntVec torsion;          // invariant factors, each >= 2
    std::size_t free_rank = 0;
    IntMatrix basis_change;  // (t+free) x m: presentation coords -> normalized coords
    IntMatrix lift;          // m x (t+free): normalized generators in presentation coords

    std::size_t presentation_dim() const { return relations.rows(); }
    std::size_t ngens() const { return torsion.size() + free_rank; }
    bool is_finite() const { return free_rank == 0; }
    Int order() const;  // requires finite

    // Normalized, canonical coordinates of a presentation vector.
    IntVec normalize(const IntVec& presentation_vec) const;
    IntVec reduce(IntVec normalized) const;
    IntVec lift_vec(const IntVec& normalized) const;
    bool is_zero(const IntVec& presentation_vec) const;
    // All elements (finite groups only) in normalized coordinates, lexicographic.
    std::vector<IntVec> elements() const;
};

FinAbGroup cokernel(const IntMatrix& A);

}  // namespace ts
