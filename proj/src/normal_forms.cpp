#include "toricstack/intlinalg.hpp"

#include <stdexcept>

namespace ts {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

}  // namespace

IntVec SmithDecomposition::diagonal() const {
    IntVec d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
        if (x != 0) ++r;
    return r;
}

SmithDecomposition snf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    IntMatrix S = A, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block, ties row-major.
            bool found = false;
            std::size_t pi = 0, pj = 0;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (S(i, j) == 0) continue;
                    Int a = abs_int(S(i, j));
                    if (!found || a < best) {
                        found = true;
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) return {U, S, V};
            S.swap_rows(t, pi);
            U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            V.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Int q = S(i, t) / S(t, t);
                S.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Int q = S(t, j) / S(t, t);
                S.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        S.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            U.negate_row(t);
        }
    }
    return {U, S, V};
}

HermiteDecomposition hnf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    IntMatrix H = A, U = IntMatrix::identity(m);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            bool found = false;
            std::size_t pi = 0;
            Int best;
            for (std::size_t i = r; i < m; ++i) {
                if (H(i, c) == 0) continue;
                Int a = abs_int(H(i, c));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                }
            }
            if (!found) break;
            H.swap_rows(r, pi);
            U.swap_rows(r, pi);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (H(i, c) == 0) continue;
                Int q = floor_div(H(i, c), H(r, c));
                H.add_row_multiple(i, r, -q);
                U.add_row_multiple(i, r, -q);
                if (H(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H(i, c), H(r, c));
            H.add_row_multiple(i, r, -q);
            U.add_row_multiple(i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    return {U, H, pivots};
}

IntMatrix kernel_basis(const IntMatrix& A) {
    const std::size_t n = A.cols();
    if (n == 0) return IntMatrix(0, 0);
    HermiteDecomposition h = hnf(A.transpose());  // U * A^T = H
    std::vector<IntVec> vecs;
    for (std::size_t i = h.pivot_cols.size(); i < n; ++i) vecs.push_back(h.U.row(i));
    if (vecs.empty()) return IntMatrix(n, 0);
    // Canonical basis: Hermite form of the kernel vectors taken as rows.
    HermiteDecomposition k = hnf(IntMatrix::from_rows(vecs));
    std::vector<IntVec> cols;
    for (std::size_t i = 0; i < k.pivot_cols.size(); ++i) cols.push_back(k.H.row(i));
    return IntMatrix::from_cols(cols, n);
}

std::optional<IntVec> solve(const IntMatrix& A, const IntVec& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    SmithDecomposition s = snf(A);
    IntVec ub = s.U * b;
    IntVec y(A.cols(), Int(0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Int d = (i < A.cols()) ? s.S(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    return s.V * y;
}

Int det(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("det: non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    // Fraction-free Bareiss elimination.
    IntMatrix M = A;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& A) { return hnf(A).pivot_cols.size(); }

bool is_unimodular(const IntMatrix& A) {
    if (A.rows() != A.cols()) return false;
    Int d = det(A);
    return d == 1 || d == -1;
}

RatInverse rational_inverse(const IntMatrix& A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("inverse: non-square matrix");
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) M[i][j] = Rat(A(i, j));
        M[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        std::swap(M[p], M[c]);
        Rat inv = 1 / M[c][c];
        for (auto& x : M[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    Int den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) den = lcm(den, boost::multiprecision::denominator(M[i][n + j]));
    IntMatrix num(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = M[i][n + j] * den;
            num(i, j) = boost::multiprecision::numerator(v);
        }
    return {num, den};
}

Int FinAbGroup::order() const {
    if (free_rank != 0) throw std::domain_error("order of an infinite group");
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
}

IntVec FinAbGroup::reduce(IntVec v) const {
    for (std::size_t i = 0; i < torsion.size(); ++i) v[i] = mod_floor(v[i], torsion[i]);
    return v;
}

IntVec FinAbGroup::normalize(const IntVec& p) const { return reduce(basis_change * p); }

IntVec FinAbGroup::lift_vec(const IntVec& v) const { return lift * v; }

bool FinAbGroup::is_zero(const IntVec& p) const {
    for (const auto& x : normalize(p))
        if (x != 0) return false;
    return true;
}

std::vector<IntVec> FinAbGroup::elements() const {
    if (free_rank != 0) throw std::domain_error("cannot enumerate an infinite group");
    std::vector<IntVec> out;
    IntVec cur(torsion.size(), Int(0));
    for (;;) {
        out.push_back(cur);
        std::size_t i = torsion.size();
        while (i > 0) {
            --i;
            if (++cur[i] < torsion[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (torsion.empty()) return out;
    }
}

FinAbGroup cokernel(const IntMatrix& A) {
    const std::size_t m = A.rows();
    SmithDecomposition s = snf(A);
    IntMatrix Uinv = rational_inverse(s.U).num;  // U is unimodular, so den == 1
    std::vector<std::size_t> tors_idx, free_idx;
    FinAbGroup g;
    g.relations = A;
    for (std::size_t i = 0; i < m; ++i) {
        Int d = (i < A.cols()) ? s.S(i, i) : Int(0);
        if (d == 0) free_idx.push_back(i);
        else if (d != 1) {
            tors_idx.push_back(i);
            g.torsion.push_back(d);
        }
    }
    g.free_rank = free_idx.size();
    std::vector<std::size_t> sel = tors_idx;
    sel.insert(sel.end(), free_idx.begin(), free_idx.end());
    g.basis_change = s.U.select_rows(sel);
    g.lift = Uinv.select_cols(sel);
    if (g.basis_change.rows() == 0) g.basis_change = IntMatrix(0, m);
    if (g.lift.cols() == 0) g.lift = IntMatrix(m, 0);
    return g;
}

}  // namespace ts
