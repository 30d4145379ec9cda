#include "cextdisc/intlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace cextdisc::intlinalg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        raise("ValidationError", "entry count does not match matrix shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            raise("ValidationError", "ragged row in matrix literal");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) raise("DimensionMismatch", "matrix product shape");
    IntMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    std::vector<Int> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) raise("DimensionMismatch", "matrix-vector product shape");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) out << (*this)(i, j) << (j + 1 < cols_ ? " " : "");
        out << (i + 1 < rows_ ? ";\n" : "]");
    }
    return out.str();
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::size_t n = std::min(S.rows(), S.cols());
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = S(i, i);
    return d;
}

namespace {

// Smallest |entry| in S[k:,k:]; ties resolved by lowest (row, col).
bool find_pivot(const IntMatrix& S, std::size_t k, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = k; i < S.rows(); ++i)
        for (std::size_t j = k; j < S.cols(); ++j) {
            const Int& e = S(i, j);
            if (e == 0) continue;
            Int a = abs(e);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

bool row_col_cleared(const IntMatrix& S, std::size_t k) {
    for (std::size_t i = k + 1; i < S.rows(); ++i)
        if (S(i, k) != 0) return false;
    for (std::size_t j = k + 1; j < S.cols(); ++j)
        if (S(k, j) != 0) return false;
    return true;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    SmithDecomposition d;
    d.U = IntMatrix::identity(A.rows());
    d.V = IntMatrix::identity(A.cols());
    d.S = A;
    IntMatrix& S = d.S;

    const std::size_t nmin = std::min(A.rows(), A.cols());
    for (std::size_t k = 0; k < nmin; ++k) {
        for (;;) {
            std::size_t pi = k, pj = k;
            if (!find_pivot(S, k, pi, pj)) break;
            S.swap_rows(k, pi);
            d.U.swap_rows(k, pi);
            S.swap_cols(k, pj);
            d.V.swap_cols(k, pj);

            for (std::size_t i = k + 1; i < S.rows(); ++i) {
                if (S(i, k) == 0) continue;
                Int q = S(i, k) / S(k, k); // truncated division keeps |remainder| < |pivot|
                S.add_row_multiple(i, k, -q);
                d.U.add_row_multiple(i, k, -q);
            }
            for (std::size_t j = k + 1; j < S.cols(); ++j) {
                if (S(k, j) == 0) continue;
                Int q = S(k, j) / S(k, k);
                S.add_col_multiple(j, k, -q);
                d.V.add_col_multiple(j, k, -q);
            }
            if (!row_col_cleared(S, k)) continue;

            // Pivot must divide the rest of the submatrix for the divisibility chain.
            bool divides_all = true;
            for (std::size_t i = k + 1; i < S.rows() && divides_all; ++i)
                for (std::size_t j = k + 1; j < S.cols(); ++j)
                    if (S(i, j) % S(k, k) != 0) {
                        S.add_row_multiple(k, i, 1);
                        d.U.add_row_multiple(k, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (S(k, k) < 0) {
            S.negate_row(k);
            d.U.negate_row(k);
        }
    }
    return d;
}

Int determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) raise("DimensionMismatch", "determinant of non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t swap = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (M(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap == k) return 0;
            M.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(M(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
    if (U.rows() != U.cols()) raise("DimensionMismatch", "inverse of non-square matrix");
    SmithDecomposition d = smith_normal_form(U);
    for (std::size_t i = 0; i < U.rows(); ++i)
        if (d.S(i, i) != 1) raise("ValidationError", "matrix is not unimodular");
    // P U Q = I  =>  U^{-1} = Q P
    return d.V * d.U;
}

IntMatrix kernel_basis(const IntMatrix& A) {
    SmithDecomposition d = smith_normal_form(A);
    std::vector<std::size_t> free_cols;
    const std::size_t nmin = std::min(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        if (j >= nmin || d.S(j, j) == 0) free_cols.push_back(j);
    IntMatrix K(A.cols(), free_cols.size());
    for (std::size_t c = 0; c < free_cols.size(); ++c)
        for (std::size_t i = 0; i < A.cols(); ++i) K(i, c) = d.V(i, free_cols[c]);
    return K;
}

std::optional<std::vector<Int>> solve_linear(const IntMatrix& A, const std::vector<Int>& b) {
    if (b.size() != A.rows()) raise("DimensionMismatch", "solve_linear rhs shape");
    SmithDecomposition d = smith_normal_form(A);
    std::vector<Int> c = d.U.apply(b);
    std::vector<Int> y(A.cols());
    const std::size_t nmin = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Int s = (i < nmin) ? d.S(i, i) : Int(0);
        if (s == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % s != 0) return std::nullopt;
            if (i < A.cols()) y[i] = c[i] / s;
        }
    }
    return d.V.apply(y);
}

namespace {

// Smallest |entry| strictly above the diagonal of M[p:,p:].
bool find_alt_pivot(const IntMatrix& M, std::size_t p, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = p; i < M.rows(); ++i)
        for (std::size_t j = i + 1; j < M.cols(); ++j) {
            const Int& e = M(i, j);
            if (e == 0) continue;
            Int a = abs(e);
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

// Congruence transform M -> EᵀME for the elementary op "col dst += f * col src",
// applied to both sides; U accumulates the column operations.
void congr_add(IntMatrix& M, IntMatrix& U, std::size_t dst, std::size_t src, const Int& f) {
    M.add_col_multiple(dst, src, f);
    M.add_row_multiple(dst, src, f);
    U.add_col_multiple(dst, src, f);
}

void congr_swap(IntMatrix& M, IntMatrix& U, std::size_t a, std::size_t b) {
    M.swap_cols(a, b);
    M.swap_rows(a, b);
    U.swap_cols(a, b);
}

void congr_negate(IntMatrix& M, IntMatrix& U, std::size_t a) {
    M.negate_col(a);
    M.negate_row(a);
    U.negate_col(a);
}

} // namespace

IntMatrix AlternatingDecomposition::block_matrix() const {
    std::size_t n = 2 * blockValues.size() + zeroTail;
    IntMatrix B(n, n);
    for (std::size_t r = 0; r < blockValues.size(); ++r) {
        B(2 * r, 2 * r + 1) = blockValues[r];
        B(2 * r + 1, 2 * r) = -blockValues[r];
    }
    return B;
}

AlternatingDecomposition alternating_normal_form(const IntMatrix& M0) {
    if (M0.rows() != M0.cols()) raise("NotAlternating", "matrix is not square");
    const std::size_t n = M0.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (M0(i, j) != -M0(j, i) || (i == j && M0(i, i) != 0))
                raise("NotAlternating", "matrix transpose is not its negative");

    IntMatrix M = M0;
    IntMatrix U = IntMatrix::identity(n);
    std::vector<Int> blocks;

    std::size_t p = 0;
    while (p + 1 < n) {
        std::size_t pi = p, pj = p + 1;
        if (!find_alt_pivot(M, p, pi, pj)) break;
        congr_swap(M, U, p, pi); // pj > pi >= p, so the pivot column is not displaced
        congr_swap(M, U, p + 1, pj);
        if (M(p, p + 1) < 0) congr_negate(M, U, p + 1);

        // Reduce row p and row p+1 against the pivot pair; restart on remainder.
        bool reduced = true;
        for (std::size_t j = p + 2; j < n; ++j) {
            if (M(p, j) != 0) {
                Int q = M(p, j) / M(p, p + 1);
                congr_add(M, U, j, p + 1, -q);
                if (M(p, j) != 0) reduced = false;
            }
            if (M(p + 1, j) != 0) {
                Int q = M(p + 1, j) / M(p + 1, p);
                congr_add(M, U, j, p, -q);
                if (M(p + 1, j) != 0) reduced = false;
            }
        }
        if (!reduced) continue;

        // Divisibility chain: the pivot must divide every remaining entry.
        bool divides_all = true;
        for (std::size_t i = p + 2; i < n && divides_all; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (M(i, j) % M(p, p + 1) != 0) {
                    congr_add(M, U, p, i, 1);
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;

        blocks.push_back(M(p, p + 1));
        p += 2;
    }

    AlternatingDecomposition result;
    result.U = U;
    result.blockValues = std::move(blocks);
    result.zeroTail = n - 2 * result.blockValues.size();

    // Re-verify the congruence identity before returning.
    IntMatrix check = U.transpose() * M0 * U;
    if (check != result.block_matrix())
        raise("ValidationError", "alternating normal form self-check failed");
    Int du = determinant(U);
    if (du != 1 && du != -1)
        raise("ValidationError", "alternating normal form transform is not unimodular");
    return result;
}

} // namespace cextdisc::intlinalg
