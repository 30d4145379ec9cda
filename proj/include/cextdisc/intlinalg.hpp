#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cextdisc/error.hpp"

namespace cextdisc::intlinalg {

using Int = mpz_class;

// Dense matrix over arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::vector<Int> column(std::size_t j) const;
    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> apply(const std::vector<Int>& x) const; // matrix * vector

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

// U * A * V = S with S diagonal, nonnegative, each entry dividing the next;
// U and V unimodular.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    std::vector<Int> diagonal() const;
};

// Uᵀ * M * U = antidiagonal blocks [0 k_i; -k_i 0] followed by zeros,
// k_1 | k_2 | ... | k_s, all positive; U unimodular.
struct AlternatingDecomposition {
    IntMatrix U;
    std::vector<Int> blockValues;
    std::size_t zeroTail = 0;

    IntMatrix block_matrix() const; // reconstructs the normal form itself
};

SmithDecomposition smith_normal_form(const IntMatrix& A);
AlternatingDecomposition alternating_normal_form(const IntMatrix& M);

// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& A);

// Inverse of a matrix with determinant ±1; raises ValidationError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& U);

// Basis of { x : A x = 0 } as columns of the returned matrix.
IntMatrix kernel_basis(const IntMatrix& A);

// Some integer solution of A x = b, if one exists.
std::optional<std::vector<Int>> solve_linear(const IntMatrix& A, const std::vector<Int>& b);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

} // namespace cextdisc::intlinalg
