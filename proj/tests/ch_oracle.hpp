#pragma once

// Characteristic-polynomial oracle: Faddeev-LeVerrier over the commutative
// coefficient ring C = k[Z], independent of the Newton-identity route used by
// the library.

#include "cextdisc/extension.hpp"

namespace oracles {

using cextdisc::extension::AlgebraElement;
using cextdisc::extension::CentralExtensionGroup;
using cextdisc::extension::CentralSubgroupData;

using CMatrix = std::vector<std::vector<AlgebraElement>>;

inline CMatrix cmatrix_multiply(const CentralExtensionGroup& G, const CMatrix& A, const CMatrix& B) {
    const std::size_t n = A.size();
    CMatrix C(n, std::vector<AlgebraElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (B[k][j].is_zero()) continue;
                C[i][j] = C[i][j] + cextdisc::extension::multiply(G, A[i][k], B[k][j]);
            }
        }
    return C;
}

inline AlgebraElement cmatrix_trace(const CMatrix& A) {
    AlgebraElement t;
    for (std::size_t i = 0; i < A.size(); ++i) t = t + A[i][i];
    return t;
}

// Coefficients c_0 = 1, c_1, ..., c_n of det(xI - M) = sum c_i x^{n-i}.
inline std::vector<AlgebraElement> char_poly_faddeev(const CentralSubgroupData& Z, const CMatrix& M) {
    const CentralExtensionGroup& G = Z.group();
    const std::size_t n = M.size();
    AlgebraElement unit = AlgebraElement::monomial(G.identity());

    std::vector<AlgebraElement> c(n + 1);
    c[0] = unit;
    CMatrix Mk = M;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            // M_k = M (M_{k-1} + c_{k-1} I)
            CMatrix shifted = Mk;
            for (std::size_t i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] + c[k - 1];
            Mk = cmatrix_multiply(G, M, shifted);
        }
        using cextdisc::scalars::Cyclotomic;
        using cextdisc::scalars::Rational;
        c[k] = (-cmatrix_trace(Mk))
                   .scaled(Cyclotomic::from_rational(Rational(1, static_cast<long>(k))));
    }
    return c;
}

} // namespace oracles
