#include "cextdisc/fiber.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cextdisc::fiber {

using abelian::FinGenAbelianGroup;
using abelian::GroupElement;
using intlinalg::IntMatrix;

SpecPoint SpecPoint::from_abstract_character(const CentralSubgroupData& Z, abelian::Character chi) {
    try {
        abelian::Character checked(Z.z_abstract(), chi.images());
        SpecPoint p;
        p.chi_ = std::move(checked);
        return p;
    } catch (const Error& e) {
        raise("PointShapeMismatch", std::string("invalid point character: ") + e.what());
    }
}

SpecPoint SpecPoint::from_generator_images(const CentralSubgroupData& Z,
                                           const std::vector<Cyclotomic>& images) {
    if (images.size() != Z.z_generators().size())
        raise("PointShapeMismatch", "expected one image per central generator");
    for (const Cyclotomic& v : images)
        if (v.is_zero()) raise("PointShapeMismatch", "point coordinates must be nonzero");

    // Abstract generator j is the product of the named generators with the
    // lift-matrix exponents, so its image is the corresponding product.
    const IntMatrix& lift = Z.z_presentation().lift;
    std::vector<Cyclotomic> abstractImages;
    for (std::size_t j = 0; j < Z.z_abstract().generator_count(); ++j) {
        Cyclotomic w = Cyclotomic::one();
        for (std::size_t i = 0; i < images.size(); ++i)
            if (lift(i, j) != 0) w *= images[i].pow(lift(i, j));
        abstractImages.push_back(std::move(w));
    }
    SpecPoint p;
    try {
        p.chi_ = abelian::Character(Z.z_abstract(), std::move(abstractImages));
    } catch (const Error& e) {
        raise("PointShapeMismatch", std::string("images are inconsistent with Z: ") + e.what());
    }
    // Consistency: re-evaluating every named generator must recover its image
    // (this is exactly multiplicativity on the relations of Z).
    for (std::size_t i = 0; i < images.size(); ++i)
        if (p.evaluate_element(Z, Z.z_generators()[i]) != images[i])
            raise("PointShapeMismatch",
                  "images violate a relation of the central subgroup (generator " +
                      Z.generator_names()[i] + ")");
    return p;
}

Cyclotomic SpecPoint::evaluate_element(const CentralSubgroupData& Z, const GroupPair& z) const {
    return chi_.evaluate(Z.z_abstract_coords(z));
}

std::vector<Cyclotomic> SpecPoint::generator_images(const CentralSubgroupData& Z) const {
    std::vector<Cyclotomic> images;
    for (const GroupPair& g : Z.z_generators()) images.push_back(evaluate_element(Z, g));
    return images;
}

std::vector<Cyclotomic> SpecPoint::torsion_class(const CentralSubgroupData& Z) const {
    std::vector<Cyclotomic> cls;
    for (std::size_t i = 0; i < Z.z_abstract().torsion_rank(); ++i) cls.push_back(chi_.images()[i]);
    return cls;
}

std::string SpecPoint::key(const CentralSubgroupData& Z) const {
    std::ostringstream out;
    out << "m(";
    std::vector<Cyclotomic> images = generator_images(Z);
    for (std::size_t i = 0; i < images.size(); ++i) {
        out << (i ? "," : "") << Z.generator_names()[i] << "=" << images[i].to_string();
    }
    out << ")";
    return out.str();
}

Cyclotomic evaluate_point(const AlgebraElement& c, const CentralSubgroupData& Z, const SpecPoint& p) {
    Cyclotomic value = Cyclotomic::zero();
    for (const auto& [g, coeff] : c.terms()) value += coeff * p.evaluate_element(Z, g);
    return value;
}

Cyclotomic TwistedGroupAlgebra::commutator(std::size_t i, std::size_t j) const {
    return gamma[i][j] / gamma[j][i];
}

TwistedGroupAlgebra fiber_algebra(const CentralSubgroupData& Z, const SpecPoint& p) {
    TwistedGroupAlgebra A;
    A.q0 = Z.q0();
    const std::size_t d = Z.degree();
    A.gamma.assign(d, std::vector<Cyclotomic>(d));
    const auto& G = Z.group();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto [z, k] = Z.factor(G.multiply(Z.transversal()[i], Z.transversal()[j]));
            A.gamma[i][j] = p.evaluate_element(Z, z);
            if (A.gamma[i][j].is_zero())
                raise("ValidationError", "fiber cocycle evaluated to zero");
        }

    // Associativity spot-check of the twisted multiplication.
    auto elems = A.q0.elements();
    std::size_t stride = std::max<std::size_t>(1, d / 6);
    auto mul_index = [&](std::size_t i, std::size_t j) {
        return A.q0.element_index(A.q0.add(elems[i], elems[j]));
    };
    for (std::size_t i = 0; i < d; i += stride)
        for (std::size_t j = 0; j < d; j += stride)
            for (std::size_t k = 0; k < d; k += stride) {
                Cyclotomic lhs = A.gamma[i][j] * A.gamma[mul_index(i, j)][k];
                Cyclotomic rhs = A.gamma[j][k] * A.gamma[i][mul_index(j, k)];
                if (lhs != rhs) raise("ValidationError", "fiber cocycle is not associative");
            }
    return A;
}

FiberStructure fiber_structure(const CentralSubgroupData& Z, const SpecPoint& p) {
    TwistedGroupAlgebra A = fiber_algebra(Z, p);
    const FinGenAbelianGroup& Q0 = A.q0;
    const std::size_t m = Q0.generator_count();

    FiberStructure fs;
    fs.sd = Q0.order();

    // Specialized commutator values on the standard generators of Q0.
    std::vector<std::size_t> genIndex(m);
    for (std::size_t j = 0; j < m; ++j) genIndex[j] = Q0.element_index(Q0.generator(j));
    std::vector<std::vector<Cyclotomic>> abar(m, std::vector<Cyclotomic>(m));
    unsigned long d = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            abar[i][j] = A.commutator(genIndex[i], genIndex[j]);
            auto ord = abar[i][j].multiplicative_order();
            if (!ord) raise("ValidationError", "specialized pairing value is not a root of unity");
            d = std::lcm(d, *ord);
        }
    fs.xiOrder = d;
    Cyclotomic xi = scalars::primitive_root(d);

    // Exponent matrix M(ξ) and an alternating integer lift.
    fs.pairingExponents = IntMatrix(m, m);
    IntMatrix L(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            unsigned long e = scalars::discrete_log(abar[i][j], xi, d);
            fs.pairingExponents(i, j) = static_cast<long>(e);
            fs.pairingExponents(j, i) = static_cast<long>(e == 0 ? 0 : d - e);
            L(i, j) = static_cast<long>(e);
            L(j, i) = -static_cast<long>(e);
        }

    intlinalg::AlternatingDecomposition nf = intlinalg::alternating_normal_form(L);
    fs.changeOfBasis = nf.U;
    fs.rawBlocks = nf.blockValues;

    Int n = 1;
    for (const Int& k : nf.blockValues) {
        Int kmod = k % d;
        if (kmod == 0) continue; // trivial block modulo d
        Int mirrored = Int(d) - kmod;
        Int canonical = (kmod < mirrored) ? kmod : mirrored;
        Int l = Int(d) / intlinalg::gcd(Int(d), kmod);
        fs.blockValues.push_back(canonical);
        fs.blockOrders.push_back(l);
        n *= l;
    }
    fs.irrepDim = n;
    if (fs.sd % (n * n) != 0)
        raise("ValidationError", "irreducible dimension square does not divide |Q0|");
    fs.blockCount = fs.sd / (n * n);

    fs.stabilizerInvariants.clear();
    for (const Int& l : fs.blockOrders) {
        fs.stabilizerInvariants.push_back(l);
        fs.stabilizerInvariants.push_back(l);
    }
    std::sort(fs.stabilizerInvariants.begin(), fs.stabilizerInvariants.end());
    return fs;
}

namespace {

using Matrix = std::vector<std::vector<Cyclotomic>>;

Matrix matrix_identity(std::size_t n) {
    Matrix I(n, std::vector<Cyclotomic>(n, Cyclotomic::zero()));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = Cyclotomic::one();
    return I;
}

Matrix matrix_multiply(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.size();
    Matrix C(n, std::vector<Cyclotomic>(n, Cyclotomic::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (B[k][j].is_zero()) continue;
                C[i][j] += A[i][k] * B[k][j];
            }
        }
    return C;
}

Matrix matrix_scaled(const Matrix& A, const Cyclotomic& c) {
    Matrix B = A;
    for (auto& row : B)
        for (auto& x : row) x *= c;
    return B;
}

bool matrix_equal(const Matrix& A, const Matrix& B) { return A == B; }

Cyclotomic matrix_trace(const Matrix& A) {
    Cyclotomic t = Cyclotomic::zero();
    for (std::size_t i = 0; i < A.size(); ++i) t += A[i][i];
    return t;
}

// s-th root of a root of unity, via conductor promotion.
Cyclotomic root_of_root_of_unity(const Cyclotomic& lambda, const Int& s) {
    auto ord = lambda.multiplicative_order();
    if (!ord)
        raise("RadicalUnavailable",
              "required radical of a non-root-of-unity scalar: " + lambda.to_string());
    if (!s.fits_ulong_p()) raise("ValidationError", "radical index too large");
    unsigned long si = s.get_ui();
    unsigned long t = scalars::discrete_log(lambda, scalars::primitive_root(*ord), *ord);
    return Cyclotomic::root_of_unity(*ord * si, static_cast<long>(t));
}

} // namespace

Irrep irrep_construct(const CentralSubgroupData& Z, const SpecPoint& p) {
    TwistedGroupAlgebra A = fiber_algebra(Z, p);
    FiberStructure fs = fiber_structure(Z, p);
    const FinGenAbelianGroup& Q0 = A.q0;
    const std::size_t m = Q0.generator_count();
    const unsigned long d = fs.xiOrder;
    Cyclotomic xi = scalars::primitive_root(d);
    const std::vector<GroupElement> elems = Q0.elements();

    // New generators w_j with exponent columns of U; their pairwise
    // commutators are in block normal form.
    const IntMatrix& U = fs.changeOfBasis;
    IntMatrix Uinv = m > 0 ? intlinalg::unimodular_inverse(U) : IntMatrix();

    // Per-block data: the order l_r of each raw block value mod d.
    const std::vector<Int>& raw = fs.rawBlocks;
    std::vector<unsigned long> l(raw.size());
    std::vector<Cyclotomic> xiBlock(raw.size());
    Int nBig = 1;
    for (std::size_t r = 0; r < raw.size(); ++r) {
        Int kmod = raw[r] % d;
        Int lr = Int(d) / intlinalg::gcd(Int(d), kmod);
        l[r] = lr.get_ui();
        xiBlock[r] = xi.pow(raw[r]);
        nBig *= static_cast<long>(l[r]);
    }
    if (nBig != fs.irrepDim) raise("ValidationError", "block dimension bookkeeping failed");
    const std::size_t n = nBig.get_ui();

    // Tensor index helpers over the factors of dimensions l_r.
    std::vector<std::size_t> stride(raw.size(), 1);
    for (std::size_t r = raw.size(); r-- > 1;) stride[r - 1] = stride[r] * l[r];
    auto digit = [&](std::size_t v, std::size_t r) { return (v / stride[r]) % l[r]; };

    // Unscaled generator matrices: block 2r diagonal, block 2r+1 cyclic shift,
    // identity on the zero tail.
    std::vector<Matrix> W0(m, matrix_identity(n));
    for (std::size_t r = 0; r < raw.size(); ++r) {
        Matrix diag(n, std::vector<Cyclotomic>(n, Cyclotomic::zero()));
        Matrix shift(n, std::vector<Cyclotomic>(n, Cyclotomic::zero()));
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t i = digit(v, r);
            diag[v][v] = xiBlock[r].pow(static_cast<long>(i));
            std::size_t w = (i + 1 == l[r]) ? v - stride[r] * (l[r] - 1) : v + stride[r];
            shift[w][v] = Cyclotomic::one();
        }
        W0[2 * r] = std::move(diag);
        W0[2 * r + 1] = std::move(shift);
    }

    // Scalar product of twisted basis elements along a word in the w's.
    auto word_scalar = [&](const std::vector<Int>& expo) {
        Cyclotomic lambda = Cyclotomic::one();
        GroupElement g = Q0.zero();
        for (std::size_t a = 0; a < m; ++a) {
            GroupElement w = Q0.element(U.column(a));
            std::size_t wIdx = Q0.element_index(w);
            GroupElement wInv = Q0.negate(w);
            std::size_t wInvIdx = Q0.element_index(wInv);
            Cyclotomic invCorr = A.gamma[wIdx][wInvIdx].inverse();
            Int e = expo[a];
            while (e > 0) {
                lambda *= A.gamma[Q0.element_index(g)][wIdx];
                g = Q0.add(g, w);
                e -= 1;
            }
            while (e < 0) {
                lambda *= invCorr * A.gamma[Q0.element_index(g)][wInvIdx];
                g = Q0.add(g, wInv);
                e += 1;
            }
        }
        return std::make_pair(lambda, g);
    };

    auto word_matrix = [&](const std::vector<Int>& expo) {
        Matrix M = matrix_identity(n);
        for (std::size_t a = 0; a < m; ++a) {
            if (expo[a] == 0) continue;
            Matrix base = W0[a];
            Int e = expo[a];
            if (e < 0) {
                // W0[2r] and W0[2r+1] have multiplicative order l_r, the zero
                // tail is the identity; invert by repowering.
                unsigned long ord = (a < 2 * raw.size()) ? l[a / 2] : 1;
                Matrix inv = matrix_identity(n);
                for (unsigned long i = 1; i < ord; ++i) inv = matrix_multiply(inv, base);
                if (!matrix_equal(matrix_multiply(inv, base), matrix_identity(n)))
                    raise("ValidationError", "generator matrix inverse construction failed");
                base = std::move(inv);
                e = -e;
            }
            while (e > 0) {
                M = matrix_multiply(M, base);
                e -= 1;
            }
        }
        return M;
    };

    // Solve for the generator scalings: μ^{V_col_b} = rhs_b over the lattice
    // of exponent relations V = U^{-1} diag(D).
    std::vector<Cyclotomic> mu(m, Cyclotomic::one());
    if (m > 0) {
        IntMatrix V(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) V(i, j) = Uinv(i, j) * Q0.invariant_factors()[j];

        std::vector<Cyclotomic> rhs(m);
        for (std::size_t b = 0; b < m; ++b) {
            std::vector<Int> v = V.column(b);
            auto [lambda, g] = word_scalar(v);
            if (!g.is_zero()) raise("ValidationError", "lattice word does not close");
            Matrix Pi = word_matrix(v);
            Cyclotomic s = Pi[0][0];
            if (!matrix_equal(Pi, matrix_scaled(matrix_identity(n), s)))
                raise("ValidationError", "lattice word matrix is not scalar");
            rhs[b] = lambda / s;
        }

        intlinalg::SmithDecomposition sd = intlinalg::smith_normal_form(V);
        std::vector<Cyclotomic> lambdaVars(m, Cyclotomic::one());
        for (std::size_t i = 0; i < m; ++i) {
            Cyclotomic acc = Cyclotomic::one();
            for (std::size_t b = 0; b < m; ++b)
                if (sd.V(b, i) != 0) acc *= rhs[b].pow(sd.V(b, i));
            lambdaVars[i] = root_of_root_of_unity(acc, sd.S(i, i));
        }
        for (std::size_t j = 0; j < m; ++j) {
            Cyclotomic acc = Cyclotomic::one();
            for (std::size_t i = 0; i < m; ++i)
                if (sd.U(i, j) != 0) acc *= lambdaVars[i].pow(sd.U(i, j));
            mu[j] = acc;
        }
    }

    // Representation matrices of every basis element, then exhaustive
    // verification of multiplicativity against the twisted multiplication.
    Irrep rep;
    rep.dim = n;
    rep.basisMatrices.resize(elems.size());
    rep.basisTraces.resize(elems.size());
    for (std::size_t gi = 0; gi < elems.size(); ++gi) {
        std::vector<Int> expo = m > 0 ? Uinv.apply(elems[gi].coords()) : std::vector<Int>{};
        auto [lambda, g] = word_scalar(expo);
        if (Q0.element_index(g) != gi) raise("ValidationError", "word exponents do not reproduce element");
        Cyclotomic muFactor = Cyclotomic::one();
        for (std::size_t a = 0; a < m; ++a)
            if (expo[a] != 0) muFactor *= mu[a].pow(expo[a]);
        rep.basisMatrices[gi] = matrix_scaled(word_matrix(expo), muFactor / lambda);
        rep.basisTraces[gi] = matrix_trace(rep.basisMatrices[gi]);
    }

    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) {
            std::size_t k = Q0.element_index(Q0.add(elems[i], elems[j]));
            Matrix lhs = matrix_multiply(rep.basisMatrices[i], rep.basisMatrices[j]);
            Matrix rhs = matrix_scaled(rep.basisMatrices[k], A.gamma[i][j]);
            if (!matrix_equal(lhs, rhs))
                raise("ValidationError", "irrep failed the multiplication table verification");
        }

    // Irreducibility: the images span the full matrix algebra.
    std::vector<std::vector<Cyclotomic>> flat(elems.size(), std::vector<Cyclotomic>(n * n));
    for (std::size_t gi = 0; gi < elems.size(); ++gi)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) flat[gi][r * n + c] = rep.basisMatrices[gi][r][c];
    if (cyclotomic_rank(std::move(flat)) != n * n)
        raise("ValidationError", "constructed representation is not irreducible");
    return rep;
}

std::size_t center_dimension_oracle(const TwistedGroupAlgebra& A) {
    const std::size_t n = A.dimension();
    const std::vector<GroupElement> elems = A.q0.elements();
    // z = Σ λ_h e_h is central iff for all g, h: λ_h (γ(h,g) - γ(g,h)) = 0.
    std::vector<std::vector<Cyclotomic>> M(n * n, std::vector<Cyclotomic>(n, Cyclotomic::zero()));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            M[g * n + h][h] = A.gamma[h][g] - A.gamma[g][h];
    return n - cyclotomic_rank(std::move(M));
}

StabilizerResult stabilizer_bruteforce(const CentralSubgroupData& Z, const SpecPoint& p,
                                       const Irrep& V) {
    const FinGenAbelianGroup& Q0 = Z.q0();
    FiberStructure fs = fiber_structure(Z, p);
    if (Int(static_cast<long>(V.dim)) != fs.irrepDim)
        raise("DimensionMismatch", "irrep dimension disagrees with the fiber structure");

    const std::vector<GroupElement> elems = Q0.elements();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (!V.basisTraces[i].is_zero()) support.push_back(i);

    StabilizerResult result;
    std::vector<GroupElement> subgroupElems;
    for (const abelian::Character& chi : abelian::enumerate_characters(Q0)) {
        bool fixes = true;
        for (std::size_t i : support)
            if (!chi.evaluate(elems[i]).is_one()) {
                fixes = false;
                break;
            }
        if (fixes) result.characters.push_back(chi);
    }

    // Structure of the stabilizer as a subgroup of the dual group (identified
    // with Q0 via exponent tuples on the standard generators).
    std::vector<GroupElement> expTuples;
    for (const abelian::Character& chi : result.characters) {
        std::vector<Int> coords(Q0.generator_count());
        for (std::size_t i = 0; i < Q0.generator_count(); ++i) {
            unsigned long di = Q0.invariant_factors()[i].get_ui();
            coords[i] = static_cast<long>(
                scalars::discrete_log(chi.images()[i], scalars::primitive_root(di), di));
        }
        expTuples.push_back(Q0.element(coords));
    }
    result.invariants = abelian::subgroup_invariants(Q0, expTuples);
    result.maximallyStable =
        Int(static_cast<long>(result.characters.size())) == fs.irrepDim * fs.irrepDim;
    return result;
}

bool fibers_isomorphic(const CentralSubgroupData& Z, const SpecPoint& p1, const SpecPoint& p2) {
    return fiber_structure(Z, p1).irrepDim == fiber_structure(Z, p2).irrepDim;
}

Cyclotomic cyclotomic_determinant(std::vector<std::vector<Cyclotomic>> M) {
    const std::size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n) raise("DimensionMismatch", "determinant of non-square matrix");
    Cyclotomic det = Cyclotomic::one();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && M[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return Cyclotomic::zero();
        if (pivot != k) {
            std::swap(M[pivot], M[k]);
            det = -det;
        }
        det *= M[k][k];
        Cyclotomic inv = M[k][k].inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M[i][k].is_zero()) continue;
            Cyclotomic f = M[i][k] * inv;
            for (std::size_t j = k; j < n; ++j) M[i][j] -= f * M[k][j];
        }
    }
    return det;
}

std::size_t cyclotomic_rank(std::vector<std::vector<Cyclotomic>> M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && M[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[pivot], M[rank]);
        Cyclotomic inv = M[rank][c].inverse();
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (M[i][c].is_zero()) continue;
            Cyclotomic f = M[i][c] * inv;
            for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace cextdisc::fiber

namespace cextdisc::extension {

Cyclotomic gram_determinant_at_point(const std::vector<AlgebraElement>& tuple,
                                     const CentralSubgroupData& Z, const fiber::SpecPoint& p) {
    auto M = gram_matrix(tuple, Z);
    std::vector<std::vector<Cyclotomic>> values(M.size(), std::vector<Cyclotomic>(M.size()));
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j)
            values[i][j] = fiber::evaluate_point(M[i][j], Z, p);
    return fiber::cyclotomic_determinant(std::move(values));
}

} // namespace cextdisc::extension
