#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cextdisc/extension.hpp"
#include "cextdisc/intlinalg.hpp"

namespace cextdisc::fiber {

using abelian::Int;
using extension::AlgebraElement;
using extension::CentralSubgroupData;
using extension::GroupPair;
using scalars::Cyclotomic;

// Maximal ideal of C, identified with a character of the central subgroup Z:
// roots of unity of dividing order on torsion generators of the abstract
// presentation, arbitrary nonzero scalars on free generators.
class SpecPoint {
public:
    static SpecPoint from_abstract_character(const CentralSubgroupData& Z, abelian::Character chi);
    // Images of the named z-generators; checked for multiplicative
    // consistency with the relations of Z (PointShapeMismatch on failure).
    static SpecPoint from_generator_images(const CentralSubgroupData& Z,
                                           const std::vector<Cyclotomic>& images);

    const abelian::Character& abstract_character() const noexcept { return chi_; }
    Cyclotomic evaluate_element(const CentralSubgroupData& Z, const GroupPair& z) const;
    // Image of each z-generator (the user-facing coordinates of the point).
    std::vector<Cyclotomic> generator_images(const CentralSubgroupData& Z) const;
    // Images of the torsion generators only: constant on winding orbits.
    std::vector<Cyclotomic> torsion_class(const CentralSubgroupData& Z) const;

    std::string key(const CentralSubgroupData& Z) const; // deterministic report key
    bool operator==(const SpecPoint&) const = default;

private:
    abelian::Character chi_;
};

// Evaluation of a C-element at a point: a ring homomorphism C -> k.
Cyclotomic evaluate_point(const AlgebraElement& c, const CentralSubgroupData& Z, const SpecPoint& p);

// The fiber algebra H/mH as a twisted group algebra of Q0: basis indexed by
// Q0 elements with e_g · e_h = γ(g,h) e_{gh}.
struct TwistedGroupAlgebra {
    abelian::FinGenAbelianGroup q0;
    std::vector<std::vector<Cyclotomic>> gamma; // |Q0| x |Q0|, by element index

    std::size_t dimension() const noexcept { return gamma.size(); }
    const Cyclotomic& gamma_at(std::size_t i, std::size_t j) const { return gamma[i][j]; }
    // Commutator bicharacter ⟨g,h⟩ = γ(g,h)/γ(h,g).
    Cyclotomic commutator(std::size_t i, std::size_t j) const;
};

TwistedGroupAlgebra fiber_algebra(const CentralSubgroupData& Z, const SpecPoint& p);

// Wedderburn data of a fiber algebra derived from the skew normal form of
// the commutator pairing exponent matrix.
struct FiberStructure {
    unsigned long xiOrder = 1;            // d: order of the chosen root ξ
    intlinalg::IntMatrix pairingExponents; // M(ξ) with entries in [0, d)
    intlinalg::IntMatrix changeOfBasis;    // U with UᵀMU in block normal form
    std::vector<Int> rawBlocks;            // block values of the integer normal form
    std::vector<Int> blockValues;          // canonical nonzero values mod d, in [1, d/2]
    std::vector<Int> blockOrders;          // l_i = d / gcd(d, k_i) for nontrivial blocks
    Int irrepDim = 1;                      // n = Π l_i
    Int blockCount = 1;                    // |Q0| / n²
    Int sd = 1;                            // Σ dim² over irreducibles = |Q0| (semisimple)
    std::vector<Int> stabilizerInvariants; // invariant factors of Π (Z/l_i)²

    bool basic() const { return irrepDim == 1; }
    bool simple() const { return blockCount == 1; }
};

FiberStructure fiber_structure(const CentralSubgroupData& Z, const SpecPoint& p);

// Explicit irreducible representation of the fiber algebra: matrices for all
// |Q0| basis elements, verified multiplicative and of full matrix-algebra
// rank n². Raises RadicalUnavailable when a required root of a
// non-root-of-unity scalar would be needed.
struct Irrep {
    std::size_t dim = 1;
    // basisMatrices[i] is the n x n image of basis element i of the fiber.
    std::vector<std::vector<std::vector<Cyclotomic>>> basisMatrices;
    std::vector<Cyclotomic> basisTraces;
};

Irrep irrep_construct(const CentralSubgroupData& Z, const SpecPoint& p);

// Dimension of the center of a twisted group algebra by exact linear solve;
// equals the number of simple blocks in the semisimple case.
std::size_t center_dimension_oracle(const TwistedGroupAlgebra& A);

struct StabilizerResult {
    std::vector<abelian::Character> characters; // the subgroup of G0 fixing V
    std::vector<Int> invariants;                // its invariant factors
    bool maximallyStable = false;               // |Stab| == (dim V)²
};

// Brute-force stabilizer of V under twisting by characters of Q0, decided by
// equality of trace characters (valid by semisimplicity).
StabilizerResult stabilizer_bruteforce(const CentralSubgroupData& Z, const SpecPoint& p,
                                       const Irrep& V);

// Fibers are isomorphic iff their irreducibles have the same dimension.
bool fibers_isomorphic(const CentralSubgroupData& Z, const SpecPoint& p1, const SpecPoint& p2);

// Exact linear algebra over the cyclotomic field (shared by the oracles).
Cyclotomic cyclotomic_determinant(std::vector<std::vector<Cyclotomic>> M);
std::size_t cyclotomic_rank(std::vector<std::vector<Cyclotomic>> M);

} // namespace cextdisc::fiber
