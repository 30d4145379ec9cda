#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cextdisc/cocycle.hpp"
#include "cextdisc/scalars.hpp"

namespace cextdisc::fiber {
class SpecPoint;
}

namespace cextdisc::extension {

using abelian::Int;
using scalars::Cyclotomic;

// Element (n, q) of the central extension group G_σ.
struct GroupPair {
    abelian::GroupElement n;
    QElem q;

    bool operator==(const GroupPair&) const = default;
    auto operator<=>(const GroupPair&) const = default;
    std::string to_string() const;
};

// The group N × Q as a set with (m1,g1)(m2,g2) = (m1+m2+σ(g1,g2), g1g2).
// The cocycle is normalized on construction so (0, 1) is the identity.
class CentralExtensionGroup {
public:
    CentralExtensionGroup(abelian::FinGenAbelianGroup N, cocycle::TwoCocycle sigma);

    const abelian::FinGenAbelianGroup& N() const noexcept { return n_; }
    const QGroup& Q() const noexcept { return sigma_.base(); }
    const cocycle::TwoCocycle& sigma() const noexcept { return sigma_; }

    GroupPair identity() const;
    GroupPair element(abelian::GroupElement n, QElem q) const; // ComponentOutOfRange
    GroupPair from_n(const abelian::GroupElement& n) const;
    GroupPair lift_q(const QElem& q) const;

    GroupPair multiply(const GroupPair& a, const GroupPair& b) const;
    GroupPair inverse(const GroupPair& a) const;
    GroupPair power(const GroupPair& a, const Int& k) const;
    bool commute(const GroupPair& a, const GroupPair& b) const;
    // Commutes with every generator of G_σ (for N and lifted Q generators;
    // exhaustive over Q for table bases).
    bool is_central(const GroupPair& g) const;

    void check(const GroupPair& g) const;

    bool operator==(const CentralExtensionGroup&) const = default;

private:
    abelian::FinGenAbelianGroup n_;
    cocycle::TwoCocycle sigma_;
};

// Finitely supported scalar combination of group elements; elements of both
// H = k[G_σ] and C = k[Z] (support inside the central subgroup) live here.
class AlgebraElement {
public:
    static AlgebraElement zero() { return AlgebraElement(); }
    static AlgebraElement monomial(GroupPair g, Cyclotomic coeff = Cyclotomic::one());

    const std::map<GroupPair, Cyclotomic>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t support_size() const noexcept { return terms_.size(); }
    Cyclotomic coefficient(const GroupPair& g) const;

    void add_term(const GroupPair& g, const Cyclotomic& coeff); // prunes zeros
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const Cyclotomic& c) const;

    bool operator==(const AlgebraElement&) const = default;
    std::string to_string() const;

private:
    std::map<GroupPair, Cyclotomic> terms_;
};

AlgebraElement multiply(const CentralExtensionGroup& G, const AlgebraElement& a,
                        const AlgebraElement& b);
AlgebraElement algebra_power(const CentralExtensionGroup& G, const AlgebraElement& a, unsigned k);

// Central subgroup Z = ⟨N, x_i^{l_i} for free generators x_i, extras⟩ with
// l_i = lcm_j |a_ij|, its finite quotient Q₀, a monomial transversal, and an
// invariant-factor presentation of Z for character/point evaluation.
class CentralSubgroupData {
public:
    const CentralExtensionGroup& group() const noexcept { return group_; }
    std::size_t degree() const noexcept { return transversal_.size(); } // d = |Q₀|

    const std::vector<GroupPair>& z_generators() const noexcept { return zGenerators_; }
    const std::vector<std::string>& generator_names() const noexcept { return zNames_; }
    void set_generator_names(std::vector<std::string> names);

    const abelian::FinGenAbelianGroup& z_abstract() const noexcept { return zAbstract_; }
    // Presentation maps between z-generator exponents and z_abstract coords.
    const abelian::QuotientResult& z_presentation() const noexcept { return zQuotient_; }
    // Abstract invariant-factor generator j as an element of G_σ.
    GroupPair z_abstract_generator(std::size_t j) const;

    // Finite abelian quotient Q₀ = Q/S (abelian bases only: NonAbelianBase).
    const abelian::FinGenAbelianGroup& q0() const;
    abelian::GroupElement q0_class(const QElem& q) const;
    QElem q0_lift(const abelian::GroupElement& cls) const;

    const std::vector<GroupPair>& transversal() const noexcept { return transversal_; }
    std::size_t coset_index(const QElem& q) const;
    // g = z · t_i with z in Z; returns (z, i).
    std::pair<GroupPair, std::size_t> factor(const GroupPair& g) const;

    bool contains_in_z(const GroupPair& g) const;
    // Exponents over z_generators() multiplying to z; SupportOutsideCenter if
    // the element does not lie in Z.
    std::vector<Int> z_exponents(const GroupPair& z) const;
    abelian::GroupElement z_abstract_coords(const GroupPair& z) const;
    GroupPair product_of_z_generators(const std::vector<Int>& exponents) const;

    friend CentralSubgroupData default_central_subgroup(const CentralExtensionGroup& G,
                                                        const std::vector<GroupPair>& extras);

private:
    explicit CentralSubgroupData(CentralExtensionGroup g) : group_(std::move(g)) {}

    CentralExtensionGroup group_;
    std::vector<GroupPair> zGenerators_;
    std::vector<std::string> zNames_;
    std::size_t nGeneratorCount_ = 0; // leading z-generators that lie in N

    abelian::FinGenAbelianGroup zAbstract_;
    abelian::QuotientResult zQuotient_; // free group on z-generators -> Z

    bool abelianBase_ = true;
    abelian::FinGenAbelianGroup q0_;
    abelian::QuotientResult q0Quotient_; // Q -> Q0 (abelian bases)
    std::vector<GroupPair> transversal_;
};

// Z = ⟨N, x_i^{l_i} (free x_i), extras⟩; raises NotCentral if an extra fails
// commutation, InfiniteQuotient if Q₀ is not finite. Table-presented bases
// take Z = N and require extras supported inside N.
CentralSubgroupData default_central_subgroup(const CentralExtensionGroup& G,
                                             const std::vector<GroupPair>& extras = {});

// Regular trace H -> C: trace of the left-multiplication matrix on the
// transversal basis. Support of the result lies inside Z.
AlgebraElement regular_trace(const AlgebraElement& h, const CentralSubgroupData& Z);

// Left-multiplication matrix of h on the transversal basis; entry (i, j) is
// the C-coefficient of t_i in h · t_j.
std::vector<std::vector<AlgebraElement>> left_multiplication_matrix(const AlgebraElement& h,
                                                                    const CentralSubgroupData& Z);

struct CayleyHamiltonResult {
    bool annihilates = false;
    // Characteristic coefficients c_i with χ(x) = Σ c_i x^{d-i}, c_0 = 1,
    // obtained from the power traces via the Newton identities.
    std::vector<AlgebraElement> coefficients;
    AlgebraElement evaluation; // χ_{d,h}(h) computed in H
};

CayleyHamiltonResult cayley_hamilton_check(const AlgebraElement& h, const CentralSubgroupData& Z);

// Gram matrix tr(y_i y_j) over C.
std::vector<std::vector<AlgebraElement>> gram_matrix(const std::vector<AlgebraElement>& tuple,
                                                     const CentralSubgroupData& Z);

// Structure of the Gram matrix of the full transversal basis: exactly one
// nonzero entry d·z per row, so the determinant has a closed product form.
struct TransversalGramInfo {
    bool generalizedPermutation = false;
    std::vector<std::size_t> columnOfRow;
    std::vector<AlgebraElement> rowEntries;
    int permutationSign = 1;
};

TransversalGramInfo transversal_gram_info(const CentralSubgroupData& Z);

// Determinant of the Gram matrix specialized at a point of MaxSpec C
// (defined in fiber.cpp alongside point evaluation).
Cyclotomic gram_determinant_at_point(const std::vector<AlgebraElement>& tuple,
                                     const CentralSubgroupData& Z, const fiber::SpecPoint& p);

} // namespace cextdisc::extension
