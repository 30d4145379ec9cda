#pragma once

#include <vector>

#include "cextdisc/extension.hpp"
#include "cextdisc/fiber.hpp"

namespace cextdisc::orbits {

using abelian::Int;
using extension::CentralExtensionGroup;
using extension::CentralSubgroupData;
using extension::GroupPair;
using fiber::SpecPoint;
using scalars::Cyclotomic;

// The subgroup A ⊴ N generated by the antisymmetrized cocycle values; it is
// the commutator subgroup of G_σ, and G_σ/A is abelian.
struct CommutatorSubgroupA {
    std::vector<abelian::GroupElement> generators; // nonzero pairing values in N
    abelian::FinGenAbelianGroup structure;         // abstract form of ⟨A⟩
};

CommutatorSubgroupA commutator_subgroup(const CentralExtensionGroup& G); // NonAbelianBase

// Invariant-factor presentation of the abelianization G_σ/⟨A⟩ together with
// the projection of group elements.
class Abelianization {
public:
    explicit Abelianization(CentralExtensionGroup G);

    const CentralExtensionGroup& extension() const noexcept { return g_; }
    const abelian::FinGenAbelianGroup& group() const noexcept { return quotient_.quotient; }
    abelian::GroupElement project(const GroupPair& g) const;

private:
    CentralExtensionGroup g_;
    abelian::QuotientResult quotient_; // free group on N- and Q-generators -> G/A
};

// Character of H = k[G_σ], i.e. a multiplicative map on G_σ trivial on the
// commutators: a character of the abelianization.
class HCharacter {
public:
    HCharacter(Abelianization ab, abelian::Character chi);
    static HCharacter trivial(Abelianization ab);

    const Abelianization& abelianization() const noexcept { return ab_; }
    const abelian::Character& character() const noexcept { return chi_; }
    Cyclotomic evaluate(const GroupPair& g) const;

private:
    Abelianization ab_;
    abelian::Character chi_;
};

// Winding translate of a point: (χ·p)(z) = χ(z)·p(z); left and right winding
// coincide on these cocommutative algebras.
SpecPoint winding_translate(const CentralSubgroupData& Z, const SpecPoint& p, const HCharacter& chi);

// The point lies on the winding orbit of the counit ideal iff it kills every
// generator of A, which is also the basic-locus predicate.
bool counit_orbit_membership(const CentralSubgroupData& Z, const SpecPoint& p);

// Two points lie on one winding orbit iff their ratio character is trivial
// on A; extendability of the ratio from Z to G_σ/A over an algebraically
// closed field is then automatic (the codomain is divisible), so no radicals
// are ever constructed.
bool same_winding_orbit(const CentralSubgroupData& Z, const SpecPoint& p1, const SpecPoint& p2);

} // namespace cextdisc::orbits
