#include "cextdisc/orbits.hpp"

namespace cextdisc::orbits {

using abelian::FinGenAbelianGroup;
using abelian::GroupElement;

CommutatorSubgroupA commutator_subgroup(const CentralExtensionGroup& G) {
    const auto pairing = cocycle::commutator_pairing(G.sigma()); // NonAbelianBase for tables
    const FinGenAbelianGroup& N = G.N();
    CommutatorSubgroupA A;
    for (std::size_t i = 0; i < pairing.size(); ++i)
        for (std::size_t j = i + 1; j < pairing.size(); ++j)
            if (!pairing[i][j].is_zero()) A.generators.push_back(pairing[i][j]);
    A.structure = abelian::subgroup_presentation(N, A.generators);
    return A;
}

Abelianization::Abelianization(CentralExtensionGroup G) : g_(std::move(G)) {
    const FinGenAbelianGroup& N = g_.N();
    const FinGenAbelianGroup& Q = g_.Q().abelian_group(); // NonAbelianBase for tables
    const std::size_t nN = N.generator_count();
    const std::size_t nQ = Q.generator_count();
    FinGenAbelianGroup freeR = FinGenAbelianGroup::free_group(nN + nQ);

    std::vector<GroupElement> relations;
    for (std::size_t j = 0; j < N.torsion_rank(); ++j) {
        std::vector<Int> col(nN + nQ);
        col[j] = N.invariant_factors()[j];
        relations.push_back(freeR.element(col));
    }
    // Lifted torsion relations of Q: x_i^{D_i} equals an element of N.
    for (std::size_t i = 0; i < Q.torsion_rank(); ++i) {
        GroupPair power = g_.power(g_.lift_q(g_.Q().generator(i)), Q.invariant_factors()[i]);
        std::vector<Int> col(nN + nQ);
        std::vector<Int> tau = power.n.coords();
        for (std::size_t j = 0; j < nN; ++j) col[j] = -tau[j];
        col[nN + i] = Q.invariant_factors()[i];
        relations.push_back(freeR.element(col));
    }
    // The commutator subgroup A dies in the abelianization.
    for (const GroupElement& a : commutator_subgroup(g_).generators) {
        std::vector<Int> col(nN + nQ);
        std::vector<Int> coords = a.coords();
        for (std::size_t j = 0; j < nN; ++j) col[j] = coords[j];
        relations.push_back(freeR.element(col));
    }
    quotient_ = abelian::quotient_group(freeR, relations);
}

GroupElement Abelianization::project(const GroupPair& g) const {
    const FinGenAbelianGroup& N = g_.N();
    const FinGenAbelianGroup& Q = g_.Q().abelian_group();
    const std::size_t nN = N.generator_count();
    const std::size_t nQ = Q.generator_count();

    // (n, q) = (n - τ(q), 0) · Π x̃_i^{q_i} with τ(q) the N-part of the
    // ordered generator word for q.
    GroupElement qel = g_.Q().to_group_element(g.q);
    std::vector<Int> qcoords = qel.coords();
    GroupPair word = g_.identity();
    for (std::size_t i = 0; i < nQ; ++i)
        if (qcoords[i] != 0)
            word = g_.multiply(word, g_.power(g_.lift_q(g_.Q().generator(i)), qcoords[i]));
    GroupElement rest = N.add(g.n, N.negate(word.n));

    std::vector<Int> col(nN + nQ);
    std::vector<Int> restCoords = rest.coords();
    for (std::size_t j = 0; j < nN; ++j) col[j] = restCoords[j];
    for (std::size_t i = 0; i < nQ; ++i) col[nN + i] = qcoords[i];
    FinGenAbelianGroup freeR = FinGenAbelianGroup::free_group(nN + nQ);
    return quotient_.project_element(freeR, freeR.element(col));
}

HCharacter::HCharacter(Abelianization ab, abelian::Character chi)
    : ab_(std::move(ab)), chi_(std::move(chi)) {
    if (chi_.images().size() != ab_.group().generator_count())
        raise("DimensionMismatch", "character shape does not match the abelianization");
}

HCharacter HCharacter::trivial(Abelianization ab) {
    abelian::Character chi = abelian::Character::trivial(ab.group());
    return HCharacter(std::move(ab), std::move(chi));
}

Cyclotomic HCharacter::evaluate(const GroupPair& g) const {
    return chi_.evaluate(ab_.project(g));
}

SpecPoint winding_translate(const CentralSubgroupData& Z, const SpecPoint& p, const HCharacter& chi) {
    std::vector<Cyclotomic> images = p.abstract_character().images();
    for (std::size_t j = 0; j < images.size(); ++j)
        images[j] *= chi.evaluate(Z.z_abstract_generator(j));
    return SpecPoint::from_abstract_character(Z, abelian::Character(Z.z_abstract(), images));
}

bool counit_orbit_membership(const CentralSubgroupData& Z, const SpecPoint& p) {
    CommutatorSubgroupA A = commutator_subgroup(Z.group());
    for (const GroupElement& a : A.generators)
        if (!p.evaluate_element(Z, Z.group().from_n(a)).is_one()) return false;
    return true;
}

bool same_winding_orbit(const CentralSubgroupData& Z, const SpecPoint& p1, const SpecPoint& p2) {
    // The ratio character must be trivial on A ∩ Z = A; it then extends from
    // Z/A to the abelianization abstractly (the codomain of an algebraically
    // closed field is divisible), so A-triviality decides the orbit.
    CommutatorSubgroupA A = commutator_subgroup(Z.group());
    for (const GroupElement& a : A.generators) {
        GroupPair ga = Z.group().from_n(a);
        if (p1.evaluate_element(Z, ga) != p2.evaluate_element(Z, ga)) return false;
    }
    return true;
}

} // namespace cextdisc::orbits
