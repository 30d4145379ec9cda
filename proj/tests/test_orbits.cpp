#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cextdisc/orbits.hpp"
#include "fixtures.hpp"

using namespace cextdisc;
using namespace cextdisc::orbits;
using abelian::FinGenAbelianGroup;
using abelian::Int;
using extension::CentralExtensionGroup;
using extension::CentralSubgroupData;
using extension::GroupPair;
using fiber::SpecPoint;
using scalars::Cyclotomic;
using scalars::primitive_root;

namespace {

SpecPoint paper_point(const CentralSubgroupData& Z, const Cyclotomic& u, const Cyclotomic& v,
                      const Cyclotomic& w, const Cyclotomic& x) {
    return SpecPoint::from_generator_images(Z, {u, v, w, x});
}

Cyclotomic one() { return Cyclotomic::one(); }

} // namespace

TEST_CASE("commutator subgroup of the worked example is all of N") {
    CentralExtensionGroup G = fixtures::paper_example_group();
    CommutatorSubgroupA A = commutator_subgroup(G);
    REQUIRE(A.generators.size() == 2);
    CHECK(A.structure == FinGenAbelianGroup({3, 3}, 0));
    // Oracle: antisymmetrize and close by brute force.
    std::set<abelian::GroupElement> closure{G.N().zero()};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<abelian::GroupElement> cur(closure.begin(), closure.end());
        for (const auto& a : cur)
            for (const auto& g : A.generators)
                if (closure.insert(G.N().add(a, g)).second) grew = true;
    }
    CHECK(closure.size() == 9);
}

TEST_CASE("trivial and symmetric cocycles give trivial A") {
    FinGenAbelianGroup Q({2, 2}, 0);
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    CentralExtensionGroup G(N, cocycle::TwoCocycle::zero_bilinear(Q, N));
    CHECK(commutator_subgroup(G).generators.empty());
    CHECK(commutator_subgroup(G).structure.is_trivial());

    std::vector<std::vector<cocycle::NElem>> sym(2, std::vector<cocycle::NElem>(2, N.zero()));
    sym[0][1] = N.element({1});
    sym[1][0] = N.element({1});
    CentralExtensionGroup Gs(N, cocycle::TwoCocycle::bilinear(Q, N, sym));
    CHECK(commutator_subgroup(Gs).generators.empty());
}

TEST_CASE("abelianization projection is a homomorphism") {
    for (const CentralExtensionGroup& G :
         {fixtures::paper_example_group(), fixtures::z_over_z2_group()}) {
        if (!G.Q().is_abelian_presentation()) continue;
        Abelianization ab(G);
        std::mt19937_64 rng(614);
        auto random_pair = [&]() {
            std::vector<Int> nc, qc;
            for (std::size_t j = 0; j < G.N().torsion_rank(); ++j)
                nc.push_back(Int(static_cast<long>(rng() % G.N().invariant_factors()[j].get_ui())));
            for (std::size_t j = 0; j < G.N().free_rank(); ++j)
                nc.push_back(Int(static_cast<long>(rng() % 9)) - 4);
            const auto& Q = G.Q().abelian_group();
            for (std::size_t j = 0; j < Q.torsion_rank(); ++j)
                qc.push_back(Int(static_cast<long>(rng() % Q.invariant_factors()[j].get_ui())));
            for (std::size_t j = 0; j < Q.free_rank(); ++j)
                qc.push_back(Int(static_cast<long>(rng() % 9)) - 4);
            return G.element(G.N().element(nc), QElem{qc});
        };
        const auto& W = ab.group();
        for (int trial = 0; trial < 20; ++trial) {
            GroupPair a = random_pair(), b = random_pair();
            CHECK(ab.project(G.multiply(a, b)) == W.add(ab.project(a), ab.project(b)));
        }
        // Commutator generators die.
        for (const auto& gen : commutator_subgroup(G).generators)
            CHECK(ab.project(G.from_n(gen)).is_zero());
    }
}

TEST_CASE("abelianization of the worked example") {
    CentralExtensionGroup G = fixtures::paper_example_group();
    Abelianization ab(G);
    // A = N here, so G/A = Q = (Z/3)^2 x Z^2.
    CHECK(ab.group() == FinGenAbelianGroup({3, 3}, 2));
}

TEST_CASE("H-characters are multiplicative and trivial on commutators") {
    CentralExtensionGroup G = fixtures::paper_example_group();
    Abelianization ab(G);
    abelian::Character chi(ab.group(), {primitive_root(3), one(), Cyclotomic::from_integer(2),
                                        Cyclotomic::from_rational(scalars::Rational(1, 3))});
    HCharacter h(ab, chi);

    GroupPair a1 = G.lift_q(G.Q().generator(0));
    GroupPair a2 = G.lift_q(G.Q().generator(1));
    CHECK(h.evaluate(G.multiply(a1, a2)) == h.evaluate(a1) * h.evaluate(a2));
    CHECK(h.evaluate(G.from_n(G.N().element({1, 0}))).is_one());
    CHECK(h.evaluate(G.from_n(G.N().element({0, 1}))).is_one());
}

TEST_CASE("winding translate fixes torsion coordinates and scales free ones") {
    CentralSubgroupData Z = fixtures::paper_example_subgroup();
    const CentralExtensionGroup& G = Z.group();
    Abelianization ab(G);
    Cyclotomic z3 = primitive_root(3);

    SpecPoint p = paper_point(Z, z3, one(), one(), Cyclotomic::from_integer(2));

    // Trivial character: fixed point.
    SpecPoint same = winding_translate(Z, p, HCharacter::trivial(ab));
    CHECK(same == p);

    std::mt19937_64 rng(99);
    std::vector<Cyclotomic> freePool = {one(), Cyclotomic::from_integer(2),
                                        Cyclotomic::from_integer(-1),
                                        Cyclotomic::from_rational(scalars::Rational(1, 2)), z3};
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<Cyclotomic> images;
        const auto& W = ab.group();
        for (std::size_t i = 0; i < W.torsion_rank(); ++i)
            images.push_back(scalars::Cyclotomic::root_of_unity(
                W.invariant_factors()[i].get_ui(), static_cast<long>(rng() % 3)));
        for (std::size_t i = 0; i < W.free_rank(); ++i)
            images.push_back(freePool[rng() % freePool.size()]);
        HCharacter chi(ab, abelian::Character(W, images));

        SpecPoint q = winding_translate(Z, p, chi);
        // Torsion coordinates are untouched; every generator image scales by
        // the character value on that generator.
        CHECK(q.torsion_class(Z) == p.torsion_class(Z));
        auto before = p.generator_images(Z);
        auto after = q.generator_images(Z);
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(after[i] == before[i] * chi.evaluate(Z.z_generators()[i]));
        CHECK(same_winding_orbit(Z, p, q));
        // Fiber structure is a winding invariant.
        CHECK(fiber::fiber_structure(Z, p).irrepDim == fiber::fiber_structure(Z, q).irrepDim);
        CHECK(fiber::fiber_structure(Z, p).blockValues == fiber::fiber_structure(Z, q).blockValues);
    }
}

TEST_CASE("counit orbit membership equals the basic locus") {
    CentralSubgroupData Z = fixtures::paper_example_subgroup();
    Cyclotomic z3 = primitive_root(3);
    std::vector<Cyclotomic> roots = {one(), z3, z3 * z3};
    std::vector<Cyclotomic> frees = {one(), Cyclotomic::from_integer(2),
                                     Cyclotomic::from_rational(scalars::Rational(-1, 3))};
    for (const auto& u : roots)
        for (const auto& v : roots)
            for (const auto& w : frees) {
                SpecPoint p = paper_point(Z, u, v, w, frees[1]);
                bool inOrbit = counit_orbit_membership(Z, p);
                CHECK(inOrbit == (u.is_one() && v.is_one()));
                CHECK(inOrbit == fiber::fiber_structure(Z, p).basic());
            }
}

TEST_CASE("winding orbits of the worked example are the torsion classes") {
    CentralSubgroupData Z = fixtures::paper_example_subgroup();
    Cyclotomic z3 = primitive_root(3);
    Cyclotomic two = Cyclotomic::from_integer(2);

    SpecPoint a = paper_point(Z, z3, z3 * z3, one(), one());
    SpecPoint b = paper_point(Z, z3, z3 * z3, two, z3);
    SpecPoint c = paper_point(Z, z3 * z3, z3, one(), one());
    CHECK(same_winding_orbit(Z, a, a));
    CHECK(same_winding_orbit(Z, a, b));
    CHECK(same_winding_orbit(Z, b, a));
    CHECK_FALSE(same_winding_orbit(Z, a, c));
    CHECK_FALSE(same_winding_orbit(Z, b, c));
}

TEST_CASE("same_winding_orbit is an equivalence relation on samples") {
    CentralSubgroupData Z = fixtures::paper_example_subgroup();
    Cyclotomic z3 = primitive_root(3);
    std::vector<SpecPoint> pts;
    std::vector<Cyclotomic> roots = {one(), z3, z3 * z3};
    for (const auto& u : roots)
        for (const auto& w : {one(), Cyclotomic::from_integer(2)})
            pts.push_back(paper_point(Z, u, one(), w, one()));
    for (const auto& p : pts) CHECK(same_winding_orbit(Z, p, p));
    for (const auto& p : pts)
        for (const auto& q : pts) CHECK(same_winding_orbit(Z, p, q) == same_winding_orbit(Z, q, p));
    for (const auto& p : pts)
        for (const auto& q : pts)
            for (const auto& r : pts)
                if (same_winding_orbit(Z, p, q) && same_winding_orbit(Z, q, r))
                    CHECK(same_winding_orbit(Z, p, r));
}

TEST_CASE("non-chain and non-transitivity witnesses from cases II and III") {
    CentralSubgroupData Z = fixtures::paper_example_subgroup();
    const CentralExtensionGroup& G = Z.group();
    Cyclotomic z3 = primitive_root(3);
    SpecPoint pII = paper_point(Z, z3, one(), one(), one());
    SpecPoint pIII = paper_point(Z, one(), z3, one(), one());

    // Isomorphic fibers (both n = 3) on different winding orbits.
    CHECK(fiber::fibers_isomorphic(Z, pII, pIII));
    CHECK_FALSE(same_winding_orbit(Z, pII, pIII));

    // Stabilizer character sets are mutually non-contained.
    auto charSet = [&](const SpecPoint& p) {
        fiber::Irrep V = fiber::irrep_construct(Z, p);
        auto stab = fiber::stabilizer_bruteforce(Z, p, V);
        std::set<std::vector<Cyclotomic>> set;
        for (const auto& chi : stab.characters) {
            std::vector<Cyclotomic> values;
            for (std::size_t g = 0; g < 4; ++g)
                values.push_back(chi.evaluate(Z.q0_class(G.Q().generator(g))));
            set.insert(values);
        }
        return set;
    };
    auto s2 = charSet(pII), s3 = charSet(pIII);
    CHECK(s2.size() == 9);
    CHECK(s3.size() == 9);
    bool s2_in_s3 = std::includes(s3.begin(), s3.end(), s2.begin(), s2.end());
    bool s3_in_s2 = std::includes(s2.begin(), s2.end(), s3.begin(), s3.end());
    CHECK_FALSE(s2_in_s3);
    CHECK_FALSE(s3_in_s2);
}

TEST_CASE("orbit operations reject non-abelian bases") {
    // A table-presented base has no standard generators.
    std::vector<std::vector<std::size_t>> z2 = {{0, 1}, {1, 0}};
    QGroup base{TableGroup(z2)};
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    CentralExtensionGroup G(N, cocycle::TwoCocycle::zero_table(base, N));
    CHECK_THROWS_WITH_AS(commutator_subgroup(G), doctest::Contains("NonAbelianBase"), Error);
}
