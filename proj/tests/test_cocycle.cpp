#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cextdisc/cocycle.hpp"

using namespace cextdisc;
using namespace cextdisc::cocycle;
using abelian::FinGenAbelianGroup;
using abelian::Int;

namespace {

// The Z -> Z/2 example: sigma(i, j) = 1 in Z exactly when i + j = 2.
TwoCocycle z_mod2_extension_cocycle() {
    FinGenAbelianGroup Z2 = FinGenAbelianGroup::cyclic(2);
    FinGenAbelianGroup Z = FinGenAbelianGroup::free_group(1);
    QGroup base(Z2);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    entries[{QElem{{Int(1)}}, QElem{{Int(1)}}}] = Z.element({1});
    return TwoCocycle::table(base, Z, std::move(entries));
}

} // namespace

TEST_CASE("zero table on Z/2 is a valid cocycle") {
    QGroup base(FinGenAbelianGroup::cyclic(2));
    TwoCocycle zero = TwoCocycle::zero_table(base, FinGenAbelianGroup::cyclic(2));
    CHECK(validate_cocycle(zero).valid);
}

TEST_CASE("the Z -> Z/2 extension cocycle validates") {
    TwoCocycle sigma = z_mod2_extension_cocycle();
    CHECK(validate_cocycle(sigma).valid);
    // Already normalized: sigma(0, anything) vanishes.
    TwoCocycle normalized = normalize_cocycle(sigma);
    CHECK(normalized.evaluate(QElem{{Int(1)}}, QElem{{Int(1)}}) ==
          sigma.evaluate(QElem{{Int(1)}}, QElem{{Int(1)}}));
}

TEST_CASE("a corrupted table yields a violating triple") {
    QGroup base(FinGenAbelianGroup::cyclic(2));
    FinGenAbelianGroup N = FinGenAbelianGroup::free_group(1);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    entries[{QElem{{Int(0)}}, QElem{{Int(1)}}}] = N.element({1}); // breaks normalization identity
    TwoCocycle bad = TwoCocycle::table_unchecked(base, N, std::move(entries));
    auto v = validate_cocycle(bad);
    CHECK_FALSE(v.valid);
    REQUIRE(v.witness.has_value());
    const auto& [g, h, k] = *v.witness;
    auto acc = N.add(bad.evaluate(h, k), N.negate(bad.evaluate(base.multiply(g, h), k)));
    acc = N.add(acc, bad.evaluate(g, base.multiply(h, k)));
    acc = N.add(acc, N.negate(bad.evaluate(g, h)));
    CHECK_FALSE(acc.is_zero());
    CHECK_THROWS_WITH_AS(TwoCocycle::table(base, N, {{{QElem{{Int(0)}}, QElem{{Int(1)}}},
                                                      N.element({1})}}),
                         doctest::Contains("ValidationError"), Error);
}

TEST_CASE("normalization clears a constant cocycle") {
    QGroup base(FinGenAbelianGroup::cyclic(2));
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(4);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    for (const QElem& g : base.elements())
        for (const QElem& h : base.elements()) entries[{g, h}] = N.element({3});
    TwoCocycle sigma = TwoCocycle::table(base, N, std::move(entries));
    TwoCocycle normalized = normalize_cocycle(sigma);
    CHECK(normalized.evaluate(base.identity(), base.identity()).is_zero());
    CHECK(is_cohomologous(sigma, normalized).has_value());
}

TEST_CASE("cohomologous: sigma versus itself and versus coboundary shifts") {
    TwoCocycle sigma = z_mod2_extension_cocycle();
    auto cert = is_cohomologous(sigma, sigma);
    REQUIRE(cert.has_value());
    for (const auto& [g, f] : cert->f) CHECK(f.is_zero());

    std::mt19937_64 rng(555);
    const auto& N = sigma.target();
    for (int trial = 0; trial < 5; ++trial) {
        std::map<QElem, cocycle::NElem> f;
        for (const QElem& g : sigma.base().elements())
            f[g] = N.element({Int(static_cast<long>(rng() % 9)) - 4});
        TwoCocycle shifted = add_coboundary(sigma, f);
        CHECK(is_cohomologous(sigma, shifted).has_value());
        CHECK(is_cohomologous(shifted, sigma).has_value());
    }
}

TEST_CASE("Z/4 and Z/2 x Z/2 extensions of Z/2 by Z/2 are inequivalent") {
    QGroup base(FinGenAbelianGroup::cyclic(2));
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    entries[{QElem{{Int(1)}}, QElem{{Int(1)}}}] = N.element({1});
    TwoCocycle sigma = TwoCocycle::table(base, N, std::move(entries));
    TwoCocycle zero = TwoCocycle::zero_table(base, N);
    CHECK_FALSE(is_cohomologous(sigma, zero).has_value());

    // Oracle: exhaust all four functions f: Z/2 -> Z/2.
    bool anyWorks = false;
    for (int f0 = 0; f0 < 2 && !anyWorks; ++f0)
        for (int f1 = 0; f1 < 2 && !anyWorks; ++f1) {
            std::map<QElem, cocycle::NElem> f;
            f[QElem{{Int(0)}}] = N.element({Int(f0)});
            f[QElem{{Int(1)}}] = N.element({Int(f1)});
            anyWorks = (add_coboundary(zero, f) == sigma);
        }
    CHECK_FALSE(anyWorks);
}

TEST_CASE("infinite bases are rejected by the cohomology test") {
    FinGenAbelianGroup Zfree = FinGenAbelianGroup::free_group(1);
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    TwoCocycle a = TwoCocycle::zero_bilinear(Zfree, N);
    CHECK_THROWS_WITH_AS(is_cohomologous(a, a), doctest::Contains("UnsupportedInfiniteBase"), Error);
}

TEST_CASE("bilinear payloads validate by construction and reject torsion mismatches") {
    FinGenAbelianGroup Q({3, 3}, 2);
    FinGenAbelianGroup N({3, 3}, 0);
    std::vector<std::vector<cocycle::NElem>> form(4, std::vector<cocycle::NElem>(4, N.zero()));
    form[0][1] = N.element({1, 0});
    form[0][3] = N.element({0, 1});
    TwoCocycle sigma = TwoCocycle::bilinear(Q, N, form);
    CHECK(validate_cocycle(sigma).valid);

    // A target value not killed by the generator's torsion is rejected.
    FinGenAbelianGroup N4 = FinGenAbelianGroup::cyclic(4);
    std::vector<std::vector<cocycle::NElem>> bad(4, std::vector<cocycle::NElem>(4, N4.zero()));
    bad[0][1] = N4.element({1});
    CHECK_THROWS_WITH_AS(TwoCocycle::bilinear(Q, N4, bad), doctest::Contains("ValidationError"),
                         Error);
}

TEST_CASE("bilinear cocycle identity holds on sampled triples of an infinite base") {
    FinGenAbelianGroup Q({3, 3}, 2);
    FinGenAbelianGroup N({3, 3}, 0);
    std::vector<std::vector<cocycle::NElem>> form(4, std::vector<cocycle::NElem>(4, N.zero()));
    form[0][1] = N.element({1, 0});
    form[0][3] = N.element({0, 1});
    form[2][3] = N.element({2, 1});
    TwoCocycle sigma = TwoCocycle::bilinear(Q, N, form);
    QGroup base = sigma.base();

    std::mt19937_64 rng(77);
    auto randomElem = [&]() {
        return QElem{{Int(static_cast<long>(rng() % 3)), Int(static_cast<long>(rng() % 3)),
                      Int(static_cast<long>(rng() % 11)) - 5, Int(static_cast<long>(rng() % 11)) - 5}};
    };
    for (int trial = 0; trial < 50; ++trial) {
        QElem g = randomElem(), h = randomElem(), k = randomElem();
        auto acc = N.add(sigma.evaluate(h, k), N.negate(sigma.evaluate(base.multiply(g, h), k)));
        acc = N.add(acc, sigma.evaluate(g, base.multiply(h, k)));
        acc = N.add(acc, N.negate(sigma.evaluate(g, h)));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("commutator pairing of the worked example") {
    FinGenAbelianGroup Q({3, 3}, 2);
    FinGenAbelianGroup N({3, 3}, 0);
    std::vector<std::vector<cocycle::NElem>> form(4, std::vector<cocycle::NElem>(4, N.zero()));
    form[0][1] = N.element({1, 0});
    form[0][3] = N.element({0, 1});
    TwoCocycle sigma = TwoCocycle::bilinear(Q, N, form);

    auto a = commutator_pairing(sigma);
    CHECK(a[0][1] == N.element({1, 0}));
    CHECK(a[0][3] == N.element({0, 1}));
    CHECK(a[1][0] == N.negate(N.element({1, 0})));
    for (std::size_t i = 0; i < 4; ++i) CHECK(a[i][i].is_zero());
    CHECK(a[1][3].is_zero());
    CHECK(a[2][3].is_zero());
}

TEST_CASE("trivial and symmetric cocycles have zero pairing") {
    FinGenAbelianGroup Q({2, 2}, 0);
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    auto zeroPairing = commutator_pairing(TwoCocycle::zero_bilinear(Q, N));
    for (const auto& row : zeroPairing)
        for (const auto& v : row) CHECK(v.is_zero());

    std::vector<std::vector<cocycle::NElem>> sym(2, std::vector<cocycle::NElem>(2, N.zero()));
    sym[0][1] = N.element({1});
    sym[1][0] = N.element({1});
    sym[0][0] = N.element({1});
    auto symPairing = commutator_pairing(TwoCocycle::bilinear(Q, N, sym));
    for (const auto& row : symPairing)
        for (const auto& v : row) CHECK(v.is_zero());
}

TEST_CASE("pairing is invariant under coboundary perturbation") {
    QGroup base(FinGenAbelianGroup({2, 2}, 0));
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(4);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    for (const QElem& g : base.elements())
        for (const QElem& h : base.elements())
            entries[{g, h}] = N.element({2 * g.coords[0] * h.coords[1]});
    TwoCocycle sigma = TwoCocycle::table(base, N, std::move(entries));

    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 8; ++trial) {
        std::map<QElem, cocycle::NElem> f;
        for (const QElem& g : base.elements()) f[g] = N.element({Int(static_cast<long>(rng() % 4))});
        TwoCocycle shifted = add_coboundary(sigma, f);
        CHECK(commutator_pairing(shifted) == commutator_pairing(sigma));
    }
}

TEST_CASE("random bilinear pairing antisymmetrizes the form") {
    std::mt19937_64 rng(901);
    FinGenAbelianGroup Q({5, 5}, 1);
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(5);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::vector<cocycle::NElem>> form(3, std::vector<cocycle::NElem>(3, N.zero()));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) form[i][j] = N.element({Int(static_cast<long>(rng() % 5))});
        TwoCocycle sigma = TwoCocycle::bilinear(Q, N, form);
        auto a = commutator_pairing(sigma);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(a[i][j] == N.add(form[i][j], N.negate(form[j][i])));
    }
}

TEST_CASE("table cocycles on non-abelian bases reject the pairing") {
    // S3 as a table group.
    auto mul = [](int a, int b) {
        auto perm = [](int x) {
            switch (x) { // permutations of {0,1,2} encoded 0..5
                case 0: return std::array<int, 3>{0, 1, 2};
                case 1: return std::array<int, 3>{1, 2, 0};
                case 2: return std::array<int, 3>{2, 0, 1};
                case 3: return std::array<int, 3>{0, 2, 1};
                case 4: return std::array<int, 3>{2, 1, 0};
                default: return std::array<int, 3>{1, 0, 2};
            }
        };
        auto pa = perm(a), pb = perm(b);
        std::array<int, 3> comp{pa[pb[0]], pa[pb[1]], pa[pb[2]]};
        for (int c = 0; c < 6; ++c)
            if (perm(c) == comp) return c;
        return -1;
    };
    std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) table[a][b] = static_cast<std::size_t>(mul(a, b));
    QGroup s3{TableGroup(table)};
    CHECK_FALSE(s3.is_commutative());
    TwoCocycle zero = TwoCocycle::zero_table(s3, FinGenAbelianGroup::cyclic(2));
    CHECK(validate_cocycle(zero).valid);
    CHECK_THROWS_WITH_AS(commutator_pairing(zero), doctest::Contains("NonAbelianBase"), Error);
}
