#pragma once

// Shared example constructions used across the test suites.

#include <map>

#include "cextdisc/extension.hpp"

namespace fixtures {

using namespace cextdisc;
using abelian::FinGenAbelianGroup;
using abelian::Int;

// The worked example: Q = Z/3 x Z/3 x Z x Z, N = (Z/3)^2,
// sigma(a1, a2) = c1, sigma(a1, a4) = c2, central subgroup <c1,c2,a3,a4^3>.
inline extension::CentralExtensionGroup paper_example_group() {
    FinGenAbelianGroup Q({3, 3}, 2);
    FinGenAbelianGroup N({3, 3}, 0);
    std::vector<std::vector<cocycle::NElem>> form(4, std::vector<cocycle::NElem>(4, N.zero()));
    form[0][1] = N.element({1, 0});
    form[0][3] = N.element({0, 1});
    return extension::CentralExtensionGroup(N, cocycle::TwoCocycle::bilinear(Q, N, form));
}

inline extension::CentralSubgroupData paper_example_subgroup() {
    extension::CentralExtensionGroup G = paper_example_group();
    extension::GroupPair a3 = G.lift_q(G.Q().generator(2));
    extension::CentralSubgroupData Z = extension::default_central_subgroup(G, {a3});
    Z.set_generator_names({"c1", "c2", "a3", "b"});
    return Z;
}

// Heisenberg-type example: Q = (Z/2)^2, N = Z/2, sigma given as a full table
// with sigma(g, h) = g_1 h_2 mod 2. The extension group has 8 elements with
// center N; the fiber at the nontrivial character is the 2x2 matrix algebra.
inline extension::CentralExtensionGroup heisenberg_group() {
    FinGenAbelianGroup Q({2, 2}, 0);
    FinGenAbelianGroup N = FinGenAbelianGroup::cyclic(2);
    QGroup base(Q);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    for (const QElem& g : base.elements())
        for (const QElem& h : base.elements())
            entries[{g, h}] = N.element({g.coords[0] * h.coords[1]});
    return extension::CentralExtensionGroup(N, cocycle::TwoCocycle::table(base, N, entries));
}

inline extension::CentralSubgroupData heisenberg_subgroup() {
    extension::CentralSubgroupData Z = extension::default_central_subgroup(heisenberg_group());
    Z.set_generator_names({"c"});
    return Z;
}

// The Z -> Z/2 extension: N = Z, Q = Z/2, sigma(1,1) = 1.
inline extension::CentralExtensionGroup z_over_z2_group() {
    FinGenAbelianGroup Q = FinGenAbelianGroup::cyclic(2);
    FinGenAbelianGroup N = FinGenAbelianGroup::free_group(1);
    QGroup base(Q);
    std::map<std::pair<QElem, QElem>, cocycle::NElem> entries;
    entries[{QElem{{Int(1)}}, QElem{{Int(1)}}}] = N.element({1});
    return extension::CentralExtensionGroup(N, cocycle::TwoCocycle::table(base, N, entries));
}

} // namespace fixtures
