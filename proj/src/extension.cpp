#include "cextdisc/extension.hpp"

#include <algorithm>
#include <sstream>

namespace cextdisc::extension {

using abelian::FinGenAbelianGroup;
using abelian::GroupElement;
using intlinalg::IntMatrix;

std::string GroupPair::to_string() const {
    return "(" + n.to_string() + "; " + q.to_string() + ")";
}

CentralExtensionGroup::CentralExtensionGroup(FinGenAbelianGroup N, cocycle::TwoCocycle sigma)
    : n_(std::move(N)), sigma_(cocycle::normalize_cocycle(sigma)) {
    if (sigma_.target() != n_)
        raise("DimensionMismatch", "cocycle target group is not N");
    if (sigma_.payload() == cocycle::TwoCocycle::Payload::Table) {
        auto v = cocycle::validate_cocycle(sigma_);
        if (!v.valid)
            raise("ValidationError", "extension requires a valid cocycle; identity fails at (" +
                                         (*v.witness)[0].to_string() + ", " + (*v.witness)[1].to_string() +
                                         ", " + (*v.witness)[2].to_string() + ")");
        // Spot-verify associativity of the induced multiplication.
        std::vector<QElem> elems = Q().elements();
        std::size_t stride = std::max<std::size_t>(1, elems.size() / 8);
        std::vector<GroupPair> sample;
        for (std::size_t i = 0; i < elems.size(); i += stride) sample.push_back(lift_q(elems[i]));
        for (const GroupPair& a : sample)
            for (const GroupPair& b : sample)
                for (const GroupPair& c : sample)
                    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
                        raise("ValidationError", "extension multiplication failed associativity spot-check");
    }
}

GroupPair CentralExtensionGroup::identity() const {
    return GroupPair{n_.zero(), Q().identity()};
}

void CentralExtensionGroup::check(const GroupPair& g) const {
    try {
        n_.check_element(g.n);
    } catch (const Error& e) {
        raise("ComponentOutOfRange", std::string("N-component invalid: ") + e.what());
    }
    Q().check_element(g.q); // ComponentOutOfRange
}

GroupPair CentralExtensionGroup::element(GroupElement n, QElem q) const {
    GroupPair g{std::move(n), std::move(q)};
    check(g);
    return g;
}

GroupPair CentralExtensionGroup::from_n(const GroupElement& n) const {
    return element(n, Q().identity());
}

GroupPair CentralExtensionGroup::lift_q(const QElem& q) const {
    return element(n_.zero(), q);
}

GroupPair CentralExtensionGroup::multiply(const GroupPair& a, const GroupPair& b) const {
    check(a);
    check(b);
    GroupElement n = n_.add(n_.add(a.n, b.n), sigma_.evaluate(a.q, b.q));
    return GroupPair{std::move(n), Q().multiply(a.q, b.q)};
}

GroupPair CentralExtensionGroup::inverse(const GroupPair& a) const {
    check(a);
    QElem qinv = Q().inverse(a.q);
    // (m, g)^{-1} = (-m - σ(g, g^{-1}), g^{-1})
    GroupElement n = n_.negate(n_.add(a.n, sigma_.evaluate(a.q, qinv)));
    return GroupPair{std::move(n), std::move(qinv)};
}

GroupPair CentralExtensionGroup::power(const GroupPair& a, const Int& k) const {
    GroupPair base = (k < 0) ? inverse(a) : a;
    Int n = abs(k);
    GroupPair acc = identity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = multiply(acc, base);
        n >>= 1;
        if (n > 0) base = multiply(base, base);
    }
    return acc;
}

bool CentralExtensionGroup::commute(const GroupPair& a, const GroupPair& b) const {
    return multiply(a, b) == multiply(b, a);
}

bool CentralExtensionGroup::is_central(const GroupPair& g) const {
    check(g);
    if (Q().is_abelian_presentation()) {
        // Commutators take central values, so generator commutation suffices.
        for (std::size_t j = 0; j < Q().generator_count(); ++j)
            if (!commute(g, lift_q(Q().generator(j)))) return false;
        return true;
    }
    for (const QElem& q : Q().elements())
        if (!commute(g, lift_q(q))) return false;
    return true;
}

AlgebraElement AlgebraElement::monomial(GroupPair g, Cyclotomic coeff) {
    AlgebraElement a;
    a.add_term(g, coeff);
    return a;
}

Cyclotomic AlgebraElement::coefficient(const GroupPair& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Cyclotomic::zero() : it->second;
}

void AlgebraElement::add_term(const GroupPair& g, const Cyclotomic& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(g, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [g, c] : o.terms_) r.add_term(g, c);
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r;
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return *this + (-o);
}

AlgebraElement AlgebraElement::scaled(const Cyclotomic& c) const {
    AlgebraElement r;
    if (c.is_zero()) return r;
    for (const auto& [g, x] : terms_) r.add_term(g, x * c);
    return r;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        out << (first ? "" : " + ") << c.to_string() << "*" << g.to_string();
        first = false;
    }
    return out.str();
}

AlgebraElement multiply(const CentralExtensionGroup& G, const AlgebraElement& a,
                        const AlgebraElement& b) {
    AlgebraElement r;
    for (const auto& [g1, c1] : a.terms())
        for (const auto& [g2, c2] : b.terms()) r.add_term(G.multiply(g1, g2), c1 * c2);
    return r;
}

AlgebraElement algebra_power(const CentralExtensionGroup& G, const AlgebraElement& a, unsigned k) {
    AlgebraElement acc = AlgebraElement::monomial(G.identity());
    for (unsigned i = 0; i < k; ++i) acc = multiply(G, acc, a);
    return acc;
}

namespace {

std::string default_name(const char* prefix, std::size_t i) {
    return std::string(prefix) + std::to_string(i + 1);
}

} // namespace

void CentralSubgroupData::set_generator_names(std::vector<std::string> names) {
    if (names.size() != zGenerators_.size())
        raise("DimensionMismatch", "generator name count does not match generators");
    zNames_ = std::move(names);
}

GroupPair CentralSubgroupData::z_abstract_generator(std::size_t j) const {
    GroupElement gen = zAbstract_.generator(j);
    std::vector<Int> exps = zQuotient_.lift.apply(gen.coords());
    return product_of_z_generators(exps);
}

const FinGenAbelianGroup& CentralSubgroupData::q0() const {
    if (!abelianBase_)
        raise("NonAbelianBase", "Q0 structure requires an abelian base in invariant-factor form");
    return q0_;
}

GroupElement CentralSubgroupData::q0_class(const QElem& q) const {
    const auto& Q = group_.Q().abelian_group();
    return q0Quotient_.project_element(Q, group_.Q().to_group_element(q));
}

QElem CentralSubgroupData::q0_lift(const GroupElement& cls) const {
    const auto& Q = group_.Q().abelian_group();
    return group_.Q().from_group_element(q0Quotient_.lift_element(Q, cls));
}

std::size_t CentralSubgroupData::coset_index(const QElem& q) const {
    if (abelianBase_) return q0_.element_index(q0_class(q));
    return q.coords[0].get_ui(); // table base: Z = N, cosets are Q itself
}

std::pair<GroupPair, std::size_t> CentralSubgroupData::factor(const GroupPair& g) const {
    std::size_t idx = coset_index(g.q);
    GroupPair z = group_.multiply(g, group_.inverse(transversal_[idx]));
    return {std::move(z), idx};
}

GroupPair CentralSubgroupData::product_of_z_generators(const std::vector<Int>& exponents) const {
    if (exponents.size() != zGenerators_.size())
        raise("DimensionMismatch", "exponent count does not match z-generators");
    GroupPair acc = group_.identity();
    for (std::size_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] != 0) acc = group_.multiply(acc, group_.power(zGenerators_[i], exponents[i]));
    return acc;
}

bool CentralSubgroupData::contains_in_z(const GroupPair& g) const {
    group_.check(g);
    if (!abelianBase_) return group_.Q().is_identity(g.q);
    // Z contains N, so membership only depends on whether the Q-part lies in
    // the subgroup S generated by the w-generators' Q-parts.
    const auto& Q = group_.Q().abelian_group();
    const std::size_t k = zGenerators_.size() - nGeneratorCount_;
    IntMatrix A(Q.generator_count(), k + Q.torsion_rank());
    for (std::size_t a = 0; a < k; ++a) {
        std::vector<Int> qc = zGenerators_[nGeneratorCount_ + a].q.coords;
        for (std::size_t i = 0; i < qc.size(); ++i) A(i, a) = qc[i];
    }
    for (std::size_t i = 0; i < Q.torsion_rank(); ++i) A(i, k + i) = Q.invariant_factors()[i];
    return intlinalg::solve_linear(A, group_.Q().to_group_element(g.q).coords()).has_value();
}

std::vector<Int> CentralSubgroupData::z_exponents(const GroupPair& z) const {
    group_.check(z);
    const std::size_t k = zGenerators_.size() - nGeneratorCount_;
    std::vector<Int> beta(k);
    if (!abelianBase_) {
        if (!group_.Q().is_identity(z.q))
            raise("SupportOutsideCenter", "element does not lie in the central subgroup");
    } else {
        const auto& Q = group_.Q().abelian_group();
        IntMatrix A(Q.generator_count(), k + Q.torsion_rank());
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<Int> qc = zGenerators_[nGeneratorCount_ + a].q.coords;
            for (std::size_t i = 0; i < qc.size(); ++i) A(i, a) = qc[i];
        }
        for (std::size_t i = 0; i < Q.torsion_rank(); ++i) A(i, k + i) = Q.invariant_factors()[i];
        auto sol = intlinalg::solve_linear(A, group_.Q().to_group_element(z.q).coords());
        if (!sol) raise("SupportOutsideCenter", "element does not lie in the central subgroup");
        for (std::size_t a = 0; a < k; ++a) beta[a] = (*sol)[a];
    }

    // z = (n - u.n, 0) · u with u the beta-product of w-generators.
    std::vector<Int> exps(zGenerators_.size());
    for (std::size_t a = 0; a < k; ++a) exps[nGeneratorCount_ + a] = beta[a];
    GroupPair u = product_of_z_generators(exps);
    const auto& N = group_.N();
    GroupElement rest = N.add(z.n, N.negate(u.n));
    std::vector<Int> restCoords = rest.coords();
    for (std::size_t j = 0; j < nGeneratorCount_; ++j) exps[j] = restCoords[j];

    if (product_of_z_generators(exps) != z)
        raise("ValidationError", "z-exponent reconstruction failed");
    return exps;
}

GroupElement CentralSubgroupData::z_abstract_coords(const GroupPair& z) const {
    std::vector<Int> exps = z_exponents(z);
    return zAbstract_.element(zQuotient_.project.apply(exps));
}

CentralSubgroupData default_central_subgroup(const CentralExtensionGroup& G,
                                             const std::vector<GroupPair>& extras) {
    CentralSubgroupData Z(G);
    const FinGenAbelianGroup& N = G.N();
    const bool abelianBase = G.Q().is_abelian_presentation();
    Z.abelianBase_ = abelianBase;

    // N generators come first.
    for (std::size_t j = 0; j < N.generator_count(); ++j) {
        Z.zGenerators_.push_back(G.from_n(N.generator(j)));
        Z.zNames_.push_back(default_name("n", j));
    }
    Z.nGeneratorCount_ = N.generator_count();

    auto push_unique = [&](GroupPair g, std::string name) {
        if (g == G.identity()) return;
        if (std::find(Z.zGenerators_.begin(), Z.zGenerators_.end(), g) != Z.zGenerators_.end()) return;
        Z.zGenerators_.push_back(std::move(g));
        Z.zNames_.push_back(std::move(name));
    };

    if (abelianBase) {
        const auto& Q = G.Q().abelian_group();
        auto pairing = cocycle::commutator_pairing(G.sigma());
        for (std::size_t i = Q.torsion_rank(); i < Q.generator_count(); ++i) {
            Int l = 1;
            for (std::size_t j = 0; j < Q.generator_count(); ++j) {
                auto ord = abelian::element_order(pairing[i][j], N);
                if (!ord)
                    raise("InfiniteQuotient",
                          "a commutator pairing value has infinite order; no power of generator " +
                              std::to_string(i + 1) + " is central");
                l = intlinalg::lcm(l, *ord);
            }
            GroupPair gen = G.power(G.lift_q(G.Q().generator(i)), l);
            std::string name = "q" + std::to_string(i + 1);
            if (l != 1) name += "^" + l.get_str();
            push_unique(std::move(gen), std::move(name));
        }
    } else {
        for (const GroupPair& e : extras)
            if (!G.Q().is_identity(e.q))
                raise("ValidationError",
                      "table-presented bases admit a central subgroup of N only; extras must be "
                      "supported inside N");
    }

    for (std::size_t k = 0; k < extras.size(); ++k) {
        if (!G.is_central(extras[k]))
            raise("NotCentral", "extra generator " + extras[k].to_string() + " is not central");
        push_unique(extras[k], default_name("e", k));
    }

    // Every default generator must be central as well.
    for (const GroupPair& g : Z.zGenerators_)
        if (!G.is_central(g))
            raise("ValidationError", "central subgroup generator failed the centrality check");

    // Finite quotient Q0 and the monomial transversal.
    if (abelianBase) {
        const auto& Q = G.Q().abelian_group();
        std::vector<GroupElement> srels;
        for (std::size_t i = Z.nGeneratorCount_; i < Z.zGenerators_.size(); ++i)
            srels.push_back(G.Q().to_group_element(Z.zGenerators_[i].q));
        Z.q0Quotient_ = abelian::quotient_group(Q, srels);
        Z.q0_ = Z.q0Quotient_.quotient;
        if (!Z.q0_.is_finite())
            raise("InfiniteQuotient", "the quotient by the central subgroup is infinite");

        std::vector<GroupPair> lifts;
        for (std::size_t j = 0; j < Z.q0_.generator_count(); ++j)
            lifts.push_back(G.lift_q(Z.q0_lift(Z.q0_.generator(j))));
        for (const GroupElement& cls : Z.q0_.elements()) {
            GroupPair t = G.identity();
            for (std::size_t j = 0; j < lifts.size(); ++j)
                if (cls.torsion[j] != 0) t = G.multiply(t, G.power(lifts[j], cls.torsion[j]));
            Z.transversal_.push_back(std::move(t));
        }
    } else {
        for (const QElem& q : G.Q().elements()) Z.transversal_.push_back(G.lift_q(q));
    }

    // Invariant-factor presentation of Z itself. Relations: torsion of the
    // N-generators, and for each kernel vector β of the Q-parts the word
    // h^{-coords(u.n)} w^β with u the β-product.
    {
        const std::size_t r = Z.zGenerators_.size();
        const std::size_t nN = Z.nGeneratorCount_;
        const std::size_t k = r - nN;
        std::vector<GroupElement> relations;
        FinGenAbelianGroup freeR = FinGenAbelianGroup::free_group(r);
        for (std::size_t j = 0; j < N.torsion_rank(); ++j) {
            std::vector<Int> col(r);
            col[j] = N.invariant_factors()[j];
            relations.push_back(freeR.element(col));
        }
        if (abelianBase && k > 0) {
            const auto& Q = G.Q().abelian_group();
            IntMatrix A(Q.generator_count(), k + Q.torsion_rank());
            for (std::size_t a = 0; a < k; ++a) {
                std::vector<Int> qc = Z.zGenerators_[nN + a].q.coords;
                for (std::size_t i = 0; i < qc.size(); ++i) A(i, a) = qc[i];
            }
            for (std::size_t i = 0; i < Q.torsion_rank(); ++i)
                A(i, k + i) = Q.invariant_factors()[i];
            IntMatrix K = intlinalg::kernel_basis(A);
            for (std::size_t c = 0; c < K.cols(); ++c) {
                std::vector<Int> beta(k);
                bool zero = true;
                for (std::size_t a = 0; a < k; ++a) {
                    beta[a] = K(a, c);
                    if (beta[a] != 0) zero = false;
                }
                if (zero) continue;
                std::vector<Int> exps(r);
                for (std::size_t a = 0; a < k; ++a) exps[nN + a] = beta[a];
                GroupPair u = Z.product_of_z_generators(exps);
                if (!G.Q().is_identity(u.q))
                    raise("ValidationError", "kernel vector does not cancel the Q-part");
                std::vector<Int> col(r);
                std::vector<Int> ncoords = u.n.coords();
                for (std::size_t j = 0; j < nN; ++j) col[j] = -ncoords[j];
                for (std::size_t a = 0; a < k; ++a) col[nN + a] = beta[a];
                relations.push_back(freeR.element(col));
            }
        }
        Z.zQuotient_ = abelian::quotient_group(freeR, relations);
        Z.zAbstract_ = Z.zQuotient_.quotient;
    }

    // Roundtrip sanity on the presentation of Z.
    for (std::size_t j = 0; j < Z.zAbstract_.generator_count(); ++j) {
        GroupPair g = Z.z_abstract_generator(j);
        if (Z.z_abstract_coords(g) != Z.zAbstract_.generator(j))
            raise("ValidationError", "central subgroup presentation roundtrip failed");
    }
    return Z;
}

AlgebraElement regular_trace(const AlgebraElement& h, const CentralSubgroupData& Z) {
    const CentralExtensionGroup& G = Z.group();
    AlgebraElement tr;
    for (const auto& [g, coeff] : h.terms()) {
        for (std::size_t i = 0; i < Z.degree(); ++i) {
            auto [z, j] = Z.factor(G.multiply(g, Z.transversal()[i]));
            if (j == i) tr.add_term(z, coeff);
        }
    }
    return tr;
}

std::vector<std::vector<AlgebraElement>> left_multiplication_matrix(const AlgebraElement& h,
                                                                    const CentralSubgroupData& Z) {
    const CentralExtensionGroup& G = Z.group();
    const std::size_t d = Z.degree();
    std::vector<std::vector<AlgebraElement>> M(d, std::vector<AlgebraElement>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (const auto& [g, coeff] : h.terms()) {
            auto [z, i] = Z.factor(G.multiply(g, Z.transversal()[j]));
            M[i][j].add_term(z, coeff);
        }
    return M;
}

CayleyHamiltonResult cayley_hamilton_check(const AlgebraElement& h, const CentralSubgroupData& Z) {
    const CentralExtensionGroup& G = Z.group();
    const std::size_t d = Z.degree();

    std::vector<AlgebraElement> powers(d + 1);
    powers[0] = AlgebraElement::monomial(G.identity());
    for (std::size_t i = 1; i <= d; ++i) powers[i] = multiply(G, powers[i - 1], h);

    std::vector<AlgebraElement> psi(d + 1);
    for (std::size_t i = 1; i <= d; ++i) psi[i] = regular_trace(powers[i], Z);

    // Newton identities: i·e_i = Σ_{j=1}^{i} (-1)^{j-1} e_{i-j} ψ_j.
    std::vector<AlgebraElement> e(d + 1);
    e[0] = AlgebraElement::monomial(G.identity());
    for (std::size_t i = 1; i <= d; ++i) {
        AlgebraElement acc;
        int sign = 1;
        for (std::size_t j = 1; j <= i; ++j) {
            AlgebraElement term = multiply(G, e[i - j], psi[j]);
            acc = (sign > 0) ? acc + term : acc - term;
            sign = -sign;
        }
        e[i] = acc.scaled(Cyclotomic::from_rational(scalars::Rational(1, static_cast<long>(i))));
    }

    CayleyHamiltonResult result;
    result.coefficients.resize(d + 1);
    AlgebraElement chi;
    int sign = 1;
    for (std::size_t i = 0; i <= d; ++i) {
        result.coefficients[i] = (sign > 0) ? e[i] : -e[i];
        chi = chi + multiply(G, result.coefficients[i], powers[d - i]);
        sign = -sign;
    }
    result.evaluation = std::move(chi);
    result.annihilates = result.evaluation.is_zero();
    return result;
}

std::vector<std::vector<AlgebraElement>> gram_matrix(const std::vector<AlgebraElement>& tuple,
                                                     const CentralSubgroupData& Z) {
    const CentralExtensionGroup& G = Z.group();
    const std::size_t k = tuple.size();
    std::vector<std::vector<AlgebraElement>> M(k, std::vector<AlgebraElement>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            M[i][j] = regular_trace(multiply(G, tuple[i], tuple[j]), Z);
    return M;
}

TransversalGramInfo transversal_gram_info(const CentralSubgroupData& Z) {
    std::vector<AlgebraElement> basis;
    for (const GroupPair& t : Z.transversal()) basis.push_back(AlgebraElement::monomial(t));
    auto M = gram_matrix(basis, Z);

    TransversalGramInfo info;
    const std::size_t d = M.size();
    info.columnOfRow.assign(d, d);
    info.rowEntries.assign(d, AlgebraElement::zero());
    info.generalizedPermutation = true;
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t nonzero = 0;
        for (std::size_t j = 0; j < d; ++j)
            if (!M[i][j].is_zero()) {
                ++nonzero;
                info.columnOfRow[i] = j;
                info.rowEntries[i] = M[i][j];
            }
        if (nonzero != 1) info.generalizedPermutation = false;
    }
    if (info.generalizedPermutation) {
        std::vector<bool> seen(d, false);
        for (std::size_t i = 0; i < d; ++i) {
            if (info.columnOfRow[i] >= d || seen[info.columnOfRow[i]]) {
                info.generalizedPermutation = false;
                break;
            }
            seen[info.columnOfRow[i]] = true;
        }
    }
    if (info.generalizedPermutation) {
        // Parity via cycle decomposition.
        std::vector<bool> visited(d, false);
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i) {
            if (visited[i]) continue;
            std::size_t len = 0, cur = i;
            while (!visited[cur]) {
                visited[cur] = true;
                cur = info.columnOfRow[cur];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        info.permutationSign = sign;
    }
    return info;
}

} // namespace cextdisc::extension
