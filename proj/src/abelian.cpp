#include "cextdisc/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace cextdisc::abelian {

using intlinalg::IntMatrix;

std::vector<Int> GroupElement::coords() const {
    std::vector<Int> c = torsion;
    c.insert(c.end(), free.begin(), free.end());
    return c;
}

bool GroupElement::is_zero() const {
    auto zero = [](const Int& x) { return x == 0; };
    return std::all_of(torsion.begin(), torsion.end(), zero) &&
           std::all_of(free.begin(), free.end(), zero);
}

std::string GroupElement::to_string() const {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (const Int& c : torsion) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    for (const Int& c : free) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << ")";
    return out.str();
}

FinGenAbelianGroup::FinGenAbelianGroup(std::vector<Int> invariantFactors, std::size_t freeRank)
    : factors_(std::move(invariantFactors)), freeRank_(freeRank) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] <= 1)
            raise("ValidationError", "invariant factors must exceed 1");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            raise("ValidationError", "invariant factors must form a divisibility chain");
    }
}

Int FinGenAbelianGroup::order() const {
    if (!is_finite()) raise("InfiniteGroup", "order of an infinite group");
    Int n = 1;
    for (const Int& d : factors_) n *= d;
    return n;
}

GroupElement FinGenAbelianGroup::zero() const {
    return GroupElement{std::vector<Int>(factors_.size()), std::vector<Int>(freeRank_)};
}

GroupElement FinGenAbelianGroup::generator(std::size_t i) const {
    GroupElement g = zero();
    if (i < factors_.size())
        g.torsion[i] = 1;
    else if (i < generator_count())
        g.free[i - factors_.size()] = 1;
    else
        raise("DimensionMismatch", "generator index out of range");
    return g;
}

GroupElement FinGenAbelianGroup::element(const std::vector<Int>& coords) const {
    if (coords.size() != generator_count())
        raise("DimensionMismatch", "coordinate count does not match generator count");
    GroupElement g = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        Int r = coords[i] % factors_[i];
        if (r < 0) r += factors_[i];
        g.torsion[i] = r;
    }
    for (std::size_t i = 0; i < freeRank_; ++i) g.free[i] = coords[factors_.size() + i];
    return g;
}

GroupElement FinGenAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    check_element(a);
    check_element(b);
    GroupElement g = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        g.torsion[i] = a.torsion[i] + b.torsion[i];
        if (g.torsion[i] >= factors_[i]) g.torsion[i] -= factors_[i];
    }
    for (std::size_t i = 0; i < freeRank_; ++i) g.free[i] = a.free[i] + b.free[i];
    return g;
}

GroupElement FinGenAbelianGroup::negate(const GroupElement& a) const {
    check_element(a);
    GroupElement g = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i)
        g.torsion[i] = (a.torsion[i] == 0) ? Int(0) : factors_[i] - a.torsion[i];
    for (std::size_t i = 0; i < freeRank_; ++i) g.free[i] = -a.free[i];
    return g;
}

GroupElement FinGenAbelianGroup::scale(const Int& k, const GroupElement& a) const {
    check_element(a);
    GroupElement g = zero();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        Int r = (k * a.torsion[i]) % factors_[i];
        if (r < 0) r += factors_[i];
        g.torsion[i] = r;
    }
    for (std::size_t i = 0; i < freeRank_; ++i) g.free[i] = k * a.free[i];
    return g;
}

void FinGenAbelianGroup::check_element(const GroupElement& g) const {
    if (g.torsion.size() != factors_.size() || g.free.size() != freeRank_)
        raise("DimensionMismatch", "element shape does not match group");
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (g.torsion[i] < 0 || g.torsion[i] >= factors_[i])
            raise("DimensionMismatch", "torsion coordinate out of range");
}

std::vector<GroupElement> FinGenAbelianGroup::elements() const {
    if (!is_finite()) raise("InfiniteGroup", "cannot enumerate an infinite group");
    std::vector<GroupElement> all;
    Int n = order();
    if (!n.fits_ulong_p()) raise("ValidationError", "group too large to enumerate");
    all.reserve(n.get_ui());
    GroupElement g = zero();
    for (;;) {
        all.push_back(g);
        std::size_t i = factors_.size();
        while (i > 0) {
            --i;
            g.torsion[i] += 1;
            if (g.torsion[i] < factors_[i]) break;
            g.torsion[i] = 0;
            if (i == 0) return all;
        }
        if (factors_.empty()) return all;
    }
}

std::size_t FinGenAbelianGroup::element_index(const GroupElement& g) const {
    check_element(g);
    if (!is_finite()) raise("InfiniteGroup", "index in an infinite group");
    Int idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + g.torsion[i];
    return idx.get_ui();
}

std::string FinGenAbelianGroup::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const Int& d : factors_) {
        out << (first ? "" : " x ") << "Z/" << d;
        first = false;
    }
    for (std::size_t i = 0; i < freeRank_; ++i) {
        out << (first ? "" : " x ") << "Z";
        first = false;
    }
    if (first) out << "1";
    return out.str();
}

std::optional<Int> element_order(const GroupElement& g, const FinGenAbelianGroup& G) {
    G.check_element(g);
    for (const Int& c : g.free)
        if (c != 0) return std::nullopt;
    Int n = 1;
    const auto& factors = G.invariant_factors();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        Int d = factors[i] / intlinalg::gcd(factors[i], g.torsion[i]);
        n = intlinalg::lcm(n, d);
    }
    return n;
}

GroupElement QuotientResult::project_element(const FinGenAbelianGroup& G, const GroupElement& g) const {
    G.check_element(g);
    return quotient.element(project.apply(g.coords()));
}

GroupElement QuotientResult::lift_element(const FinGenAbelianGroup& G, const GroupElement& q) const {
    quotient.check_element(q);
    return G.element(lift.apply(q.coords()));
}

QuotientResult quotient_group(const FinGenAbelianGroup& G, const std::vector<GroupElement>& relations) {
    const std::size_t n = G.generator_count();
    const std::size_t t = G.torsion_rank();

    // Relation matrix: the group's own torsion relations plus the given ones.
    IntMatrix R(n, t + relations.size());
    for (std::size_t i = 0; i < t; ++i) R(i, i) = G.invariant_factors()[i];
    for (std::size_t c = 0; c < relations.size(); ++c) {
        G.check_element(relations[c]);
        std::vector<Int> coords = relations[c].coords();
        for (std::size_t i = 0; i < n; ++i) R(i, t + c) = coords[i];
    }

    intlinalg::SmithDecomposition d = intlinalg::smith_normal_form(R);
    IntMatrix Uinv = intlinalg::unimodular_inverse(d.U);

    // In coordinates y = U x the relation lattice is diag(s_i); factors with
    // s_i = 1 vanish, s_i > 1 give torsion, s_i = 0 (or rows beyond the rank)
    // give free generators.
    const std::size_t nmin = std::min(R.rows(), R.cols());
    std::vector<Int> torsionFactors;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        Int s = (i < nmin) ? d.S(i, i) : Int(0);
        if (s == 1) continue;
        kept.push_back(i);
        if (s > 1) torsionFactors.push_back(s);
    }

    QuotientResult res;
    res.quotient = FinGenAbelianGroup(torsionFactors, kept.size() - torsionFactors.size());
    res.project = IntMatrix(kept.size(), n);
    res.lift = IntMatrix(n, kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) {
            res.project(r, c) = d.U(kept[r], c);
            res.lift(c, r) = Uinv(c, kept[r]);
        }

    // Sanity: relations die, and lift followed by project is the identity.
    for (const GroupElement& rel : relations)
        if (!res.project_element(G, rel).is_zero())
            raise("ValidationError", "quotient projection does not kill a relation");
    for (std::size_t j = 0; j < res.quotient.generator_count(); ++j) {
        GroupElement gen = res.quotient.generator(j);
        if (res.project_element(G, res.lift_element(G, gen)) != gen)
            raise("ValidationError", "quotient lift/project roundtrip failed");
    }
    return res;
}

Character::Character(const FinGenAbelianGroup& G, std::vector<scalars::Cyclotomic> images)
    : torsionRank_(G.torsion_rank()), images_(std::move(images)) {
    if (images_.size() != G.generator_count())
        raise("DimensionMismatch", "character image count does not match generators");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero()) raise("ValidationError", "character images must be nonzero");
        if (i < torsionRank_) {
            auto ord = images_[i].multiplicative_order();
            if (!ord || G.invariant_factors()[i] % *ord != 0)
                raise("ValidationError",
                      "torsion image must be a root of unity of order dividing the invariant factor");
        }
    }
}

Character Character::trivial(const FinGenAbelianGroup& G) {
    return Character(G, std::vector<scalars::Cyclotomic>(G.generator_count(), scalars::Cyclotomic::one()));
}

scalars::Cyclotomic Character::evaluate(const GroupElement& g) const {
    if (g.torsion.size() != torsionRank_ || g.torsion.size() + g.free.size() != images_.size())
        raise("DimensionMismatch", "element shape does not match character");
    scalars::Cyclotomic value = scalars::Cyclotomic::one();
    std::vector<Int> coords = g.coords();
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (coords[i] == 0) continue;
        value *= images_[i].pow(coords[i]);
    }
    return value;
}

Character Character::pointwise_product(const Character& other) const {
    if (images_.size() != other.images_.size() || torsionRank_ != other.torsionRank_)
        raise("DimensionMismatch", "character shapes differ");
    Character c = *this;
    for (std::size_t i = 0; i < images_.size(); ++i) c.images_[i] *= other.images_[i];
    return c;
}

Character Character::pointwise_inverse() const {
    Character c = *this;
    for (std::size_t i = 0; i < images_.size(); ++i) c.images_[i] = images_[i].inverse();
    return c;
}

bool Character::is_trivial() const {
    return std::all_of(images_.begin(), images_.end(),
                       [](const scalars::Cyclotomic& z) { return z.is_one(); });
}

std::vector<Character> enumerate_characters(const FinGenAbelianGroup& G) {
    if (!G.is_finite()) raise("InfiniteGroup", "characters of an infinite group are not enumerable");
    const auto& factors = G.invariant_factors();

    // Precompute the root-of-unity powers per generator.
    std::vector<std::vector<scalars::Cyclotomic>> powers(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        unsigned long d = factors[i].get_ui();
        powers[i].reserve(d);
        for (unsigned long k = 0; k < d; ++k)
            powers[i].push_back(scalars::Cyclotomic::root_of_unity(d, static_cast<long>(k)));
    }

    std::vector<Character> chars;
    for (const GroupElement& exps : G.elements()) {
        std::vector<scalars::Cyclotomic> images;
        images.reserve(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i)
            images.push_back(powers[i][exps.torsion[i].get_ui()]);
        chars.emplace_back(G, std::move(images));
    }
    return chars;
}

std::vector<Int> subgroup_invariants(const FinGenAbelianGroup& G,
                                     const std::vector<GroupElement>& generators) {
    if (!G.is_finite()) raise("InfiniteGroup", "subgroup structure requires a finite ambient group");
    const std::size_t t = G.torsion_rank();
    if (t == 0) return {};

    // Lattice L spanned by the generators together with the relation lattice
    // Λ = diag(d_i); the subgroup is L/Λ. Writing Λ in a basis B of L gives an
    // integer matrix X with L/Λ ≅ Z^t / X Z^t.
    IntMatrix Gmat(t, generators.size() + t);
    for (std::size_t c = 0; c < generators.size(); ++c) {
        G.check_element(generators[c]);
        for (std::size_t i = 0; i < t; ++i) Gmat(i, c) = generators[c].torsion[i];
    }
    for (std::size_t i = 0; i < t; ++i) Gmat(i, generators.size() + i) = G.invariant_factors()[i];

    intlinalg::SmithDecomposition d = intlinalg::smith_normal_form(Gmat);
    // Basis of L: columns of U^{-1} · diag(s_i); X = S^{-1} U Λ entrywise.
    IntMatrix X(t, t);
    for (std::size_t i = 0; i < t; ++i) {
        if (d.S(i, i) == 0) raise("ValidationError", "generator lattice unexpectedly rank-deficient");
        for (std::size_t j = 0; j < t; ++j) {
            Int num = d.U(i, j) * G.invariant_factors()[j];
            if (num % d.S(i, i) != 0) raise("ValidationError", "subgroup lattice division failed");
            X(i, j) = num / d.S(i, i);
        }
    }
    std::vector<Int> inv;
    for (const Int& s : intlinalg::smith_normal_form(X).diagonal())
        if (s > 1) inv.push_back(s);
    return inv;
}

FinGenAbelianGroup subgroup_presentation(const FinGenAbelianGroup& G,
                                         const std::vector<GroupElement>& generators) {
    const std::size_t k = generators.size();
    const std::size_t t = G.torsion_rank();
    // Kernel of Z^k -> G: vectors c with Σ c_i g_i = 0, computed as the
    // projection of the kernel of [gens | torsion diag].
    IntMatrix A(G.generator_count(), k + t);
    for (std::size_t c = 0; c < k; ++c) {
        G.check_element(generators[c]);
        std::vector<Int> coords = generators[c].coords();
        for (std::size_t i = 0; i < coords.size(); ++i) A(i, c) = coords[i];
    }
    for (std::size_t i = 0; i < t; ++i) A(i, k + i) = G.invariant_factors()[i];
    IntMatrix K = intlinalg::kernel_basis(A);

    FinGenAbelianGroup freeK = FinGenAbelianGroup::free_group(k);
    std::vector<GroupElement> relations;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        std::vector<Int> beta(k);
        for (std::size_t i = 0; i < k; ++i) beta[i] = K(i, c);
        relations.push_back(freeK.element(beta));
    }
    return quotient_group(freeK, relations).quotient;
}

} // namespace cextdisc::abelian
