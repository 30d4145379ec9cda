#include "cextdisc/qgroup.hpp"

#include <algorithm>
#include <sstream>

namespace cextdisc {

using abelian::Int;

std::string QElem::to_string() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? "," : "") << coords[i];
    out << ")";
    return out.str();
}

TableGroup::TableGroup(const std::vector<std::vector<std::size_t>>& table) {
    size_ = table.size();
    if (size_ == 0) raise("ValidationError", "empty multiplication table");
    table_.resize(size_ * size_);
    for (std::size_t i = 0; i < size_; ++i) {
        if (table[i].size() != size_) raise("ValidationError", "multiplication table is not square");
        for (std::size_t j = 0; j < size_; ++j) {
            if (table[i][j] >= size_) raise("ValidationError", "multiplication table entry out of range");
            table_[i * size_ + j] = table[i][j];
        }
    }
    for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b)
            for (std::size_t c = 0; c < size_; ++c)
                if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
                    raise("ValidationError", "multiplication table is not associative");

    bool found = false;
    for (std::size_t e = 0; e < size_ && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < size_; ++a)
            if (multiply(e, a) != a || multiply(a, e) != a) {
                ok = false;
                break;
            }
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) raise("ValidationError", "multiplication table has no identity");

    inverse_.assign(size_, size_);
    for (std::size_t a = 0; a < size_; ++a) {
        for (std::size_t b = 0; b < size_; ++b)
            if (multiply(a, b) == identity_ && multiply(b, a) == identity_) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] == size_) raise("ValidationError", "multiplication table has a non-invertible element");
    }

    abelian_ = true;
    for (std::size_t a = 0; a < size_ && abelian_; ++a)
        for (std::size_t b = a + 1; b < size_; ++b)
            if (multiply(a, b) != multiply(b, a)) {
                abelian_ = false;
                break;
            }
}

bool QGroup::is_abelian_presentation() const noexcept {
    return std::holds_alternative<abelian::FinGenAbelianGroup>(impl_);
}

const abelian::FinGenAbelianGroup& QGroup::abelian_group() const {
    if (!is_abelian_presentation())
        raise("NonAbelianBase", "operation requires an abelian base group in invariant-factor form");
    return std::get<abelian::FinGenAbelianGroup>(impl_);
}

const TableGroup& QGroup::table() const {
    if (is_abelian_presentation()) raise("ValidationError", "base group is not table-presented");
    return std::get<TableGroup>(impl_);
}

QElem QGroup::identity() const {
    if (is_abelian_presentation()) return from_group_element(abelian_group().zero());
    return QElem{{Int(static_cast<long>(table().identity()))}};
}

QElem QGroup::from_group_element(const abelian::GroupElement& g) const {
    return QElem{g.coords()};
}

abelian::GroupElement QGroup::to_group_element(const QElem& e) const {
    const auto& G = abelian_group();
    check_element(e);
    abelian::GroupElement g = G.zero();
    for (std::size_t i = 0; i < G.torsion_rank(); ++i) g.torsion[i] = e.coords[i];
    for (std::size_t i = 0; i < G.free_rank(); ++i) g.free[i] = e.coords[G.torsion_rank() + i];
    return g;
}

void QGroup::check_element(const QElem& a) const {
    if (is_abelian_presentation()) {
        const auto& G = abelian_group();
        if (a.coords.size() != G.generator_count())
            raise("ComponentOutOfRange", "base element coordinate count mismatch");
        for (std::size_t i = 0; i < G.torsion_rank(); ++i)
            if (a.coords[i] < 0 || a.coords[i] >= G.invariant_factors()[i])
                raise("ComponentOutOfRange", "torsion coordinate out of range");
        return;
    }
    if (a.coords.size() != 1 || a.coords[0] < 0 ||
        a.coords[0] >= Int(static_cast<long>(table().size())))
        raise("ComponentOutOfRange", "table element index out of range");
}

QElem QGroup::multiply(const QElem& a, const QElem& b) const {
    check_element(a);
    check_element(b);
    if (is_abelian_presentation())
        return from_group_element(abelian_group().add(to_group_element(a), to_group_element(b)));
    return QElem{{Int(static_cast<long>(table().multiply(a.coords[0].get_ui(), b.coords[0].get_ui())))}};
}

QElem QGroup::inverse(const QElem& a) const {
    check_element(a);
    if (is_abelian_presentation())
        return from_group_element(abelian_group().negate(to_group_element(a)));
    return QElem{{Int(static_cast<long>(table().inverse(a.coords[0].get_ui())))}};
}

QElem QGroup::power(const QElem& a, const Int& k) const {
    check_element(a);
    if (is_abelian_presentation())
        return from_group_element(abelian_group().scale(k, to_group_element(a)));
    QElem base = (k < 0) ? inverse(a) : a;
    Int n = abs(k);
    QElem acc = identity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = multiply(acc, base);
        n >>= 1;
        if (n > 0) base = multiply(base, base);
    }
    return acc;
}

bool QGroup::is_identity(const QElem& a) const {
    return a == identity();
}

bool QGroup::is_finite() const {
    return is_abelian_presentation() ? abelian_group().is_finite() : true;
}

Int QGroup::order() const {
    return is_abelian_presentation() ? abelian_group().order() : Int(static_cast<long>(table().size()));
}

std::vector<QElem> QGroup::elements() const {
    std::vector<QElem> all;
    if (is_abelian_presentation()) {
        for (const auto& g : abelian_group().elements()) all.push_back(from_group_element(g));
    } else {
        for (std::size_t i = 0; i < table().size(); ++i)
            all.push_back(QElem{{Int(static_cast<long>(i))}});
    }
    return all;
}

bool QGroup::is_commutative() const {
    return is_abelian_presentation() ? true : table().is_abelian();
}

std::size_t QGroup::generator_count() const {
    return abelian_group().generator_count();
}

QElem QGroup::generator(std::size_t i) const {
    return from_group_element(abelian_group().generator(i));
}

} // namespace cextdisc
