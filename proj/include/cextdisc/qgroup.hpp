#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cextdisc/abelian.hpp"

namespace cextdisc {

// Element of the base group Q: exponent coordinates for an abelian
// presentation, or a single table index for a table-presented finite group.
struct QElem {
    std::vector<abelian::Int> coords;

    bool operator==(const QElem&) const = default;
    auto operator<=>(const QElem&) const = default;

    std::string to_string() const;
};

// Finite group given by its full multiplication table. Validated at
// construction: closure, associativity, identity, inverses.
class TableGroup {
public:
    explicit TableGroup(const std::vector<std::vector<std::size_t>>& table);

    std::size_t size() const noexcept { return size_; }
    std::size_t identity() const noexcept { return identity_; }
    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * size_ + b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    bool is_abelian() const noexcept { return abelian_; }

    bool operator==(const TableGroup&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
    bool abelian_ = false;
};

// The base group of a cocycle/extension: finitely generated abelian in
// invariant-factor form, or an arbitrary finite table group.
class QGroup {
public:
    explicit QGroup(abelian::FinGenAbelianGroup G) : impl_(std::move(G)) {}
    explicit QGroup(TableGroup T) : impl_(std::move(T)) {}

    bool is_abelian_presentation() const noexcept;
    bool is_table() const noexcept { return !is_abelian_presentation(); }

    // Raises NonAbelianBase when the group is table-presented.
    const abelian::FinGenAbelianGroup& abelian_group() const;
    const TableGroup& table() const;

    QElem identity() const;
    QElem multiply(const QElem& a, const QElem& b) const;
    QElem inverse(const QElem& a) const;
    QElem power(const QElem& a, const abelian::Int& k) const;
    bool is_identity(const QElem& a) const;
    void check_element(const QElem& a) const; // ComponentOutOfRange

    bool is_finite() const;
    abelian::Int order() const;            // finite only
    std::vector<QElem> elements() const;   // finite only
    bool is_commutative() const;           // abelian presentation, or symmetric table

    // Standard generators (abelian presentation only).
    std::size_t generator_count() const;
    QElem generator(std::size_t i) const;
    QElem from_group_element(const abelian::GroupElement& g) const;
    abelian::GroupElement to_group_element(const QElem& e) const;

    bool operator==(const QGroup&) const = default;

private:
    std::variant<abelian::FinGenAbelianGroup, TableGroup> impl_;
};

} // namespace cextdisc
