#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cextdisc/intlinalg.hpp"
#include "cextdisc/scalars.hpp"

namespace cextdisc::abelian {

using Int = intlinalg::Int;

// Element of a finitely generated abelian group in invariant-factor
// presentation: torsion coordinates (reduced) followed by free coordinates.
struct GroupElement {
    std::vector<Int> torsion;
    std::vector<Int> free;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;

    std::vector<Int> coords() const; // torsion ++ free
    bool is_zero() const;
    std::string to_string() const;
};

// Z/d_1 × ... × Z/d_t × Z^f with 1 < d_1 | d_2 | ... | d_t.
class FinGenAbelianGroup {
public:
    FinGenAbelianGroup() = default;
    FinGenAbelianGroup(std::vector<Int> invariantFactors, std::size_t freeRank);

    static FinGenAbelianGroup trivial() { return FinGenAbelianGroup({}, 0); }
    static FinGenAbelianGroup cyclic(const Int& n) { return FinGenAbelianGroup({n}, 0); }
    static FinGenAbelianGroup free_group(std::size_t rank) { return FinGenAbelianGroup({}, rank); }

    const std::vector<Int>& invariant_factors() const noexcept { return factors_; }
    std::size_t torsion_rank() const noexcept { return factors_.size(); }
    std::size_t free_rank() const noexcept { return freeRank_; }
    std::size_t generator_count() const noexcept { return factors_.size() + freeRank_; }
    bool is_finite() const noexcept { return freeRank_ == 0; }
    bool is_trivial() const noexcept { return factors_.empty() && freeRank_ == 0; }
    Int order() const; // finite groups only

    GroupElement zero() const;
    GroupElement generator(std::size_t i) const;
    GroupElement element(const std::vector<Int>& coords) const; // reduces torsion part
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement negate(const GroupElement& a) const;
    GroupElement scale(const Int& k, const GroupElement& a) const;

    void check_element(const GroupElement& g) const; // DimensionMismatch

    // All elements of a finite group, ordered by mixed-radix coordinates
    // (first generator most significant).
    std::vector<GroupElement> elements() const;
    std::size_t element_index(const GroupElement& g) const;

    bool operator==(const FinGenAbelianGroup&) const = default;
    std::string to_string() const;

private:
    std::vector<Int> factors_;
    std::size_t freeRank_ = 0;
};

// Least n > 0 with n·g = 0; nullopt for elements of infinite order.
std::optional<Int> element_order(const GroupElement& g, const FinGenAbelianGroup& G);

// Quotient of G by the subgroup generated by `relations`, together with the
// coordinate maps. project maps full G-coordinates to quotient coordinates
// (before reduction); lift maps quotient coordinates back to G-coordinates.
struct QuotientResult {
    FinGenAbelianGroup quotient;
    intlinalg::IntMatrix project;
    intlinalg::IntMatrix lift;

    GroupElement project_element(const FinGenAbelianGroup& G, const GroupElement& g) const;
    GroupElement lift_element(const FinGenAbelianGroup& G, const GroupElement& q) const;
};

QuotientResult quotient_group(const FinGenAbelianGroup& G, const std::vector<GroupElement>& relations);

// Multiplicative character: one scalar image per generator. Torsion images
// must be roots of unity of order dividing the invariant factor; free images
// any nonzero scalar.
class Character {
public:
    Character() = default;
    Character(const FinGenAbelianGroup& G, std::vector<scalars::Cyclotomic> images);

    static Character trivial(const FinGenAbelianGroup& G);

    const std::vector<scalars::Cyclotomic>& images() const noexcept { return images_; }
    scalars::Cyclotomic evaluate(const GroupElement& g) const;

    Character pointwise_product(const Character& other) const;
    Character pointwise_inverse() const;
    bool is_trivial() const;
    bool operator==(const Character&) const = default;

private:
    std::size_t torsionRank_ = 0;
    std::vector<scalars::Cyclotomic> images_;
};

// All |G| characters of a finite group; raises InfiniteGroup otherwise.
std::vector<Character> enumerate_characters(const FinGenAbelianGroup& G);

// Invariant factors (each > 1) of the subgroup of a finite group G generated
// by the given elements.
std::vector<Int> subgroup_invariants(const FinGenAbelianGroup& G,
                                     const std::vector<GroupElement>& generators);

// Abstract structure of the subgroup generated by the given elements of any
// finitely generated G (quotient of the free group on the generators by the
// relation lattice).
FinGenAbelianGroup subgroup_presentation(const FinGenAbelianGroup& G,
                                         const std::vector<GroupElement>& generators);

} // namespace cextdisc::abelian
