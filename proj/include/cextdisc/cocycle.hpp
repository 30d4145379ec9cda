#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cextdisc/abelian.hpp"
#include "cextdisc/qgroup.hpp"

namespace cextdisc::cocycle {

using NElem = abelian::GroupElement;

// 2-cocycle σ: Q × Q → N with N in additive notation. Two payloads:
//  - full table over a finite base (arbitrary, including non-abelian);
//  - bilinear form over the standard generators of an abelian base,
//    σ(g, h) = Σ g_i h_j b_ij on canonical exponent vectors.
class TwoCocycle {
public:
    enum class Payload { Table, Bilinear };

    // Table payload; the cocycle identity is checked exhaustively unless the
    // unchecked variant is used (meant for negative tests).
    static TwoCocycle table(QGroup base, abelian::FinGenAbelianGroup target,
                            std::map<std::pair<QElem, QElem>, NElem> entries);
    static TwoCocycle table_unchecked(QGroup base, abelian::FinGenAbelianGroup target,
                                      std::map<std::pair<QElem, QElem>, NElem> entries);

    // Bilinear payload on an abelian base; requires d_i·b_ij = d_j·b_ij = 0
    // for torsion factors d_i so that the formula is a cocycle on Q itself.
    static TwoCocycle bilinear(abelian::FinGenAbelianGroup base, abelian::FinGenAbelianGroup target,
                               std::vector<std::vector<NElem>> form);

    static TwoCocycle zero_table(QGroup base, abelian::FinGenAbelianGroup target);
    static TwoCocycle zero_bilinear(abelian::FinGenAbelianGroup base,
                                    abelian::FinGenAbelianGroup target);

    Payload payload() const noexcept { return payload_; }
    const QGroup& base() const noexcept { return base_; }
    const abelian::FinGenAbelianGroup& target() const noexcept { return target_; }

    NElem evaluate(const QElem& g, const QElem& h) const;
    const NElem& bilinear_entry(std::size_t i, std::size_t j) const;

    // All values σ(g, h); for bilinear payloads the entries b_ij (these
    // generate the same subgroup of N as the full image).
    std::vector<NElem> image_generators() const;

    bool operator==(const TwoCocycle&) const = default;

private:
    TwoCocycle(Payload payload, QGroup base, abelian::FinGenAbelianGroup target)
        : payload_(payload), base_(std::move(base)), target_(std::move(target)) {}

    Payload payload_;
    QGroup base_;
    abelian::FinGenAbelianGroup target_;
    std::map<std::pair<QElem, QElem>, NElem> tableEntries_;
    std::vector<std::vector<NElem>> form_;
};

struct CocycleValidation {
    bool valid = false;
    // Violating triple (g, h, k) when invalid.
    std::optional<std::array<QElem, 3>> witness;
    std::string note;
};

// Exhaustive triple scan for tables; bilinear payloads are valid by
// construction and return a note saying so.
CocycleValidation validate_cocycle(const TwoCocycle& sigma);

// Cohomologous cocycle with σ(1,1) = 0 (subtracts the constant coboundary).
TwoCocycle normalize_cocycle(const TwoCocycle& sigma);

// σ + ∂f for f: Q → N (test and normalization helper).
TwoCocycle add_coboundary(const TwoCocycle& sigma, const std::map<QElem, NElem>& f);

struct CoboundaryCertificate {
    std::map<QElem, NElem> f; // σ - τ = ∂f, re-verified before return
};

// Decides whether σ - τ is a coboundary over a finite base by solving an
// integer linear system; raises UnsupportedInfiniteBase otherwise.
std::optional<CoboundaryCertificate> is_cohomologous(const TwoCocycle& sigma, const TwoCocycle& tau);

// a_ij = σ(x_i, x_j) - σ(x_j, x_i) over the standard generators of an abelian
// base, so that x_i x_j = a_ij x_j x_i holds in the extension group.
std::vector<std::vector<NElem>> commutator_pairing(const TwoCocycle& sigma);

} // namespace cextdisc::cocycle
