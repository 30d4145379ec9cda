#include "cextdisc/cocycle.hpp"

#include <array>

namespace cextdisc::cocycle {

using abelian::FinGenAbelianGroup;
using abelian::Int;
using intlinalg::IntMatrix;

TwoCocycle TwoCocycle::table_unchecked(QGroup base, FinGenAbelianGroup target,
                                       std::map<std::pair<QElem, QElem>, NElem> entries) {
    if (!base.is_finite()) raise("UnsupportedInfiniteBase", "table cocycles require a finite base");
    TwoCocycle sigma(Payload::Table, std::move(base), std::move(target));
    sigma.tableEntries_ = std::move(entries);
    for (const QElem& g : sigma.base_.elements())
        for (const QElem& h : sigma.base_.elements()) {
            auto it = sigma.tableEntries_.find({g, h});
            if (it == sigma.tableEntries_.end())
                sigma.tableEntries_.emplace(std::make_pair(g, h), sigma.target_.zero());
            else
                sigma.target_.check_element(it->second);
        }
    return sigma;
}

TwoCocycle TwoCocycle::table(QGroup base, FinGenAbelianGroup target,
                             std::map<std::pair<QElem, QElem>, NElem> entries) {
    TwoCocycle sigma = table_unchecked(std::move(base), std::move(target), std::move(entries));
    CocycleValidation v = validate_cocycle(sigma);
    if (!v.valid)
        raise("ValidationError", "cocycle identity fails at triple (" + (*v.witness)[0].to_string() +
                                     ", " + (*v.witness)[1].to_string() + ", " +
                                     (*v.witness)[2].to_string() + ")");
    return sigma;
}

TwoCocycle TwoCocycle::bilinear(FinGenAbelianGroup base, FinGenAbelianGroup target,
                                std::vector<std::vector<NElem>> form) {
    const std::size_t n = base.generator_count();
    if (form.size() != n) raise("DimensionMismatch", "bilinear form must be n x n over the generators");
    for (const auto& row : form) {
        if (row.size() != n) raise("DimensionMismatch", "bilinear form must be n x n over the generators");
        for (const NElem& v : row) target.check_element(v);
    }
    // Compatibility with torsion: d_i b_ij = d_j b_ij = 0, otherwise the
    // formula is not well defined as a cocycle on Q.
    for (std::size_t i = 0; i < base.torsion_rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Int& d = base.invariant_factors()[i];
            if (!target.scale(d, form[i][j]).is_zero() || !target.scale(d, form[j][i]).is_zero())
                raise("ValidationError",
                      "bilinear cocycle values must be killed by the torsion of their generators");
        }
    TwoCocycle sigma(Payload::Bilinear, QGroup(std::move(base)), std::move(target));
    sigma.form_ = std::move(form);
    return sigma;
}

TwoCocycle TwoCocycle::zero_table(QGroup base, FinGenAbelianGroup target) {
    return table(std::move(base), std::move(target), {});
}

TwoCocycle TwoCocycle::zero_bilinear(FinGenAbelianGroup base, FinGenAbelianGroup target) {
    std::size_t n = base.generator_count();
    std::vector<std::vector<NElem>> form(n, std::vector<NElem>(n, target.zero()));
    return bilinear(std::move(base), std::move(target), std::move(form));
}

NElem TwoCocycle::evaluate(const QElem& g, const QElem& h) const {
    base_.check_element(g);
    base_.check_element(h);
    if (payload_ == Payload::Table) return tableEntries_.at({g, h});
    NElem value = target_.zero();
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
        if (g.coords[i] == 0) continue;
        for (std::size_t j = 0; j < h.coords.size(); ++j) {
            if (h.coords[j] == 0) continue;
            value = target_.add(value, target_.scale(g.coords[i] * h.coords[j], form_[i][j]));
        }
    }
    return value;
}

const NElem& TwoCocycle::bilinear_entry(std::size_t i, std::size_t j) const {
    if (payload_ != Payload::Bilinear) raise("ValidationError", "cocycle has no bilinear payload");
    return form_[i][j];
}

std::vector<NElem> TwoCocycle::image_generators() const {
    std::vector<NElem> gens;
    if (payload_ == Payload::Table) {
        for (const auto& [key, value] : tableEntries_)
            if (!value.is_zero()) gens.push_back(value);
    } else {
        for (const auto& row : form_)
            for (const NElem& v : row)
                if (!v.is_zero()) gens.push_back(v);
    }
    return gens;
}

CocycleValidation validate_cocycle(const TwoCocycle& sigma) {
    CocycleValidation result;
    if (sigma.payload() == TwoCocycle::Payload::Bilinear) {
        result.valid = true;
        result.note = "bilinear payload: cocycle identity holds by construction";
        return result;
    }
    const auto& N = sigma.target();
    std::vector<QElem> elems = sigma.base().elements();
    for (const QElem& g : elems)
        for (const QElem& h : elems) {
            QElem gh = sigma.base().multiply(g, h);
            NElem s_gh = sigma.evaluate(g, h);
            for (const QElem& k : elems) {
                // σ(h,k) − σ(gh,k) + σ(g,hk) − σ(g,h) = 0
                NElem acc = sigma.evaluate(h, k);
                acc = N.add(acc, N.negate(sigma.evaluate(gh, k)));
                acc = N.add(acc, sigma.evaluate(g, sigma.base().multiply(h, k)));
                acc = N.add(acc, N.negate(s_gh));
                if (!acc.is_zero()) {
                    result.valid = false;
                    result.witness = std::array<QElem, 3>{g, h, k};
                    return result;
                }
            }
        }
    result.valid = true;
    result.note = "exhaustive triple scan passed";
    return result;
}

TwoCocycle add_coboundary(const TwoCocycle& sigma, const std::map<QElem, NElem>& f) {
    if (sigma.payload() != TwoCocycle::Payload::Table)
        raise("ValidationError", "coboundary perturbation requires a table payload");
    const auto& N = sigma.target();
    std::map<std::pair<QElem, QElem>, NElem> entries;
    auto value_of = [&](const QElem& g) {
        auto it = f.find(g);
        return it == f.end() ? N.zero() : it->second;
    };
    for (const QElem& g : sigma.base().elements())
        for (const QElem& h : sigma.base().elements()) {
            NElem d = value_of(h);
            d = N.add(d, N.negate(value_of(sigma.base().multiply(g, h))));
            d = N.add(d, value_of(g));
            entries.emplace(std::make_pair(g, h), N.add(sigma.evaluate(g, h), d));
        }
    return TwoCocycle::table(sigma.base(), N, std::move(entries));
}

TwoCocycle normalize_cocycle(const TwoCocycle& sigma) {
    if (sigma.payload() == TwoCocycle::Payload::Bilinear) return sigma; // σ(0,·) = 0 already
    const auto& N = sigma.target();
    QElem one = sigma.base().identity();
    NElem c = sigma.evaluate(one, one);
    if (c.is_zero()) return sigma;
    // Subtract the coboundary of the constant function g ↦ c.
    std::map<QElem, NElem> constant;
    for (const QElem& g : sigma.base().elements()) constant[g] = N.negate(c);
    TwoCocycle out = add_coboundary(sigma, constant);

    if (!out.evaluate(one, one).is_zero())
        raise("ValidationError", "normalization failed to clear sigma(1,1)");
    for (const QElem& g : sigma.base().elements()) {
        if (!out.evaluate(one, g).is_zero() || !out.evaluate(g, one).is_zero())
            raise("ValidationError", "normalized cocycle violates sigma(1,g) = sigma(g,1) = 0");
        QElem ginv = sigma.base().inverse(g);
        if (out.evaluate(g, ginv) != out.evaluate(ginv, g))
            raise("ValidationError", "normalized cocycle violates sigma(g,g^-1) symmetry");
    }
    return out;
}

std::optional<CoboundaryCertificate> is_cohomologous(const TwoCocycle& sigma, const TwoCocycle& tau) {
    if (sigma.base() != tau.base() || sigma.target() != tau.target())
        raise("DimensionMismatch", "cocycles live on different base or target groups");
    if (!sigma.base().is_finite())
        raise("UnsupportedInfiniteBase", "cohomology test requires a finite base group");

    const auto& N = sigma.target();
    const QGroup& Q = sigma.base();
    const std::vector<QElem> elems = Q.elements();
    const std::size_t nQ = elems.size();
    const std::size_t w = N.generator_count();
    const std::size_t t = N.torsion_rank();

    std::map<QElem, std::size_t> elemIndex;
    for (std::size_t i = 0; i < nQ; ++i) elemIndex.emplace(elems[i], i);
    auto index_of = [&](const QElem& g) { return elemIndex.at(g); };

    // Unknowns: coordinates of f(g) for every g, plus one torsion slack per
    // equation coordinate. Equations: f(h) - f(gh) + f(g) = δ(g,h) in N.
    const std::size_t rows = nQ * nQ * w;
    const std::size_t fVars = nQ * w;
    const std::size_t slack = nQ * nQ * t;
    IntMatrix A(rows, fVars + slack);
    std::vector<Int> b(rows);

    std::size_t eq = 0, slackCol = fVars;
    for (std::size_t gi = 0; gi < nQ; ++gi)
        for (std::size_t hi = 0; hi < nQ; ++hi) {
            const QElem& g = elems[gi];
            const QElem& h = elems[hi];
            std::size_t ghi = index_of(Q.multiply(g, h));
            NElem delta = N.add(sigma.evaluate(g, h), N.negate(tau.evaluate(g, h)));
            std::vector<Int> deltaCoords = delta.coords();
            for (std::size_t c = 0; c < w; ++c, ++eq) {
                A(eq, hi * w + c) += 1;
                A(eq, ghi * w + c) -= 1;
                A(eq, gi * w + c) += 1;
                if (c < t) A(eq, slackCol + c) = N.invariant_factors()[c];
                b[eq] = deltaCoords[c];
            }
            slackCol += t;
        }

    auto solution = intlinalg::solve_linear(A, b);
    if (!solution) return std::nullopt;

    CoboundaryCertificate cert;
    for (std::size_t gi = 0; gi < nQ; ++gi) {
        std::vector<Int> coords(w);
        for (std::size_t c = 0; c < w; ++c) coords[c] = (*solution)[gi * w + c];
        cert.f[elems[gi]] = N.element(coords);
    }
    // Re-verify the certificate before returning it.
    for (const QElem& g : elems)
        for (const QElem& h : elems) {
            NElem d = cert.f.at(h);
            d = N.add(d, N.negate(cert.f.at(Q.multiply(g, h))));
            d = N.add(d, cert.f.at(g));
            NElem delta = N.add(sigma.evaluate(g, h), N.negate(tau.evaluate(g, h)));
            if (d != delta) raise("ValidationError", "coboundary certificate failed re-verification");
        }
    return cert;
}

std::vector<std::vector<NElem>> commutator_pairing(const TwoCocycle& sigma) {
    const auto& Q = sigma.base().abelian_group(); // NonAbelianBase for tables
    const auto& N = sigma.target();
    const std::size_t n = Q.generator_count();
    std::vector<std::vector<NElem>> a(n, std::vector<NElem>(n, N.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            QElem xi = sigma.base().generator(i);
            QElem xj = sigma.base().generator(j);
            a[i][j] = N.add(sigma.evaluate(xi, xj), N.negate(sigma.evaluate(xj, xi)));
        }
    // Alternating by construction: a_ij = -a_ji, a_ii = 0.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j] != N.negate(a[j][i]) || (i == j && !a[i][i].is_zero()))
                raise("ValidationError", "commutator pairing failed the alternating check");
    return a;
}

} // namespace cextdisc::cocycle
