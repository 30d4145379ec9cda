#include "cextdisc/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cextdisc::scalars {

namespace {

std::vector<unsigned long> divisors(unsigned long m) {
    std::vector<unsigned long> ds;
    for (unsigned long d = 1; d * d <= m; ++d)
        if (m % d == 0) {
            ds.push_back(d);
            if (d != m / d) ds.push_back(m / d);
        }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Exact division of integer polynomials (constant term first).
std::vector<Integer> poly_divexact(std::vector<Integer> num, const std::vector<Integer>& den) {
    std::vector<Integer> q(num.size() - den.size() + 1);
    for (std::size_t i = q.size(); i-- > 0;) {
        Integer c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Integer& c : num)
        if (c != 0) raise("ValidationError", "inexact polynomial division");
    return q;
}

std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Integer>& phi) {
    const std::size_t deg = phi.size() - 1;
    while (a.size() > deg) {
        Rational c = a.back();
        a.pop_back();
        if (c == 0) continue;
        for (std::size_t j = 0; j < deg; ++j) a[a.size() - deg + j] -= c * phi[j];
    }
    a.resize(deg, Rational(0));
    return a;
}

} // namespace

unsigned long euler_phi(unsigned long m) {
    unsigned long result = m, n = m;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}

const std::vector<Integer>& cyclotomic_polynomial(unsigned long m) {
    static std::map<unsigned long, std::vector<Integer>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    // Fill the cache bottom-up over divisors so lookups never recurse.
    for (unsigned long d : divisors(m)) {
        if (cache.count(d)) continue;
        if (d == 1) {
            cache.emplace(1, std::vector<Integer>{Integer(-1), Integer(1)}); // x - 1
            continue;
        }
        std::vector<Integer> num(d + 1);
        num[0] = -1;
        num[d] = 1; // x^d - 1
        for (unsigned long e : divisors(d))
            if (e < d) num = poly_divexact(std::move(num), cache.at(e));
        cache.emplace(d, std::move(num));
    }
    return cache.at(m);
}

Cyclotomic::Cyclotomic(unsigned long conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
    canonicalize();
}

Cyclotomic Cyclotomic::from_rational(Rational r) {
    r.canonicalize();
    Cyclotomic z;
    z.coeffs_[0] = std::move(r);
    return z;
}

bool Cyclotomic::is_zero() const {
    return conductor_ == 1 && coeffs_[0] == 0;
}

bool Cyclotomic::is_one() const {
    return conductor_ == 1 && coeffs_[0] == 1;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) raise("ValidationError", "value is not rational: " + canonical_string());
    return coeffs_[0];
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
    if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], o.coeffs_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

Cyclotomic Cyclotomic::promoted(unsigned long target) const {
    if (target == conductor_) return *this;
    if (target % conductor_ != 0) raise("ValidationError", "conductor promotion must go to a multiple");
    const auto& phi = cyclotomic_polynomial(target);
    const unsigned long step = target / conductor_;
    std::vector<Rational> acc(euler_phi(target), Rational(0));
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
        if (coeffs_[e] == 0) continue;
        std::vector<Rational> mono(e * step + 1, Rational(0));
        mono.back() = coeffs_[e];
        mono = poly_mod(std::move(mono), phi);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += mono[j];
    }
    Cyclotomic z;
    z.conductor_ = target;
    z.coeffs_ = std::move(acc);
    return z;
}

std::vector<Rational> Cyclotomic::galois_coeffs(unsigned long k) const {
    const auto& phi = cyclotomic_polynomial(conductor_);
    std::vector<Rational> acc(coeffs_.size(), Rational(0));
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
        if (coeffs_[e] == 0) continue;
        std::size_t newExp = (e * (k % conductor_)) % conductor_;
        std::vector<Rational> mono(newExp + 1, Rational(0));
        mono.back() = coeffs_[e];
        mono = poly_mod(std::move(mono), phi);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += mono[j];
    }
    for (Rational& c : acc) c.canonicalize();
    return acc;
}

void Cyclotomic::canonicalize() {
    for (Rational& c : coeffs_) c.canonicalize();
    if (coeffs_.size() != euler_phi(conductor_))
        coeffs_ = poly_mod(std::move(coeffs_), cyclotomic_polynomial(conductor_));

    // Demote to the smallest cyclotomic subfield containing the value. The
    // value lies in Q(ζ_t) (t | m) iff it is fixed by every σ_k with
    // k ≡ 1 mod t, and then it is a rational combination of ζ_m^{j·m/t}.
    while (conductor_ > 1) {
        const unsigned long m = conductor_;
        bool demoted = false;
        for (unsigned long t : divisors(m)) {
            if (t == m || t % 4 == 2) continue;
            bool fixed = true;
            for (unsigned long k = 1 + t; k < m && fixed; k += t) {
                if (std::gcd(k, m) != 1) continue;
                if (galois_coeffs(k) != coeffs_) fixed = false;
            }
            if (!fixed) continue;

            // Rewrite in the ζ_t-power basis by solving a linear system.
            const unsigned long dt = euler_phi(t);
            const unsigned long dm = euler_phi(m);
            const auto& phi = cyclotomic_polynomial(m);
            std::vector<std::vector<Rational>> cols(dt); // ζ_m^{j·(m/t)} reduced
            for (unsigned long j = 0; j < dt; ++j) {
                std::vector<Rational> mono(static_cast<std::size_t>(j) * (m / t) + 1, Rational(0));
                mono.back() = 1;
                cols[j] = poly_mod(std::move(mono), phi);
            }
            std::vector<std::vector<Rational>> aug(dm, std::vector<Rational>(dt + 1, Rational(0)));
            for (unsigned long i = 0; i < dm; ++i) {
                for (unsigned long j = 0; j < dt; ++j) aug[i][j] = cols[j][i];
                aug[i][dt] = coeffs_[i];
            }
            std::size_t r = 0;
            std::vector<std::size_t> pivotRow(dt, dm);
            for (unsigned long c = 0; c < dt && r < dm; ++c) {
                std::size_t p = r;
                while (p < dm && aug[p][c] == 0) ++p;
                if (p == dm) continue;
                std::swap(aug[p], aug[r]);
                Rational inv = 1 / aug[r][c];
                for (unsigned long j = c; j <= dt; ++j) aug[r][j] *= inv;
                for (std::size_t i = 0; i < dm; ++i) {
                    if (i == r || aug[i][c] == 0) continue;
                    Rational f = aug[i][c];
                    for (unsigned long j = c; j <= dt; ++j) aug[i][j] -= f * aug[r][j];
                }
                pivotRow[c] = r;
                ++r;
            }
            for (std::size_t i = r; i < dm; ++i)
                if (aug[i][dt] != 0)
                    raise("ValidationError", "demotion solve failed despite Galois fixedness");
            std::vector<Rational> next(dt, Rational(0));
            for (unsigned long c = 0; c < dt; ++c)
                if (pivotRow[c] < dm) next[c] = aug[pivotRow[c]][dt];
            conductor_ = t;
            coeffs_ = std::move(next);
            for (Rational& c : coeffs_) c.canonicalize();
            demoted = true;
            break;
        }
        if (!demoted) break;
    }
}

Cyclotomic Cyclotomic::galois(unsigned long k) const {
    if (std::gcd(static_cast<unsigned long>(k % std::max(conductor_, 1ul)), conductor_) != 1 &&
        conductor_ > 1)
        raise("ValidationError", "Galois exponent not coprime to conductor");
    if (conductor_ == 1) return *this;
    Cyclotomic z;
    z.conductor_ = conductor_;
    z.coeffs_ = galois_coeffs(k);
    z.canonicalize();
    return z;
}

Cyclotomic Cyclotomic::root_of_unity(unsigned long m, long k) {
    if (m == 0) raise("ValidationError", "root_of_unity requires m >= 1");
    long kr = k % static_cast<long>(m);
    if (kr < 0) kr += static_cast<long>(m);
    unsigned long kk = static_cast<unsigned long>(kr);
    unsigned long g = std::gcd(kk == 0 ? m : kk, m);
    unsigned long order = m / g; // multiplicative order of ζ_m^k
    unsigned long e = kk / g;    // ζ_m^k = ζ_order^e
    if (order == 1) return one();

    bool negate = false;
    if (order % 4 == 2) {
        // ζ_{2u}^e = (-1)^e ζ_u^{e(u+1)/2 mod u} for odd u.
        unsigned long u = order / 2;
        negate = (e % 2 == 1);
        e = (e % u) * ((u + 1) / 2) % u;
        order = u;
        if (order == 1) return negate ? -one() : one();
    }
    std::vector<Rational> mono(static_cast<std::size_t>(e) + 1, Rational(0));
    mono.back() = negate ? Rational(-1) : Rational(1);
    return Cyclotomic(order, std::move(mono));
}

Cyclotomic primitive_root(unsigned long m) {
    return Cyclotomic::root_of_unity(m, 1);
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z = *this;
    for (Rational& c : z.coeffs_) c = -c;
    return z;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    unsigned long target = std::lcm(conductor_, o.conductor_);
    Cyclotomic a = promoted(target), b = o.promoted(target);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    a.canonicalize();
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (is_zero() || o.is_zero()) return zero();
    unsigned long target = std::lcm(conductor_, o.conductor_);
    Cyclotomic a = promoted(target), b = o.promoted(target);
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Cyclotomic(target, std::move(prod));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) raise("DivisionByZero", "inverse of zero");
    if (is_rational()) return from_rational(1 / coeffs_[0]);

    // Extended Euclid in Q[x] against the (irreducible) cyclotomic polynomial:
    // track s with s·this ≡ r (mod Φ) until r is a nonzero constant.
    const auto& phiInt = cyclotomic_polynomial(conductor_);
    std::vector<Rational> r0(phiInt.begin(), phiInt.end());
    std::vector<Rational> r1 = coeffs_;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};
    while (r1.size() > 1) {
        std::vector<Rational> q(r0.size() - r1.size() + 1, Rational(0));
        std::vector<Rational> rem = r0;
        for (std::size_t i = q.size(); i-- > 0;) {
            Rational c = rem[i + r1.size() - 1] / r1.back();
            q[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < r1.size(); ++j) rem[i + j] -= c * r1[j];
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        std::vector<Rational> snew(std::max(s0.size(), q.size() + s1.size() - 1), Rational(0));
        for (std::size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
        if (r1.empty()) raise("ValidationError", "zero remainder before unit gcd in inverse");
    }
    Rational c = r1[0];
    for (Rational& x : s1) x /= c;
    return Cyclotomic(conductor_, std::move(s1));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

Cyclotomic Cyclotomic::pow(const Integer& e) const {
    if (e == 0) return one();
    Cyclotomic base = (e < 0) ? inverse() : *this;
    Integer n = abs(e);
    Cyclotomic acc = one();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return acc;
}

std::optional<unsigned long> Cyclotomic::multiplicative_order() const {
    if (is_zero()) raise("ZeroInput", "multiplicative order of zero");
    // A root of unity in the conductor-m field has order dividing lcm(2, m).
    unsigned long cap = std::lcm(2ul, conductor_);
    if (!pow(cap).is_one()) return std::nullopt;
    for (unsigned long d : divisors(cap))
        if (pow(d).is_one()) return d;
    return std::nullopt; // unreachable: pow(cap) was one
}

unsigned long discrete_log(const Cyclotomic& value, const Cyclotomic& base, unsigned long order) {
    Cyclotomic p = Cyclotomic::one();
    for (unsigned long e = 0; e < order; ++e) {
        if (p == value) return e;
        p *= base;
    }
    raise("ValidationError", "value is not a power of the given base");
}

std::string Cyclotomic::canonical_string() const {
    std::ostringstream out;
    out << "cyc(" << conductor_ << ";";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : " ") << coeffs_[i];
    out << ")";
    return out.str();
}

std::string Cyclotomic::to_string() const {
    if (is_rational()) {
        std::ostringstream out;
        out << coeffs_[0];
        return out.str();
    }
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) {
            ++nonzero;
            which = i;
        }
    if (nonzero == 1) {
        std::ostringstream out;
        if (coeffs_[which] != 1) out << coeffs_[which] << "*";
        out << "zeta(" << conductor_ << ")";
        if (which != 1) out << "^" << which;
        return out.str();
    }
    return canonical_string();
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            raise("ParseError", std::string("expected '") + c + "' at offset " + std::to_string(pos) +
                                    " in \"" + text + "\"");
    }
    Integer integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits)
            raise("ParseError", "expected integer at offset " + std::to_string(start) + " in \"" + text + "\"");
        return Integer(text.substr(start, pos - start));
    }
    Rational rational() {
        Integer num = integer();
        if (eat('/')) {
            Integer den = integer();
            if (den == 0) raise("ParseError", "zero denominator in \"" + text + "\"");
            Rational r(num);
            r /= Rational(den);
            return r;
        }
        return Rational(num);
    }

    Cyclotomic factor() {
        skip_ws();
        if (text.compare(pos, 5, "zeta(") == 0) {
            pos += 5;
            Integer m = integer();
            expect(')');
            long k = 1;
            if (eat('^')) k = static_cast<long>(integer().get_si());
            if (m <= 0) raise("ParseError", "zeta order must be positive in \"" + text + "\"");
            return Cyclotomic::root_of_unity(m.get_ui(), k);
        }
        if (text.compare(pos, 4, "cyc(") == 0) {
            pos += 4;
            Integer m = integer();
            expect(';');
            std::vector<Rational> coeffs;
            coeffs.push_back(rational());
            while (eat(',')) coeffs.push_back(rational());
            expect(')');
            if (m <= 0) raise("ParseError", "cyc conductor must be positive in \"" + text + "\"");
            Cyclotomic value = Cyclotomic::zero();
            Cyclotomic z = Cyclotomic::root_of_unity(m.get_ui(), 1);
            for (std::size_t e = 0; e < coeffs.size(); ++e)
                value += Cyclotomic::from_rational(coeffs[e]) * z.pow(Integer(static_cast<long>(e)));
            return value;
        }
        if (eat('-')) return -factor();
        return Cyclotomic::from_rational(rational());
    }

    Cyclotomic expression() {
        Cyclotomic value = factor();
        for (;;) {
            if (eat('*')) {
                value *= factor();
            } else if (eat('/')) {
                value = value / factor();
            } else {
                break;
            }
        }
        return value;
    }
};

} // namespace

Cyclotomic Cyclotomic::parse(const std::string& text) {
    Parser p{text};
    Cyclotomic value = p.expression();
    p.skip_ws();
    if (p.pos != text.size())
        raise("ParseError", "trailing characters at offset " + std::to_string(p.pos) + " in \"" + text + "\"");
    return value;
}

} // namespace cextdisc::scalars
