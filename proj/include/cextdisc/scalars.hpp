#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cextdisc/error.hpp"

namespace cextdisc::scalars {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact element of the m-th cyclotomic field over Q, stored as rational
// coefficients in the power basis 1, ζ_m, ..., ζ_m^{φ(m)-1} reduced modulo
// the m-th cyclotomic polynomial. Values are kept canonical: the conductor is
// always the smallest m (never ≡ 2 mod 4) whose field contains the value, so
// equality is plain coefficient comparison.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeffs_{Rational(0)} {} // zero

    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return from_rational(1); }
    static Cyclotomic from_rational(Rational r);
    static Cyclotomic from_integer(long n) { return from_rational(Rational(n)); }
    // ζ_m^k (k may be negative); canonical conductor of the result.
    static Cyclotomic root_of_unity(unsigned long m, long k = 1);

    unsigned long conductor() const noexcept { return conductor_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const noexcept { return conductor_ == 1; }
    Rational rational_value() const; // requires is_rational

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator/(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    bool operator<(const Cyclotomic& o) const; // arbitrary but total ordering

    Cyclotomic inverse() const; // DivisionByZero on zero
    Cyclotomic pow(const Integer& e) const;

    // Galois conjugate σ_k (ζ ↦ ζ^k), k coprime to the conductor.
    Cyclotomic galois(unsigned long k) const;

    // Least n ≥ 1 with z^n = 1; nullopt if z is not a root of unity.
    // Raises ZeroInput on zero.
    std::optional<unsigned long> multiplicative_order() const;

    // Canonical textual form "cyc(m; c0, c1, ...)".
    std::string canonical_string() const;
    // Compact form where possible: "p/q", "zeta(m)^k", "r*zeta(m)^k".
    std::string to_string() const;

    // Accepts rationals ("-3/2"), roots of unity ("zeta(12)^5"), products
    // thereof ("1/2*zeta(3)"), and the canonical cyc(...) form.
    static Cyclotomic parse(const std::string& text);

private:
    Cyclotomic(unsigned long conductor, std::vector<Rational> coeffs);
    void canonicalize(); // reduce + demote to minimal conductor
    Cyclotomic promoted(unsigned long target) const;
    std::vector<Rational> galois_coeffs(unsigned long k) const; // reduced, same conductor

    unsigned long conductor_;
    std::vector<Rational> coeffs_;
};

// ζ_m as a canonical value; post: multiplicative order exactly m.
Cyclotomic primitive_root(unsigned long m);

// Euler totient and the monic m-th cyclotomic polynomial (integer
// coefficients, constant term first); results are cached.
unsigned long euler_phi(unsigned long m);
const std::vector<Integer>& cyclotomic_polynomial(unsigned long m);

// Discrete logarithm of a root of unity: e with base^e == value, scanning
// e = 0..order-1. Raises ValidationError if no power matches.
unsigned long discrete_log(const Cyclotomic& value, const Cyclotomic& base, unsigned long order);

} // namespace cextdisc::scalars
