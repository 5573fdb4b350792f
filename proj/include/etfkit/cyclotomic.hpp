#pragma once

// Exact arithmetic in cyclotomic fields.
//
// Character values of a finite abelian group are L-th roots of unity, where L
// is the exponent of the group. Sums of character values (DFT coefficients,
// cross-Gram entries, conference-matrix entries) are therefore integer
// combinations of powers of zeta_L = exp(2 pi i / L). Equality of two such
// combinations is decided exactly by reducing modulo the cyclotomic
// polynomial Phi_L.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etfkit/error.hpp"

namespace etfkit {

using cdouble = std::complex<double>;

/// zeta_L^e as an exact value. Exponent is kept reduced mod L.
struct RootOfUnity {
    std::int64_t exponent = 0;
    std::int64_t modulus = 1;

    RootOfUnity() = default;
    RootOfUnity(std::int64_t e, std::int64_t L);

    [[nodiscard]] RootOfUnity operator*(const RootOfUnity& other) const;
    [[nodiscard]] RootOfUnity conj() const { return {-exponent, modulus}; }
    [[nodiscard]] RootOfUnity pow(std::int64_t k) const { return {exponent * k, modulus}; }
    [[nodiscard]] bool is_one() const { return exponent == 0; }
    [[nodiscard]] cdouble to_complex() const;
    /// Same value with exponent/modulus divided by their gcd.
    [[nodiscard]] RootOfUnity reduced() const;

    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b);
};

/// Coefficients of the L-th cyclotomic polynomial, constant term first. Cached.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t L);

/// Euler's totient.
std::int64_t euler_phi(std::int64_t n);

/// sum_e coeffs[e] * zeta_L^e with integer coefficients.
class CyclotomicInt {
public:
    CyclotomicInt() : CyclotomicInt(1) {}
    explicit CyclotomicInt(std::int64_t L);
    static CyclotomicInt integer(std::int64_t value, std::int64_t L = 1);
    static CyclotomicInt root(const RootOfUnity& r, std::int64_t coeff = 1);

    [[nodiscard]] std::int64_t modulus() const { return static_cast<std::int64_t>(coeffs_.size()); }
    [[nodiscard]] const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    [[nodiscard]] std::int64_t coeff(std::int64_t e) const;

    void add_root(std::int64_t exponent, std::int64_t coeff = 1);
    /// Same number written over the L'-th roots; L must divide L'.
    [[nodiscard]] CyclotomicInt lift(std::int64_t L_new) const;

    CyclotomicInt& operator+=(const CyclotomicInt& other);
    CyclotomicInt& operator-=(const CyclotomicInt& other);
    CyclotomicInt& operator*=(std::int64_t k);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
    friend CyclotomicInt operator*(CyclotomicInt a, std::int64_t k) { return a *= k; }

    [[nodiscard]] CyclotomicInt conj() const;
    /// Multiplication by zeta_L^k.
    [[nodiscard]] CyclotomicInt rotate(std::int64_t k) const;

    /// True when every stored coefficient is zero (sufficient, not necessary, for zero).
    [[nodiscard]] bool structurally_zero() const;
    /// Exact zero test modulo Phi_L.
    [[nodiscard]] bool is_zero() const;
    /// The rational integer this number equals, if it is one.
    [[nodiscard]] std::optional<std::int64_t> integer_value() const;
    /// Remainder modulo Phi_L, degree < phi(L).
    [[nodiscard]] std::vector<std::int64_t> reduced() const;
    /// Content: gcd of all coefficients.
    [[nodiscard]] std::int64_t content() const;
    [[nodiscard]] cdouble to_complex() const;

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

private:
    std::vector<std::int64_t> coeffs_;
};

/// Canonical single-term form  (num/den) * sqrt(rad) * zeta_mod^exp  with num >= 0.
struct Monomial {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::int64_t root_exp = 0;
    std::int64_t root_mod = 1;
    std::int64_t rad = 1;

    [[nodiscard]] cdouble to_complex() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// sqrt(rad) * cyclo / den with rad squarefree and den > 0.
///
/// Closed under multiplication and conjugation; addition is defined when the
/// radicals agree (always the case for entries of one matrix family here).
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(CyclotomicInt cyclo, std::int64_t den = 1, std::int64_t rad = 1);
    static ExactScalar from_rational(Rational r);
    /// sqrt(r) for a non-negative rational r.
    static ExactScalar sqrt_of(Rational r);
    static ExactScalar from_root(const RootOfUnity& z);
    static ExactScalar from_monomial(const Monomial& m);

    [[nodiscard]] const CyclotomicInt& cyclo() const { return cyclo_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] std::int64_t rad() const { return rad_; }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    /// a + b, or nullopt when the radicals differ and neither side is zero.
    [[nodiscard]] static std::optional<ExactScalar> add(const ExactScalar& a, const ExactScalar& b);
    [[nodiscard]] ExactScalar conj() const;
    [[nodiscard]] ExactScalar negated() const;

    [[nodiscard]] bool is_zero() const { return cyclo_.is_zero(); }
    [[nodiscard]] cdouble to_complex() const;
    /// Single-term form when the value is a rational multiple of sqrt(rad) times a root of unity.
    [[nodiscard]] std::optional<Monomial> as_monomial() const;

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);

private:
    void normalize();

    CyclotomicInt cyclo_{1};
    std::int64_t den_ = 1;
    std::int64_t rad_ = 1;
};

/// Squarefree part m and square root s with n = s^2 * m.
struct SquarefreeSplit {
    std::int64_t square_root;
    std::int64_t squarefree;
};
SquarefreeSplit squarefree_split(std::int64_t n);

}  // namespace etfkit
