#pragma once

// GF(p^n) with elements encoded as integers: the polynomial sum_i a_i x^i
// (0 <= a_i < p) is stored as sum_i a_i p^i. Zero is 0, one is 1.

#include <cstdint>
#include <optional>
#include <vector>

#include "etfkit/error.hpp"

namespace etfkit {

using FieldElement = std::int64_t;

bool is_prime(std::int64_t n);

/// (p, n) with q = p^n, or nullopt when q is not a prime power.
struct PrimePower {
    std::int64_t p;
    std::int64_t n;
};
std::optional<PrimePower> prime_power(std::int64_t q);

class FiniteField {
public:
    /// Field of order p^n with the least monic irreducible modulus (by integer encoding).
    FiniteField(std::int64_t p, std::int64_t n);
    /// Field of order q; throws InvalidArgument when q is not a prime power.
    static FiniteField of_order(std::int64_t q);

    [[nodiscard]] std::int64_t characteristic() const { return p_; }
    [[nodiscard]] std::int64_t degree() const { return n_; }
    [[nodiscard]] std::int64_t order() const { return q_; }
    /// Monic modulus, constant term first (length n + 1).
    [[nodiscard]] const std::vector<std::int64_t>& modulus() const { return modulus_; }

    [[nodiscard]] std::vector<std::int64_t> coefficients(FieldElement x) const;
    [[nodiscard]] FieldElement from_coefficients(const std::vector<std::int64_t>& c) const;

    [[nodiscard]] FieldElement add(FieldElement a, FieldElement b) const;
    [[nodiscard]] FieldElement sub(FieldElement a, FieldElement b) const;
    [[nodiscard]] FieldElement neg(FieldElement a) const;
    [[nodiscard]] FieldElement mul(FieldElement a, FieldElement b) const;
    [[nodiscard]] FieldElement inv(FieldElement a) const;
    [[nodiscard]] FieldElement pow(FieldElement a, std::int64_t e) const;
    /// The embedded prime-field element k * 1.
    [[nodiscard]] FieldElement from_int(std::int64_t k) const;

    /// tr_{p^n / p^m}(x) = sum_{j < n/m} x^{p^{m j}}; requires m | n.
    [[nodiscard]] FieldElement trace(FieldElement x, std::int64_t sub_degree) const;
    /// True when x lies in the subfield of order p^m.
    [[nodiscard]] bool in_subfield(FieldElement x, std::int64_t sub_degree) const;

    /// Least element (by encoding) of multiplicative order q - 1.
    [[nodiscard]] FieldElement generator() const { return generator_; }
    /// k with generator()^k = x; throws for x = 0.
    [[nodiscard]] std::int64_t dlog(FieldElement x) const;
    /// k with g^k = x for an arbitrary generator g.
    [[nodiscard]] std::int64_t dlog(FieldElement g, FieldElement x) const;
    [[nodiscard]] FieldElement exp(std::int64_t k) const;
    [[nodiscard]] std::int64_t multiplicative_order(FieldElement x) const;

    /// Nonzero squares and nonsquares, each sorted; odd order only.
    [[nodiscard]] std::vector<FieldElement> squares() const;
    [[nodiscard]] std::vector<FieldElement> nonsquares() const;

private:
    [[nodiscard]] FieldElement poly_mul(FieldElement a, FieldElement b) const;

    std::int64_t p_;
    std::int64_t n_;
    std::int64_t q_;
    std::vector<std::int64_t> modulus_;
    FieldElement generator_ = 1;
    std::vector<FieldElement> exp_;
    std::vector<std::int64_t> log_;
};

/// Largest field order the library builds tables for (2^20).
constexpr std::int64_t kFieldOrderCap = std::int64_t{1} << 20;

/// True when the monic polynomial (constant term first) is irreducible over F_p.
bool is_irreducible(const std::vector<std::int64_t>& poly, std::int64_t p);

}  // namespace etfkit
