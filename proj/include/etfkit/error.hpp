#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace etfkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad order, mismatched groups, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration hit the configured size cap and cannot claim completeness.
class SearchNotExhaustive : public Error {
public:
    using Error::Error;
};

/// Two independent routes to the same quantity disagreed. Indicates a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Exact rational with a positive, reduced denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d == 0) throw InvalidArgument("Rational: zero denominator");
        normalize();
    }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    [[nodiscard]] bool is_integer() const { return den == 1; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(const Rational&, const Rational&) = default;

    [[nodiscard]] std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
};

/// Reads an integer environment variable, falling back to `fallback` when unset or malformed.
std::int64_t env_cap(const char* name, std::int64_t fallback);

}  // namespace etfkit
