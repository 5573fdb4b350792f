#include "etfkit/finite_field.hpp"

#include <algorithm>
#include <string>

namespace etfkit {

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo g over F_p (g nonzero).
Poly poly_mod(Poly f, const Poly& g, std::int64_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    std::int64_t lead_inv = 1;
    while ((lead_inv * g.back()) % p != 1) ++lead_inv;
    while (f.size() > dg) {
        const std::int64_t c = (f.back() * lead_inv) % p;
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
        trim(f);
    }
    return f;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<PrimePower> prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    std::int64_t p = 2;
    while (q % p != 0) ++p;
    std::int64_t n = 0;
    while (q % p == 0) {
        q /= p;
        ++n;
    }
    if (q != 1) return std::nullopt;
    return PrimePower{p, n};
}

bool is_irreducible(const std::vector<std::int64_t>& poly, std::int64_t p) {
    Poly f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const auto n = static_cast<std::int64_t>(f.size()) - 1;
    if (n == 1) return true;
    // Trial division by every monic polynomial of degree 1 .. n/2.
    for (std::int64_t d = 1; d <= n / 2; ++d) {
        const std::int64_t count = ipow(p, d);
        for (std::int64_t code = 0; code < count; ++code) {
            Poly g(static_cast<std::size_t>(d) + 1, 0);
            std::int64_t c = code;
            for (std::int64_t i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = c % p;
                c /= p;
            }
            g.back() = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

FiniteField::FiniteField(std::int64_t p, std::int64_t n) : p_(p), n_(n), q_(1) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw InvalidArgument("field degree must be >= 1");
    for (std::int64_t i = 0; i < n; ++i) {
        q_ *= p;
        if (q_ > kFieldOrderCap) throw InvalidArgument("field order exceeds cap 2^20");
    }
    if (n == 1) {
        modulus_ = {0, 1};
    } else {
        for (std::int64_t code = 0; code < q_; ++code) {
            Poly f = coefficients(code);
            f.push_back(1);
            if (is_irreducible(f, p)) {
                modulus_ = std::move(f);
                break;
            }
        }
        if (modulus_.empty()) throw ConsistencyError("no irreducible polynomial found");
    }

    const std::int64_t m = q_ - 1;
    const auto factors = prime_factors(m);
    auto slow_pow = [&](FieldElement a, std::int64_t e) {
        FieldElement r = 1;
        while (e > 0) {
            if (e & 1) r = poly_mul(r, a);
            a = poly_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    generator_ = 0;
    for (FieldElement x = 1; x < q_; ++x) {
        const bool primitive =
            std::all_of(factors.begin(), factors.end(), [&](std::int64_t r) { return slow_pow(x, m / r) != 1; });
        if (primitive) {
            generator_ = x;
            break;
        }
    }
    if (generator_ == 0) throw ConsistencyError("no multiplicative generator found");
    exp_.resize(static_cast<std::size_t>(m));
    log_.assign(static_cast<std::size_t>(q_), -1);
    FieldElement cur = 1;
    for (std::int64_t k = 0; k < m; ++k) {
        exp_[static_cast<std::size_t>(k)] = cur;
        log_[static_cast<std::size_t>(cur)] = k;
        cur = poly_mul(cur, generator_);
    }
}

FiniteField FiniteField::of_order(std::int64_t q) {
    const auto pp = prime_power(q);
    if (!pp) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return {pp->p, pp->n};
}

std::vector<std::int64_t> FiniteField::coefficients(FieldElement x) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n_));
    for (auto& a : c) {
        a = x % p_;
        x /= p_;
    }
    return c;
}

FieldElement FiniteField::from_coefficients(const std::vector<std::int64_t>& c) const {
    if (static_cast<std::int64_t>(c.size()) > n_) throw InvalidArgument("too many coefficients for field degree");
    FieldElement x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p_ + ((c[i] % p_) + p_) % p_;
    return x;
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const {
    if (p_ == 2) return a ^ b;
    FieldElement out = 0;
    FieldElement place = 1;
    for (std::int64_t i = 0; i < n_; ++i) {
        out += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

FieldElement FiniteField::neg(FieldElement a) const {
    if (p_ == 2) return a;
    FieldElement out = 0;
    FieldElement place = 1;
    for (std::int64_t i = 0; i < n_; ++i) {
        out += ((p_ - a % p_) % p_) * place;
        a /= p_;
        place *= p_;
    }
    return out;
}

FieldElement FiniteField::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FiniteField::poly_mul(FieldElement a, FieldElement b) const {
    const auto ca = coefficients(a);
    const auto cb = coefficients(b);
    Poly prod(static_cast<std::size_t>(2 * n_), 0);
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    Poly r = poly_mod(std::move(prod), modulus_, p_);
    r.resize(static_cast<std::size_t>(n_), 0);
    return from_coefficients(r);
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    const std::int64_t m = q_ - 1;
    return exp_[static_cast<std::size_t>((log_[static_cast<std::size_t>(a)] + log_[static_cast<std::size_t>(b)]) % m)];
}

FieldElement FiniteField::inv(FieldElement a) const {
    if (a == 0) throw InvalidArgument("zero has no inverse");
    const std::int64_t m = q_ - 1;
    return exp_[static_cast<std::size_t>((m - log_[static_cast<std::size_t>(a)]) % m)];
}

FieldElement FiniteField::pow(FieldElement a, std::int64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::int64_t m = q_ - 1;
    const std::int64_t k = ((log_[static_cast<std::size_t>(a)] * (e % m)) % m + m) % m;
    return exp_[static_cast<std::size_t>(k)];
}

FieldElement FiniteField::from_int(std::int64_t k) const { return ((k % p_) + p_) % p_; }

FieldElement FiniteField::trace(FieldElement x, std::int64_t sub_degree) const {
    if (sub_degree < 1 || n_ % sub_degree != 0)
        throw InvalidArgument("trace: subfield degree " + std::to_string(sub_degree) + " does not divide " +
                              std::to_string(n_));
    const std::int64_t frob = ipow(p_, sub_degree);
    FieldElement acc = 0;
    FieldElement y = x;
    for (std::int64_t j = 0; j < n_ / sub_degree; ++j) {
        acc = add(acc, y);
        y = pow(y, frob);
    }
    return acc;
}

bool FiniteField::in_subfield(FieldElement x, std::int64_t sub_degree) const {
    if (sub_degree < 1 || n_ % sub_degree != 0) throw InvalidArgument("subfield degree does not divide field degree");
    return pow(x, ipow(p_, sub_degree)) == x;
}

std::int64_t FiniteField::dlog(FieldElement x) const {
    if (x <= 0 || x >= q_) throw InvalidArgument("discrete log of zero or out-of-range element");
    return log_[static_cast<std::size_t>(x)];
}

std::int64_t FiniteField::dlog(FieldElement g, FieldElement x) const {
    if (multiplicative_order(g) != q_ - 1) throw InvalidArgument("dlog base is not a generator");
    const std::int64_t m = q_ - 1;
    // g = alpha^a with gcd(a, m) = 1, so log_g(x) = log(x) * a^{-1} mod m.
    const std::int64_t a = dlog(g);
    std::int64_t a_inv = 0;
    for (std::int64_t t = 0; t < m; ++t)
        if ((a * t) % m == 1 % m) {
            a_inv = t;
            break;
        }
    return (dlog(x) * a_inv) % m;
}

FieldElement FiniteField::exp(std::int64_t k) const {
    const std::int64_t m = q_ - 1;
    return exp_[static_cast<std::size_t>(((k % m) + m) % m)];
}

std::int64_t FiniteField::multiplicative_order(FieldElement x) const {
    const std::int64_t m = q_ - 1;
    const std::int64_t k = dlog(x);
    return m / std::gcd(k, m);
}

std::vector<FieldElement> FiniteField::squares() const {
    if (p_ == 2) throw InvalidArgument("squares/nonsquares need a field of odd order");
    std::vector<FieldElement> out;
    for (std::int64_t k = 0; k < q_ - 1; k += 2) out.push_back(exp(k));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FieldElement> FiniteField::nonsquares() const {
    if (p_ == 2) throw InvalidArgument("squares/nonsquares need a field of odd order");
    std::vector<FieldElement> out;
    for (std::int64_t k = 1; k < q_ - 1; k += 2) out.push_back(exp(k));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace etfkit
