#include "etfkit/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>

namespace etfkit {

std::int64_t env_cap(const char* name, std::int64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const long long v = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0) return fallback;
    return static_cast<std::int64_t>(v);
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

cdouble unit_root(std::int64_t e, std::int64_t L) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(e, L)) / static_cast<double>(L);
    return {std::cos(angle), std::sin(angle)};
}

int moebius(std::int64_t n) {
    int result = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<std::int64_t> compute_cyclotomic(std::int64_t n) {
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: multiply the mu = +1 factors, then divide.
    std::vector<std::int64_t> poly{1};
    std::vector<std::int64_t> divisors_down;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const int mu = moebius(n / d);
        if (mu == 1) {
            std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(d), 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + static_cast<std::size_t>(d)] += poly[i];
                next[i] -= poly[i];
            }
            poly = std::move(next);
        } else if (mu == -1) {
            divisors_down.push_back(d);
        }
    }
    for (const std::int64_t d : divisors_down) {
        const auto du = static_cast<std::size_t>(d);
        std::vector<std::int64_t> quotient(poly.size() - du, 0);
        for (std::size_t i = poly.size() - 1; i >= du; --i) {
            const std::int64_t c = poly[i];
            quotient[i - du] = c;
            poly[i] -= c;
            poly[i - du] += c;
        }
        poly = std::move(quotient);
    }
    return poly;
}

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t L) {
    if (L < 1) throw InvalidArgument("cyclotomic_polynomial: order must be >= 1");
    static std::mutex guard;
    static std::map<std::int64_t, std::vector<std::int64_t>> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(L);
    if (it == cache.end()) it = cache.emplace(L, compute_cyclotomic(L)).first;
    return it->second;
}

SquarefreeSplit squarefree_split(std::int64_t n) {
    if (n < 1) throw InvalidArgument("squarefree_split: argument must be positive");
    std::int64_t root = 1;
    std::int64_t rest = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int k = 0;
        while (n % p == 0) { n /= p; ++k; }
        for (int i = 0; i < k / 2; ++i) root *= p;
        if (k % 2 == 1) rest *= p;
    }
    rest *= n;
    return {root, rest};
}

// --- RootOfUnity ------------------------------------------------------------

RootOfUnity::RootOfUnity(std::int64_t e, std::int64_t L) : exponent(0), modulus(L) {
    if (L < 1) throw InvalidArgument("RootOfUnity: modulus must be >= 1");
    exponent = mod(e, L);
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& other) const {
    const std::int64_t L = std::lcm(modulus, other.modulus);
    return {exponent * (L / modulus) + other.exponent * (L / other.modulus), L};
}

cdouble RootOfUnity::to_complex() const { return unit_root(exponent, modulus); }

RootOfUnity RootOfUnity::reduced() const {
    const std::int64_t g = std::gcd(exponent, modulus);
    return {exponent / g, modulus / g};
}

bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
    const RootOfUnity ra = a.reduced();
    const RootOfUnity rb = b.reduced();
    return ra.exponent == rb.exponent && ra.modulus == rb.modulus;
}

// --- CyclotomicInt ----------------------------------------------------------

CyclotomicInt::CyclotomicInt(std::int64_t L) {
    if (L < 1) throw InvalidArgument("CyclotomicInt: modulus must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(L), 0);
}

CyclotomicInt CyclotomicInt::integer(std::int64_t value, std::int64_t L) {
    CyclotomicInt out(L);
    out.coeffs_[0] = value;
    return out;
}

CyclotomicInt CyclotomicInt::root(const RootOfUnity& r, std::int64_t coeff) {
    CyclotomicInt out(r.modulus);
    out.coeffs_[static_cast<std::size_t>(r.exponent)] = coeff;
    return out;
}

std::int64_t CyclotomicInt::coeff(std::int64_t e) const {
    return coeffs_[static_cast<std::size_t>(mod(e, modulus()))];
}

void CyclotomicInt::add_root(std::int64_t exponent, std::int64_t coeff) {
    coeffs_[static_cast<std::size_t>(mod(exponent, modulus()))] += coeff;
}

CyclotomicInt CyclotomicInt::lift(std::int64_t L_new) const {
    const std::int64_t L = modulus();
    if (L_new % L != 0) throw InvalidArgument("CyclotomicInt::lift: modulus must divide the new modulus");
    if (L_new == L) return *this;
    CyclotomicInt out(L_new);
    const std::int64_t step = L_new / L;
    for (std::int64_t e = 0; e < L; ++e) out.coeffs_[static_cast<std::size_t>(e * step)] = coeffs_[static_cast<std::size_t>(e)];
    return out;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& other) {
    if (other.modulus() != modulus()) {
        const std::int64_t L = std::lcm(modulus(), other.modulus());
        *this = lift(L);
        return *this += other.lift(L);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& other) {
    if (other.modulus() != modulus()) {
        const std::int64_t L = std::lcm(modulus(), other.modulus());
        *this = lift(L);
        return *this -= other.lift(L);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(std::int64_t k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    const std::int64_t L = std::lcm(a.modulus(), b.modulus());
    const CyclotomicInt la = a.lift(L);
    const CyclotomicInt lb = b.lift(L);
    CyclotomicInt out(L);
    std::vector<std::size_t> nz_b;
    for (std::size_t j = 0; j < lb.coeffs_.size(); ++j)
        if (lb.coeffs_[j] != 0) nz_b.push_back(j);
    const auto Lu = static_cast<std::size_t>(L);
    for (std::size_t i = 0; i < la.coeffs_.size(); ++i) {
        if (la.coeffs_[i] == 0) continue;
        for (const std::size_t j : nz_b) out.coeffs_[(i + j) % Lu] += la.coeffs_[i] * lb.coeffs_[j];
    }
    return out;
}

CyclotomicInt CyclotomicInt::conj() const {
    CyclotomicInt out(modulus());
    const std::int64_t L = modulus();
    for (std::int64_t e = 0; e < L; ++e) out.coeffs_[static_cast<std::size_t>(mod(-e, L))] = coeffs_[static_cast<std::size_t>(e)];
    return out;
}

CyclotomicInt CyclotomicInt::rotate(std::int64_t k) const {
    CyclotomicInt out(modulus());
    const std::int64_t L = modulus();
    for (std::int64_t e = 0; e < L; ++e) out.coeffs_[static_cast<std::size_t>(mod(e + k, L))] = coeffs_[static_cast<std::size_t>(e)];
    return out;
}

bool CyclotomicInt::structurally_zero() const {
    for (const auto c : coeffs_)
        if (c != 0) return false;
    return true;
}

std::vector<std::int64_t> CyclotomicInt::reduced() const {
    const std::vector<std::int64_t>& phi = cyclotomic_polynomial(modulus());
    const std::size_t deg = phi.size() - 1;
    std::vector<std::int64_t> r = coeffs_;
    for (std::size_t i = r.size(); i-- > deg;) {
        const std::int64_t c = r[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
    }
    r.resize(deg);
    return r;
}

bool CyclotomicInt::is_zero() const {
    if (structurally_zero()) return true;
    for (const auto c : reduced())
        if (c != 0) return false;
    return true;
}

std::optional<std::int64_t> CyclotomicInt::integer_value() const {
    const auto r = reduced();
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r.empty() ? 0 : r[0];
}

std::int64_t CyclotomicInt::content() const {
    std::int64_t g = 0;
    for (const auto c : coeffs_) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

cdouble CyclotomicInt::to_complex() const {
    cdouble acc{0.0, 0.0};
    const std::int64_t L = modulus();
    for (std::int64_t e = 0; e < L; ++e) {
        const std::int64_t c = coeffs_[static_cast<std::size_t>(e)];
        if (c != 0) acc += static_cast<double>(c) * unit_root(e, L);
    }
    return acc;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) { return (a - b).is_zero(); }

// --- Monomial / ExactScalar -------------------------------------------------

cdouble Monomial::to_complex() const {
    return static_cast<double>(num) / static_cast<double>(den) * std::sqrt(static_cast<double>(rad)) *
           unit_root(root_exp, root_mod);
}

ExactScalar::ExactScalar(CyclotomicInt cyclo, std::int64_t den, std::int64_t rad)
    : cyclo_(std::move(cyclo)), den_(den), rad_(rad) {
    if (den_ == 0) throw InvalidArgument("ExactScalar: zero denominator");
    if (rad_ < 1) throw InvalidArgument("ExactScalar: radicand must be positive");
    const auto split = squarefree_split(rad_);
    rad_ = split.squarefree;
    cyclo_ *= split.square_root;
    if (den_ < 0) { den_ = -den_; cyclo_ *= -1; }
    normalize();
}

void ExactScalar::normalize() {
    if (cyclo_.structurally_zero()) {
        den_ = 1;
        rad_ = 1;
        return;
    }
    const std::int64_t g = std::gcd(cyclo_.content(), den_);
    if (g > 1) {
        for (std::int64_t e = 0; e < cyclo_.modulus(); ++e) {
            const std::int64_t c = cyclo_.coeff(e);
            if (c != 0) cyclo_.add_root(e, c / g - c);
        }
        den_ /= g;
    }
}

ExactScalar ExactScalar::from_rational(Rational r) { return {CyclotomicInt::integer(r.num), r.den, 1}; }

ExactScalar ExactScalar::sqrt_of(Rational r) {
    if (r.num < 0) throw InvalidArgument("ExactScalar::sqrt_of: negative argument");
    if (r.num == 0) return {};
    const auto split = squarefree_split(r.num * r.den);
    return {CyclotomicInt::integer(split.square_root), r.den, split.squarefree};
}

ExactScalar ExactScalar::from_root(const RootOfUnity& z) { return {CyclotomicInt::root(z), 1, 1}; }

ExactScalar ExactScalar::from_monomial(const Monomial& m) {
    return {CyclotomicInt::root(RootOfUnity(m.root_exp, m.root_mod), m.num), m.den, m.rad};
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    const std::int64_t rad = a.rad_ * b.rad_;
    return {a.cyclo_ * b.cyclo_, a.den_ * b.den_, rad};
}

std::optional<ExactScalar> ExactScalar::add(const ExactScalar& a, const ExactScalar& b) {
    if (a.cyclo_.structurally_zero()) return b;
    if (b.cyclo_.structurally_zero()) return a;
    if (a.rad_ != b.rad_) return std::nullopt;
    const std::int64_t l = std::lcm(a.den_, b.den_);
    CyclotomicInt sum = a.cyclo_ * (l / a.den_);
    sum += b.cyclo_ * (l / b.den_);
    return ExactScalar(std::move(sum), l, a.rad_);
}

ExactScalar ExactScalar::conj() const {
    ExactScalar out = *this;
    out.cyclo_ = cyclo_.conj();
    return out;
}

ExactScalar ExactScalar::negated() const {
    ExactScalar out = *this;
    out.cyclo_ *= -1;
    return out;
}

cdouble ExactScalar::to_complex() const {
    return cyclo_.to_complex() * (std::sqrt(static_cast<double>(rad_)) / static_cast<double>(den_));
}

std::optional<Monomial> ExactScalar::as_monomial() const {
    const cdouble v = cyclo_.to_complex();
    const std::int64_t L = cyclo_.modulus();
    if (std::abs(v) < 0.5) {
        if (cyclo_.is_zero()) return Monomial{};
        return std::nullopt;
    }
    const auto k = static_cast<std::int64_t>(std::llround(std::abs(v)));
    if (k == 0 || std::abs(std::abs(v) - static_cast<double>(k)) > 1e-6) return std::nullopt;
    // For odd L the sign is not a power of zeta_L, so search the 2L-th roots.
    const std::int64_t M = L % 2 == 0 ? L : 2 * L;
    const double turns = std::arg(v) / (2.0 * std::numbers::pi);
    const std::int64_t e = mod(static_cast<std::int64_t>(std::llround(turns * static_cast<double>(M))), M);
    CyclotomicInt diff = cyclo_;
    if (M == L) {
        diff.add_root(e, -k);
    } else if (e % 2 == 0) {
        diff.add_root(e / 2, -k);
    } else {
        diff.add_root((e + L) / 2, k);
    }
    if (!diff.is_zero()) return std::nullopt;
    const RootOfUnity z = RootOfUnity(e, M).reduced();
    const Rational c(k, den_);
    return Monomial{c.num, c.den, z.exponent, z.modulus, rad_};
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.rad_ == b.rad_) return (a.cyclo_ * b.den_ - b.cyclo_ * a.den_).is_zero();
    const bool za = a.is_zero();
    const bool zb = b.is_zero();
    if (za || zb) return za && zb;
    // Different radicals: equal squares leave only a sign to settle, which is far from zero numerically.
    const CyclotomicInt lhs = a.cyclo_ * a.cyclo_ * (a.rad_ * b.den_ * b.den_);
    const CyclotomicInt rhs = b.cyclo_ * b.cyclo_ * (b.rad_ * a.den_ * a.den_);
    if (!(lhs == rhs)) return false;
    return std::real(a.to_complex() * std::conj(b.to_complex())) > 0.0;
}

}  // namespace etfkit
