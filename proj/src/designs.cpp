#include "etfkit/designs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "etfkit/finite_field.hpp"

namespace etfkit {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<Index> multiples(std::int64_t step, std::int64_t n) {
    std::vector<Index> out;
    for (std::int64_t k = 0; k < n; k += step) out.push_back(k);
    return out;
}

GroupSubset from_set(const AbelianGroup& G, const std::set<Index>& s) {
    return {G, std::vector<Index>(s.begin(), s.end())};
}

}  // namespace

// --- GroupSubset ------------------------------------------------------------

GroupSubset::GroupSubset(AbelianGroup group, std::vector<Index> elements)
    : group_(std::move(group)), display_(std::move(elements)) {
    for (const Index g : display_)
        if (g < 0 || g >= group_.order()) throw InvalidArgument("subset element out of range: " + std::to_string(g));
    elements_ = display_;
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
        throw InvalidArgument("subset contains a repeated element");
}

bool GroupSubset::contains(Index g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

GroupSubset GroupSubset::with_display_order(std::vector<Index> order) const {
    std::vector<Index> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != elements_) throw InvalidArgument("display order is not a permutation of the subset");
    GroupSubset out = *this;
    out.display_ = std::move(order);
    return out;
}

GroupSubset GroupSubset::translate(Index t) const {
    std::vector<Index> moved;
    moved.reserve(display_.size());
    for (const Index d : display_) moved.push_back(group_.add(d, t));
    return {group_, std::move(moved)};
}

// --- certification ----------------------------------------------------------

IntVector difference_counts(const GroupSubset& D) {
    const IntVector chi = D.indicator();
    return convolve(chi, involution(chi));
}

std::optional<std::int64_t> certify_difference_set(const GroupSubset& D) {
    if (D.size() == 0) return std::nullopt;
    const AbelianGroup& G = D.group();
    if (G.order() == 1) return 0;
    const IntVector counts = difference_counts(D);
    const std::int64_t lambda = counts[1];
    for (Index g = 1; g < G.order(); ++g)
        if (counts[g] != lambda) return std::nullopt;
    return lambda;
}

std::optional<std::pair<Index, Index>> difference_set_witness(const GroupSubset& D) {
    const AbelianGroup& G = D.group();
    if (G.order() < 3) return std::nullopt;
    const IntVector counts = difference_counts(D);
    for (Index g = 2; g < G.order(); ++g)
        if (counts[g] != counts[1]) return std::make_pair(Index{1}, g);
    return std::nullopt;
}

std::optional<RdsParams> certify_rds(const GroupSubset& D, const Subgroup& H, double tol) {
    const AbelianGroup& G = D.group();
    if (!(H.parent() == G)) throw InvalidArgument("certify_rds: subgroup of a different group");
    if (D.size() == 0) return std::nullopt;
    const std::int64_t d = D.size();
    const std::int64_t m = G.order() / H.order();
    const Rational lambda = G.order() == H.order() ? Rational(0) : Rational(d * (d - 1), G.order() - H.order());
    const IntVector counts = difference_counts(D);
    bool ok = lambda.is_integer();
    for (Index g = 1; ok && g < G.order(); ++g) {
        const std::int64_t want = H.contains(g) ? 0 : lambda.num;
        if (counts[g] != want) ok = false;
    }
    const bool fourier = fourier_rds_criterion(D, H, tol);
    if (ok != fourier)
        throw ConsistencyError("certify_rds: difference-count and Fourier criteria disagree");
    if (!ok) return std::nullopt;
    return RdsParams{m, H.order(), d, lambda};
}

bool fourier_rds_criterion(const GroupSubset& D, const Subgroup& H, double tol) {
    const AbelianGroup& G = D.group();
    if (D.size() == 0) return false;
    const auto d = static_cast<double>(D.size());
    const Rational lambda_r =
        G.order() == H.order() ? Rational(0) : Rational(D.size() * (D.size() - 1), G.order() - H.order());
    const double lambda = lambda_r.to_double();
    const Subgroup perp = annihilator(H);
    const std::vector<cdouble> f = dft(D.indicator());
    for (Index gamma = 0; gamma < G.order(); ++gamma) {
        double want = d;
        if (gamma == 0) want += lambda * static_cast<double>(G.order());
        if (perp.contains(gamma)) want -= lambda * static_cast<double>(H.order());
        if (std::abs(std::norm(f[static_cast<std::size_t>(gamma)]) - want) > tol * std::max(1.0, want)) return false;
    }
    return true;
}

std::optional<std::int64_t> welch_integer_S(std::int64_t D, std::int64_t G) {
    if (D <= 0 || D >= G) throw InvalidArgument("welch_integer_S: need 0 < D < G");
    const std::int64_t num = D * (G - 1);
    if (num % (G - D) != 0) return std::nullopt;
    const std::int64_t sq = num / (G - D);
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(sq))));
    while (s * s > sq) --s;
    while ((s + 1) * (s + 1) <= sq) ++s;
    if (s * s != sq) return std::nullopt;
    return s;
}

QuotientRds quotient_rds(const GroupSubset& D, const Subgroup& H, const Subgroup& K) {
    const auto params = certify_rds(D, H);
    if (!params) throw InvalidArgument("quotient_rds: D is not an RDS relative to H");
    if (!K.is_subgroup_of(H)) throw InvalidArgument("quotient_rds: K is not contained in H");
    QuotientGroup q(K);
    std::vector<Index> image;
    for (const Index d : D.display_order()) image.push_back(q.project(d));
    std::vector<Index> forbidden;
    for (const Index h : H.elements()) forbidden.push_back(q.project(h));
    GroupSubset image_set(q.group(), image);  // throws on collisions, which an RDS cannot have
    Subgroup forbidden_sub(q.group(), forbidden);
    const auto image_params = certify_rds(image_set, forbidden_sub);
    if (!image_params || !(image_params->lambda == params->lambda * Rational(K.order())))
        throw ConsistencyError("quotient_rds: image fails the expected RDS parameters");
    return QuotientRds{std::move(q), std::move(image_set), std::move(forbidden_sub), *image_params};
}

GroupSubset complement(const GroupSubset& D) {
    std::vector<Index> out;
    for (Index g = 0; g < D.group().order(); ++g)
        if (!D.contains(g)) out.push_back(g);
    return {D.group(), std::move(out)};
}

std::vector<std::int64_t> additive_orders(std::int64_t Q) {
    const auto pp = prime_power(Q);
    if (!pp) throw InvalidArgument(std::to_string(Q) + " is not a prime power");
    return std::vector<std::int64_t>(static_cast<std::size_t>(pp->n), pp->p);
}

// --- constructions ----------------------------------------------------------

SingerComplement singer_complement(std::int64_t Q, std::int64_t J) {
    const auto pp = prime_power(Q);
    if (!pp) throw InvalidArgument("singer: Q = " + std::to_string(Q) + " is not a prime power");
    if (J < 2) throw InvalidArgument("singer: J must be >= 2");
    const FiniteField F(pp->p, pp->n * 2 * J);
    const std::int64_t QJ = ipow(Q, J);
    const std::int64_t order = (F.order() - 1) / (Q - 1);
    const std::int64_t shift = Q % 2 == 1 ? (QJ + 1) / 2 : 0;
    const AbelianGroup G({order});

    std::set<Index> d_set, a_set, b_set;
    for (FieldElement x = 1; x < F.order(); ++x) {
        const std::int64_t k = F.dlog(x);
        const Index shifted = (k + shift) % order;
        if (F.trace(x, pp->n) != 0) d_set.insert(shifted);
        if (F.trace(x, pp->n * J) == 1) a_set.insert(shifted);
        if (F.in_subfield(x, pp->n * J)) {
            // tr_{Q^J/Q}(x) = sum_{j<J} x^{Q^j}
            FieldElement t = 0;
            std::int64_t e = 1;
            for (std::int64_t j = 0; j < J; ++j, e *= Q) t = F.add(t, F.pow(x, e));
            if (t != 0) b_set.insert(k % order);
        }
    }
    SingerComplement out{G, from_set(G, d_set), Subgroup(G, multiples(QJ + 1, order)), from_set(G, a_set),
                         from_set(G, b_set)};
    if (out.D.size() != ipow(Q, 2 * J - 1) || out.A.size() != QJ || out.B.size() != ipow(Q, J - 1))
        throw ConsistencyError("singer: unexpected set sizes");
    if (!(convolve(out.A.indicator(), out.B.indicator()) == out.D.indicator()))
        throw ConsistencyError("singer: chi_D != chi_A * chi_B");
    return out;
}

SimplicialRds simplicial_rds_quadratic(std::int64_t Q) {
    const auto pp = prime_power(Q);
    if (!pp) throw InvalidArgument("srds: Q = " + std::to_string(Q) + " is not a prime power");
    const FiniteField F(pp->p, 2 * pp->n);
    const std::int64_t order = F.order() - 1;
    const std::int64_t shift = Q % 2 == 1 ? (Q + 1) / 2 : 0;
    const AbelianGroup G({order});
    std::set<Index> a_set;
    for (FieldElement x = 1; x < F.order(); ++x)
        if (F.trace(x, pp->n) == 1) a_set.insert((F.dlog(x) + shift) % order);
    SimplicialRds out{G, from_set(G, a_set), Subgroup(G, multiples(Q + 1, order))};
    for (const Index a : out.A.elements())
        if (out.K.contains(a)) throw ConsistencyError("srds: A meets K");
    const auto params = certify_rds(out.A, out.K);
    if (!params || !(params->lambda == Rational(1)) || params->D != Q)
        throw ConsistencyError("srds: construction is not an RDS(Q+1, Q-1, Q, 1)");
    return out;
}

TppComplement tpp_complement(std::int64_t Q) {
    const auto p1 = prime_power(Q);
    const auto p2 = prime_power(Q + 2);
    if (!p1 || !p2 || Q % 2 == 0)
        throw InvalidArgument("tpp: Q = " + std::to_string(Q) + " and Q + 2 must both be odd prime powers");
    const FiniteField F1 = FiniteField::of_order(Q);
    const FiniteField F2 = FiniteField::of_order(Q + 2);
    std::vector<std::int64_t> orders = additive_orders(Q);
    const auto second = additive_orders(Q + 2);
    orders.insert(orders.end(), second.begin(), second.end());
    const AbelianGroup G(orders);
    auto at = [&](FieldElement x, FieldElement y) {
        auto r = F1.coefficients(x);
        const auto ry = F2.coefficients(y);
        r.insert(r.end(), ry.begin(), ry.end());
        return G.index(GroupElement{r});
    };
    std::vector<Index> d;
    for (FieldElement y = 1; y < Q + 2; ++y) d.push_back(at(0, y));
    for (const FieldElement x : F1.squares())
        for (const FieldElement y : F2.nonsquares()) d.push_back(at(x, y));
    for (const FieldElement x : F1.nonsquares())
        for (const FieldElement y : F2.squares()) d.push_back(at(x, y));
    std::vector<Index> h;
    for (FieldElement x = 0; x < Q; ++x) h.push_back(at(x, 0));
    TppComplement out{G, GroupSubset(G, d), Subgroup(G, h)};
    if (out.D.size() != (Q + 1) * (Q + 1) / 2) throw ConsistencyError("tpp: unexpected set size");
    if (!certify_difference_set(out.D)) throw ConsistencyError("tpp: construction is not a difference set");
    return out;
}

McFarlandSet mcfarland(std::int64_t Q, std::int64_t J, std::optional<std::vector<std::int64_t>> K_orders) {
    const auto pp = prime_power(Q);
    if (!pp) throw InvalidArgument("mcfarland: Q = " + std::to_string(Q) + " is not a prime power");
    if (J < 2) throw InvalidArgument("mcfarland: J must be >= 2");
    const std::int64_t hyperplanes = (ipow(Q, J) - 1) / (Q - 1);
    const std::vector<std::int64_t> k_orders = K_orders.value_or(std::vector<std::int64_t>{hyperplanes + 1});
    const AbelianGroup K(k_orders);
    if (K.order() != hyperplanes + 1)
        throw InvalidArgument("mcfarland: |K| must be " + std::to_string(hyperplanes + 1) + ", got " +
                              std::to_string(K.order()));
    const FiniteField F = FiniteField::of_order(Q);
    std::vector<std::int64_t> orders = k_orders;
    for (std::int64_t j = 0; j < J; ++j) {
        const auto a = additive_orders(Q);
        orders.insert(orders.end(), a.begin(), a.end());
    }
    const AbelianGroup G(orders);
    const std::int64_t vectors = ipow(Q, J);
    // Vector number v has coordinates v_1 .. v_J with v_1 most significant.
    auto coords = [&](std::int64_t v) {
        std::vector<FieldElement> c(static_cast<std::size_t>(J));
        for (std::int64_t j = J; j-- > 0;) {
            c[static_cast<std::size_t>(j)] = v % Q;
            v /= Q;
        }
        return c;
    };
    auto at = [&](Index k, const std::vector<FieldElement>& v) {
        auto r = K.residues(k);
        for (const FieldElement x : v) {
            const auto c = F.coefficients(x);
            r.insert(r.end(), c.begin(), c.end());
        }
        return G.index(GroupElement{r});
    };
    // Functionals up to scalars: first nonzero coordinate equal to one, in lexicographic order.
    std::vector<std::vector<FieldElement>> functionals;
    for (std::int64_t u = 1; u < vectors; ++u) {
        const auto c = coords(u);
        const auto first = std::find_if(c.begin(), c.end(), [](FieldElement x) { return x != 0; });
        if (*first == 1) functionals.push_back(c);
    }
    if (static_cast<std::int64_t>(functionals.size()) != hyperplanes) throw ConsistencyError("mcfarland: functional count");
    std::vector<Index> d;
    for (std::int64_t i = 0; i < hyperplanes; ++i) {
        const auto& u = functionals[static_cast<std::size_t>(i)];
        const Index k = i + 1;
        for (std::int64_t v = 0; v < vectors; ++v) {
            const auto c = coords(v);
            FieldElement s = 0;
            for (std::int64_t j = 0; j < J; ++j)
                s = F.add(s, F.mul(u[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]));
            if (s == 0) d.push_back(at(k, c));
        }
    }
    std::vector<Index> h;
    for (std::int64_t v = 0; v < vectors; ++v) h.push_back(at(0, coords(v)));
    McFarlandSet out{G, GroupSubset(G, d), Subgroup(G, h)};
    if (!certify_difference_set(out.D)) throw ConsistencyError("mcfarland: construction is not a difference set");
    return out;
}

}  // namespace etfkit
