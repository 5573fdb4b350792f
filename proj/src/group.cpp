#include "etfkit/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace etfkit {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

// --- AbelianGroup -----------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<std::int64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw InvalidArgument("group needs at least one cyclic factor");
    for (const auto n : orders_)
        if (n < 1) throw InvalidArgument("cyclic orders must be >= 1, got " + std::to_string(n));
    strides_.assign(orders_.size(), 1);
    order_ = 1;
    exponent_ = 1;
    for (std::size_t i = orders_.size(); i-- > 0;) {
        strides_[i] = order_;
        order_ *= orders_[i];
        exponent_ = std::lcm(exponent_, orders_[i]);
    }
}

void AbelianGroup::check_index(Index i) const {
    if (i < 0 || i >= order_) throw InvalidArgument("element index out of range: " + std::to_string(i));
}

Index AbelianGroup::index(const GroupElement& g) const {
    if (g.residues.size() != orders_.size())
        throw InvalidArgument("element has " + std::to_string(g.residues.size()) + " components, group has " +
                              std::to_string(orders_.size()));
    Index out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) out += mod(g.residues[i], orders_[i]) * strides_[i];
    return out;
}

GroupElement AbelianGroup::element(Index i) const {
    check_index(i);
    GroupElement g;
    g.residues.resize(orders_.size());
    for (std::size_t c = 0; c < orders_.size(); ++c) g.residues[c] = (i / strides_[c]) % orders_[c];
    return g;
}

Index AbelianGroup::add(Index a, Index b) const {
    Index out = 0;
    for (std::size_t c = 0; c < orders_.size(); ++c) {
        const std::int64_t ra = (a / strides_[c]) % orders_[c];
        const std::int64_t rb = (b / strides_[c]) % orders_[c];
        out += ((ra + rb) % orders_[c]) * strides_[c];
    }
    return out;
}

Index AbelianGroup::neg(Index a) const {
    Index out = 0;
    for (std::size_t c = 0; c < orders_.size(); ++c) {
        const std::int64_t ra = (a / strides_[c]) % orders_[c];
        out += ((orders_[c] - ra) % orders_[c]) * strides_[c];
    }
    return out;
}

Index AbelianGroup::sub(Index a, Index b) const { return add(a, neg(b)); }

Index AbelianGroup::scale(Index a, std::int64_t k) const {
    Index out = 0;
    for (std::size_t c = 0; c < orders_.size(); ++c) {
        const std::int64_t ra = (a / strides_[c]) % orders_[c];
        out += mod(ra * mod(k, orders_[c]), orders_[c]) * strides_[c];
    }
    return out;
}

std::int64_t AbelianGroup::element_order(Index a) const {
    std::int64_t result = 1;
    for (std::size_t c = 0; c < orders_.size(); ++c) {
        const std::int64_t ra = (a / strides_[c]) % orders_[c];
        result = std::lcm(result, orders_[c] / std::gcd(ra, orders_[c]));
    }
    return result;
}

std::int64_t AbelianGroup::char_exponent(Index gamma, Index g) const {
    std::int64_t e = 0;
    for (std::size_t c = 0; c < orders_.size(); ++c) {
        const std::int64_t m = (gamma / strides_[c]) % orders_[c];
        const std::int64_t r = (g / strides_[c]) % orders_[c];
        e = (e + ((m * r) % orders_[c]) * (exponent_ / orders_[c])) % exponent_;
    }
    return e;
}

RootOfUnity AbelianGroup::char_value(const Character& gamma, const GroupElement& g) const {
    return char_value(index(gamma), index(g));
}

std::string AbelianGroup::label(Index i) const {
    const auto r = element(i).residues;
    if (r.size() == 1) return std::to_string(r[0]);
    std::string out = "(";
    for (std::size_t c = 0; c < r.size(); ++c) {
        if (c > 0) out += ",";
        out += std::to_string(r[c]);
    }
    return out + ")";
}

// --- Subgroup ---------------------------------------------------------------

Subgroup::Subgroup(AbelianGroup parent, std::vector<Index> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    member_.assign(static_cast<std::size_t>(parent_.order()), false);
    for (const Index g : elements_) {
        if (g < 0 || g >= parent_.order()) throw InvalidArgument("subgroup element out of range");
        member_[static_cast<std::size_t>(g)] = true;
    }
    if (elements_.empty() || elements_.front() != 0) throw InvalidArgument("subgroup must contain the identity");
    for (const Index a : elements_)
        for (const Index b : elements_)
            if (!member_[static_cast<std::size_t>(parent_.sub(a, b))])
                throw InvalidArgument("set is not closed under subtraction, so it is not a subgroup");
}

Subgroup Subgroup::generated_by(const AbelianGroup& parent, const std::vector<Index>& generators) {
    std::vector<bool> mem(static_cast<std::size_t>(parent.order()), false);
    std::vector<Index> elems{0};
    mem[0] = true;
    for (const Index g : generators) {
        if (g < 0 || g >= parent.order()) throw InvalidArgument("generator out of range");
        if (mem[static_cast<std::size_t>(g)]) continue;
        const std::vector<Index> base = elems;
        Index step = g;
        while (!mem[static_cast<std::size_t>(step)]) {
            for (const Index x : base) {
                const Index y = parent.add(x, step);
                mem[static_cast<std::size_t>(y)] = true;
                elems.push_back(y);
            }
            step = parent.add(step, g);
        }
    }
    Subgroup out;
    out.parent_ = parent;
    std::sort(elems.begin(), elems.end());
    out.elements_ = std::move(elems);
    out.member_ = std::move(mem);
    return out;
}

Subgroup Subgroup::whole(const AbelianGroup& parent) {
    std::vector<Index> gens;
    for (std::size_t c = 0; c < parent.rank(); ++c) {
        std::vector<std::int64_t> r(parent.rank(), 0);
        r[c] = 1;
        gens.push_back(parent.index(GroupElement{r}));
    }
    return generated_by(parent, gens);
}

bool Subgroup::contains(Index g) const {
    return g >= 0 && g < static_cast<Index>(member_.size()) && member_[static_cast<std::size_t>(g)];
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
    if (!(parent_ == other.parent_)) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](Index g) { return other.contains(g); });
}

// --- IntVector / Fourier ----------------------------------------------------

IntVector::IntVector(AbelianGroup group)
    : group_(std::move(group)), values_(static_cast<std::size_t>(group_.order()), 0) {}

IntVector IntVector::indicator(const AbelianGroup& group, const std::vector<Index>& support) {
    IntVector out(group);
    for (const Index g : support) out[g] += 1;
    return out;
}

IntVector IntVector::delta(const AbelianGroup& group, Index at) { return indicator(group, {at}); }

CyclotomicInt dft_coefficient(const IntVector& x, Index gamma) {
    const AbelianGroup& G = x.group();
    CyclotomicInt c(G.exponent());
    for (Index g = 0; g < G.order(); ++g) {
        const std::int64_t v = x[g];
        if (v != 0) c.add_root(-G.char_exponent(gamma, g), v);
    }
    return c;
}

std::vector<CyclotomicInt> dft_exact(const IntVector& x) {
    std::vector<CyclotomicInt> out;
    out.reserve(static_cast<std::size_t>(x.group().order()));
    for (Index gamma = 0; gamma < x.group().order(); ++gamma) out.push_back(dft_coefficient(x, gamma));
    return out;
}

std::vector<cdouble> dft(const IntVector& x) {
    const AbelianGroup& G = x.group();
    const std::int64_t L = G.exponent();
    std::vector<cdouble> roots(static_cast<std::size_t>(L));
    for (std::int64_t e = 0; e < L; ++e) roots[static_cast<std::size_t>(e)] = RootOfUnity(-e, L).to_complex();
    std::vector<Index> support;
    for (Index g = 0; g < G.order(); ++g)
        if (x[g] != 0) support.push_back(g);
    std::vector<cdouble> out(static_cast<std::size_t>(G.order()));
    for (Index gamma = 0; gamma < G.order(); ++gamma) {
        cdouble acc{0.0, 0.0};
        for (const Index g : support)
            acc += static_cast<double>(x[g]) * roots[static_cast<std::size_t>(G.char_exponent(gamma, g))];
        out[static_cast<std::size_t>(gamma)] = acc;
    }
    return out;
}

IntVector convolve(const IntVector& x, const IntVector& y) {
    if (!(x.group() == y.group())) throw InvalidArgument("convolve: vectors live on different groups");
    const AbelianGroup& G = x.group();
    IntVector out(G);
    std::vector<Index> ys;
    for (Index h = 0; h < G.order(); ++h)
        if (y[h] != 0) ys.push_back(h);
    for (Index g = 0; g < G.order(); ++g) {
        if (x[g] == 0) continue;
        for (const Index h : ys) out[G.add(g, h)] += x[g] * y[h];
    }
    return out;
}

IntVector involution(const IntVector& x) {
    const AbelianGroup& G = x.group();
    IntVector out(G);
    for (Index g = 0; g < G.order(); ++g) out[g] = x[G.neg(g)];
    return out;
}

// --- annihilators and cosets ------------------------------------------------

Subgroup annihilator(const Subgroup& H) {
    const AbelianGroup& G = H.parent();
    std::vector<Index> chars;
    for (Index gamma = 0; gamma < G.order(); ++gamma) {
        const bool trivial_on_H = std::all_of(H.elements().begin(), H.elements().end(),
                                              [&](Index h) { return G.char_exponent(gamma, h) == 0; });
        if (trivial_on_H) chars.push_back(gamma);
    }
    return Subgroup(G, std::move(chars));
}

std::vector<Coset> cosets(const Subgroup& H) {
    const AbelianGroup& G = H.parent();
    std::vector<bool> seen(static_cast<std::size_t>(G.order()), false);
    std::vector<Coset> out;
    for (Index g = 0; g < G.order(); ++g) {
        if (seen[static_cast<std::size_t>(g)]) continue;
        Coset c{g, {}};
        for (const Index h : H.elements()) {
            const Index x = G.add(g, h);
            seen[static_cast<std::size_t>(x)] = true;
            c.elements.push_back(x);
        }
        std::sort(c.elements.begin(), c.elements.end());
        out.push_back(std::move(c));
    }
    return out;
}

Index coset_representative(const Subgroup& H, Index g) {
    const AbelianGroup& G = H.parent();
    Index best = G.order();
    for (const Index h : H.elements()) best = std::min(best, G.add(g, h));
    return best;
}

// --- quotient via Smith normal form -----------------------------------------

QuotientGroup::QuotientGroup(const Subgroup& H) : kernel_(H) {
    const AbelianGroup& G = H.parent();
    const std::size_t k = G.rank();
    // Relation lattice: columns n_i e_i together with every element of H.
    std::vector<std::vector<std::int64_t>> M(k);
    for (std::size_t i = 0; i < k; ++i) {
        M[i].assign(k, 0);
        M[i][i] = G.cyclic_orders()[i];
    }
    for (const Index h : H.elements()) {
        if (h == 0) continue;
        const auto r = G.residues(h);
        for (std::size_t i = 0; i < k; ++i) M[i].push_back(r[i]);
    }
    const std::size_t cols = M.empty() ? 0 : M[0].size();
    std::vector<std::vector<std::int64_t>> P(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) P[i][i] = 1;

    auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t j = 0; j < cols; ++j) M[dst][j] -= q * M[src][j];
        for (std::size_t j = 0; j < k; ++j) P[dst][j] -= q * P[src][j];
    };

    std::vector<std::int64_t> diag(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
        while (true) {
            // Smallest nonzero pivot in the trailing block.
            std::size_t pr = k, pc = cols;
            for (std::size_t i = t; i < k; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (M[i][j] != 0 && (pr == k || std::llabs(M[i][j]) < std::llabs(M[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == k) break;
            std::swap(M[t], M[pr]);
            std::swap(P[t], P[pr]);
            for (auto& row : M) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < k; ++i) {
                if (M[i][t] == 0) continue;
                row_op(i, t, M[i][t] / M[t][t]);
                if (M[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (M[t][j] == 0) continue;
                const std::int64_t q = M[t][j] / M[t][t];
                for (std::size_t i = 0; i < k; ++i) M[i][j] -= q * M[i][t];
                if (M[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        diag[t] = std::llabs(M[t][t]);
    }

    std::vector<std::int64_t> orders;
    for (std::size_t t = 0; t < k; ++t) {
        if (diag[t] == 0) throw ConsistencyError("quotient: relation lattice is not of full rank");
        if (diag[t] > 1) {
            orders.push_back(diag[t]);
            transform_.push_back(P[t]);
        }
    }
    if (orders.empty()) {
        orders.push_back(1);
        transform_.emplace_back(k, 0);
    }
    quotient_ = AbelianGroup(orders);
    if (quotient_.order() * H.order() != G.order())
        throw ConsistencyError("quotient: order mismatch after Smith reduction");

    lifts_.assign(static_cast<std::size_t>(quotient_.order()), -1);
    for (Index g = 0; g < G.order(); ++g) {
        const Index q = project(g);
        if (lifts_[static_cast<std::size_t>(q)] < 0) lifts_[static_cast<std::size_t>(q)] = g;
    }
}

Index QuotientGroup::project(Index g) const {
    const auto r = kernel_.parent().residues(g);
    GroupElement y;
    for (std::size_t t = 0; t < transform_.size(); ++t) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r.size(); ++j) acc = mod(acc + transform_[t][j] * r[j], quotient_.cyclic_orders()[t]);
        y.residues.push_back(acc);
    }
    return quotient_.index(y);
}

// --- subgroup enumeration ---------------------------------------------------

std::int64_t subgroup_search_cap() { return env_cap("ETFKIT_CAP", 10000); }

namespace {

// All subgroups whose order divides `bound` (every subgroup when bound == G).
std::vector<Subgroup> subgroups_dividing(const AbelianGroup& G, std::int64_t bound) {
    std::vector<Index> candidates;
    for (Index g = 1; g < G.order(); ++g)
        if (bound % G.element_order(g) == 0) candidates.push_back(g);
    std::set<std::vector<Index>> seen;
    std::vector<Subgroup> frontier{Subgroup::trivial(G)};
    std::vector<Subgroup> found = frontier;
    seen.insert(frontier[0].elements());
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const Subgroup& S : frontier) {
            for (const Index g : candidates) {
                if (S.contains(g)) continue;
                std::vector<Index> gens = S.elements();
                gens.push_back(g);
                Subgroup T = Subgroup::generated_by(G, gens);
                if (bound % T.order() != 0) continue;
                if (!seen.insert(T.elements()).second) continue;
                next.push_back(T);
                found.push_back(T);
            }
        }
        frontier = std::move(next);
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements() < b.elements();
    });
    return found;
}

}  // namespace

std::vector<Subgroup> subgroups_of_order(const AbelianGroup& G, std::int64_t h) {
    if (h < 1 || G.order() % h != 0) return {};
    if (G.rank() == 1) {
        const Index step = G.order() / h;
        return {Subgroup::generated_by(G, {step % G.order()})};
    }
    if (G.order() > subgroup_search_cap())
        throw SearchNotExhaustive("group order " + std::to_string(G.order()) + " exceeds subgroup search cap " +
                                  std::to_string(subgroup_search_cap()));
    std::vector<Subgroup> out;
    for (auto& S : subgroups_dividing(G, h))
        if (S.order() == h) out.push_back(std::move(S));
    return out;
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& G) {
    if (G.rank() == 1) {
        std::vector<Subgroup> out;
        for (std::int64_t h = 1; h <= G.order(); ++h)
            if (G.order() % h == 0) out.push_back(Subgroup::generated_by(G, {(G.order() / h) % G.order()}));
        return out;
    }
    if (G.order() > subgroup_search_cap())
        throw SearchNotExhaustive("group order " + std::to_string(G.order()) + " exceeds subgroup search cap " +
                                  std::to_string(subgroup_search_cap()));
    return subgroups_dividing(G, G.order());
}

}  // namespace etfkit
