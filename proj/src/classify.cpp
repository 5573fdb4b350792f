#include "etfkit/classify.hpp"

#include <algorithm>
#include <cmath>

namespace etfkit {

namespace {

// Lambda when `elems` (a subset of H) is a difference set for H; empty sets are accepted with 0.
std::optional<std::int64_t> lambda_in_subgroup(const AbelianGroup& G, const std::vector<Index>& elems,
                                               const Subgroup& H) {
    if (elems.empty() || H.order() == 1) return 0;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(G.order()), 0);
    for (const Index a : elems)
        for (const Index b : elems)
            if (a != b) ++counts[static_cast<std::size_t>(G.sub(a, b))];
    const std::int64_t lambda = counts[static_cast<std::size_t>(H.elements()[1])];
    for (const Index h : H.elements())
        if (h != 0 && counts[static_cast<std::size_t>(h)] != lambda) return std::nullopt;
    return lambda;
}

std::int64_t integer_S(const GroupSubset& D) {
    const auto S = welch_integer_S(D.size(), D.group().order());
    if (!S) throw InvalidArgument("D does not have an integer S");
    return *S;
}

// The two equivalent descriptions of fineness, checked on a fine pair (D, H).
void assert_fine_conditions(const GroupSubset& D, const Subgroup& H, std::int64_t S) {
    const IntVector chi = D.indicator();
    const Subgroup perp = annihilator(H);
    for (const Index gamma : perp.elements()) {
        if (gamma == 0) continue;
        CyclotomicInt v = dft_coefficient(chi, gamma) * S;
        v += CyclotomicInt::integer(D.size(), v.modulus());
        if (!v.is_zero()) throw ConsistencyError("fine: Fourier coefficient on H^perp differs from -D/S");
    }
    for (const Coset& c : cosets(H)) {
        if (c.representative == 0) continue;
        if (static_cast<std::int64_t>(compute_Dg(D, H, c.representative).size()) * S != D.size())
            throw ConsistencyError("fine: slice size differs from D/S");
    }
}

}  // namespace

std::vector<Index> compute_Dg(const GroupSubset& D, const Subgroup& H, Index g) {
    const AbelianGroup& G = D.group();
    std::vector<Index> out;
    for (const Index h : H.elements())
        if (D.contains(G.add(g, h))) out.push_back(h);
    return out;
}

std::vector<DgEntry> dg_table(const GroupSubset& D, const Subgroup& H) {
    std::vector<DgEntry> out;
    for (const Coset& c : cosets(H)) {
        DgEntry e{c.representative, compute_Dg(D, H, c.representative), false, std::nullopt};
        e.lambda = lambda_in_subgroup(D.group(), e.elements, H);
        e.is_difference_set = e.lambda.has_value();
        out.push_back(std::move(e));
    }
    return out;
}

std::int64_t dg_pair_count(const std::vector<DgEntry>& table) {
    std::int64_t total = 0;
    for (const auto& e : table) {
        const auto n = static_cast<std::int64_t>(e.elements.size());
        total += n * (n - 1);
    }
    return total;
}

bool is_fine_for(const GroupSubset& D, const Subgroup& H) {
    if (!(H.parent() == D.group()) || D.size() == 0 || D.size() >= D.group().order()) return false;
    const auto S = welch_integer_S(D.size(), D.group().order());
    if (!S || D.group().order() % (*S + 1) != 0) return false;
    if (H.order() != D.group().order() / (*S + 1)) return false;
    return std::none_of(H.elements().begin(), H.elements().end(), [&](Index h) { return D.contains(h); });
}

std::optional<Subgroup> is_fine(const GroupSubset& D) {
    if (D.size() == 0 || D.size() >= D.group().order() || !certify_difference_set(D)) return std::nullopt;
    const auto S = welch_integer_S(D.size(), D.group().order());
    if (!S || D.group().order() % (*S + 1) != 0) return std::nullopt;
    for (const Subgroup& H : subgroups_of_order(D.group(), D.group().order() / (*S + 1))) {
        if (std::any_of(H.elements().begin(), H.elements().end(), [&](Index h) { return D.contains(h); })) continue;
        assert_fine_conditions(D, H, *S);
        return H;
    }
    return std::nullopt;
}

AmalgamResult is_amalgam(const GroupSubset& D, const Subgroup& H) {
    if (!is_fine_for(D, H)) throw InvalidArgument("is_amalgam: D is not fine for the given subgroup");
    const std::int64_t S = integer_S(D);
    const std::int64_t d = D.size();
    AmalgamResult out;
    out.table = dg_table(D, H);
    if ((d * d) % (S * S * S) != 0) {
        out.rejected_by_divisibility = true;
        return out;
    }
    out.is_amalgam = std::all_of(out.table.begin(), out.table.end(), [](const DgEntry& e) { return e.is_difference_set; });
    if (out.is_amalgam) {
        // Each nonempty slice B satisfies |F* chi_B|^2 = (D^2/S^3)(1 + (S-1) chi_{H^perp}).
        const Subgroup perp = annihilator(H);
        const double base = static_cast<double>(d * d) / static_cast<double>(S * S * S);
        for (const auto& e : out.table) {
            if (e.elements.empty()) continue;
            const auto f = dft(IntVector::indicator(D.group(), e.elements));
            for (Index gamma = 0; gamma < D.group().order(); ++gamma) {
                const double want = perp.contains(gamma) ? base * static_cast<double>(S) : base;
                if (std::abs(std::norm(f[static_cast<std::size_t>(gamma)]) - want) > 1e-9 * std::max(1.0, want))
                    throw ConsistencyError("amalgam: slice spectrum disagrees with its difference-set certificate");
            }
        }
    }
    return out;
}

std::optional<CompositeWitness> is_composite(const GroupSubset& D, const Subgroup& H) {
    if (!is_fine_for(D, H)) throw InvalidArgument("is_composite: D is not fine for the given subgroup");
    const AbelianGroup& G = D.group();
    const auto all = cosets(H);
    std::optional<std::vector<Index>> B;
    for (const Coset& c : all) {
        if (c.representative == 0) continue;
        auto slice = compute_Dg(D, H, c.representative);
        if (!slice.empty()) {
            B = std::move(slice);
            break;
        }
    }
    if (!B) return std::nullopt;
    std::vector<Index> A;
    for (const Coset& c : all) {
        if (c.representative == 0) continue;
        bool matched = false;
        for (const Index h : H.elements()) {
            const Index a = G.add(c.representative, h);
            if (compute_Dg(D, H, a) == *B) {
                A.push_back(a);
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    CompositeWitness w{GroupSubset(G, A), GroupSubset(G, *B)};
    if (!(convolve(w.A.indicator(), w.B.indicator()) == D.indicator()))
        throw ConsistencyError("composite: chi_A * chi_B != chi_D after translate matching");
    return w;
}

DesignCertificate classify(const GroupSubset& D, const std::optional<Subgroup>& H) {
    DesignCertificate cert;
    const AbelianGroup& G = D.group();
    const std::int64_t d = D.size();
    cert.lambda = certify_difference_set(D);
    cert.is_ds = cert.lambda.has_value();
    if (!cert.is_ds) {
        cert.non_ds_witness = difference_set_witness(D);
        cert.notes.emplace_back(d == 0 ? "empty set" : "not a difference set");
        return cert;
    }
    if (d >= G.order()) {
        cert.notes.emplace_back("D is the whole group");
        return cert;
    }
    cert.S = welch_integer_S(d, G.order());
    if (!cert.S) {
        cert.notes.emplace_back("S is not an integer");
        return cert;
    }
    const std::int64_t S = *cert.S;
    cert.s_divides_d = d % S == 0;
    cert.s3_divides_d2 = (d * d) % (S * S * S) == 0;
    cert.complement_divides = G.order() > d && (d - 1) % (G.order() - d) == 0;

    if (H) {
        if (is_fine_for(D, *H)) {
            assert_fine_conditions(D, *H, S);
            cert.fine_subgroup = *H;
        }
    } else {
        cert.fine_subgroup = is_fine(D);
    }
    if (!cert.fine_subgroup) {
        cert.notes.emplace_back(H ? "not fine for the given subgroup" : "no subgroup of order G/(S+1) misses D");
        return cert;
    }
    if (!cert.s_divides_d || !cert.lambda || (d - *cert.lambda) * S * S != d * d)
        throw ConsistencyError("fine: S must divide D and D - Lambda must equal D^2/S^2");

    const AmalgamResult am = is_amalgam(D, *cert.fine_subgroup);
    cert.dg = am.table;
    cert.is_amalgam = am.is_amalgam;
    if ((cert.fine_subgroup->order() - 1) * *cert.lambda != dg_pair_count(cert.dg))
        throw ConsistencyError("counting identity (H-1) Lambda = sum |D_g|(|D_g|-1) failed");
    if (!cert.is_amalgam) {
        cert.notes.emplace_back(am.rejected_by_divisibility ? "S^3 does not divide D^2" : "some D_g is not a difference set");
        return cert;
    }
    cert.composite = is_composite(D, *cert.fine_subgroup);
    if (!cert.composite) {
        cert.notes.emplace_back("nontrivial D_g are not all translates of one another");
        return cert;
    }
    if (!cert.s3_divides_d2 || !cert.complement_divides)
        throw ConsistencyError("composite set violates S^3 | D^2 or (G-D) | (D-1)");
    return cert;
}

}  // namespace etfkit
