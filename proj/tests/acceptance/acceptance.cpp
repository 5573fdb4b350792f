// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "etfkit/classify.hpp"
#include "etfkit/conference.hpp"
#include "etfkit/frames.hpp"
#include "oracles.hpp"

using namespace etfkit;

namespace {

const AbelianGroup Z15({15});
const std::vector<Index> kZ15Set{6, 11, 7, 12, 13, 3, 9, 14};

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

ComplexMatrix circulant_from_column(const std::vector<std::int64_t>& exps, std::int64_t sign) {
    std::vector<ExactScalar> col{ExactScalar{}};
    for (const auto e : exps) col.emplace_back(CyclotomicInt::root({e, 15}, sign));
    ComplexMatrix M(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) M.set_exact(i, j, col[(i + 5 - j) % 5]);
    return M;
}

ComplexMatrix half_root_diag(const std::vector<std::int64_t>& exps) {
    ComplexMatrix M(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            M.set_exact(i, j, i == j ? ExactScalar(CyclotomicInt::root({exps[i], 15}, -1), 2) : ExactScalar{});
    return M;
}

std::vector<Index> shifted(const std::vector<Index>& xs, Index t) {
    std::vector<Index> out;
    for (const Index x : xs) out.push_back(Z15.add(x, t));
    std::sort(out.begin(), out.end());
    return out;
}

// 1. Z15 example, exact combinatorics.
Outcome z15_example() {
    Outcome o;
    const GroupSubset D(Z15, kZ15Set);
    const DesignCertificate c = classify(D);
    o.require(c.is_ds && c.lambda == std::optional<std::int64_t>(4), "not a DS with Lambda = 4");
    o.require(c.S == std::optional<std::int64_t>(4), "S != 4");
    o.require(c.fine_subgroup && c.fine_subgroup->elements() == std::vector<Index>{0, 5, 10}, "fine subgroup != {0,5,10}");
    o.require(c.is_amalgam, "not an amalgam");
    o.require(c.composite.has_value(), "not composite");
    if (c.composite) {
        bool matched = false;
        for (const Index t : {0, 5, 10})
            matched = matched || (c.composite->B.elements() == shifted({5, 10}, t) &&
                                  c.composite->A.elements() == shifted({1, 2, 8, 4}, Z15.neg(t)));
        o.require(matched, "composite witness is not {1,2,8,4} + {5,10} up to translation");
        o.require(convolve(c.composite->A.indicator(), c.composite->B.indicator()) == D.indicator(),
                  "chi_A * chi_B != chi_D");
    }
    o.detail = o.ok ? "DS(15,8,4), S=4, H={0,5,10}, amalgam, composite A={1,2,8,4} B={5,10}" : o.detail;
    return o;
}

// 2. ETF(8,15).
Outcome etf_8_15() {
    Outcome o;
    const GroupSubset D(Z15, kZ15Set);
    const ComplexMatrix Phi = harmonic_synthesis(D);
    const double mu = coherence(Phi);
    o.require(std::abs(mu - 0.25) <= 1e-9, "coherence != 0.25");
    const auto t = check_tight(Phi, 1e-9);
    o.require(t && std::abs(t->constant - 15.0 / 8.0) <= 1e-9, "not tight with C = 15/8");
    const Subgroup perp = annihilator(Subgroup(Z15, {0, 5, 10}));
    double worst = 0.0;
    for (const Coset& cs : cosets(perp))
        for (std::size_t r = 0; r < Phi.rows(); ++r) {
            cdouble s = 0;
            for (const Index n : cs.elements) s += Phi(r, static_cast<std::size_t>(n));
            worst = std::max(worst, std::abs(s));
        }
    o.require(worst <= 1e-12, "per-coset column sums are not zero");
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "coherence %.3g, C %.17g, max coset column sum %.2g", mu, t->constant, worst);
        o.detail = buf;
    }
    return o;
}

// 3. Factorization and exact cross-Gram.
Outcome factorization() {
    Outcome o;
    const GroupSubset D(Z15, kZ15Set);
    const Subgroup H(Z15, {0, 5, 10});
    const ComplexMatrix Psi = simplex_psi(H);
    double fact = 0.0, iso = 0.0;
    for (Index g = 0; g < 15; ++g) {
        const ComplexMatrix E = e_gamma(D, H, g);
        fact = std::max(fact, phi_gamma(D, H, g).max_abs_diff(multiply(E, Psi)));
        iso = std::max(iso, multiply(E.adjoint(), E).max_abs_diff(ComplexMatrix::identity(4)));
    }
    o.require(fact <= 1e-9, "Phi_gamma != E_gamma Psi");
    o.require(iso <= 1e-12, "E_gamma is not an isometry");
    const CrossGram cg = cross_gram(e_gamma(D, H, 0), e_gamma(D, H, 1));
    o.require(cg.matrix.has_exact() && cg.matrix.exact_equals(half_root_diag({1, 2, 8, 4})),
              "E_0* E_1 != -(1/2) diag(w, w^2, w^8, w^4)");
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max factorization residual %.2g, isometry %.2g, exact cross-Gram matches", fact, iso);
        o.detail = buf;
    }
    return o;
}

// 4. EITFF and the triple product.
Outcome eitff_triple() {
    Outcome o;
    const GroupSubset D(Z15, kZ15Set);
    const Subgroup H(Z15, {0, 5, 10});
    const FusionReport r = eitff_check(D, H, 1e-9);
    double worst = 0.0;
    for (const auto& p : r.pairs)
        for (const double s : p.angles.singular_values) worst = std::max(worst, std::abs(s - 0.5));
    o.require(r.eitff && worst <= 1e-9, "singular values are not all 0.5");
    const ComplexMatrix E0 = e_gamma(D, H, 0), E1 = e_gamma(D, H, 1), E2 = e_gamma(D, H, 2);
    const ComplexMatrix T =
        multiply(multiply(multiply(E0.adjoint(), E1), multiply(E1.adjoint(), E2)), multiply(E2.adjoint(), E0));
    const double tr = T.max_abs_diff(ComplexMatrix::identity(4).scaled(-1.0 / 8.0));
    o.require(tr <= 1e-9, "triple product != -(1/8) I");
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max |sigma - 0.5| %.2g over %zu pairs, triple product residual %.2g", worst,
                      r.pairs.size(), tr);
        o.detail = buf;
    }
    return o;
}

// 5. Conference matrices of the Z15 example.
Outcome conference_example() {
    Outcome o;
    const GroupSubset D(Z15, kZ15Set);
    const Subgroup H(Z15, {0, 5, 10});
    const GroupSubset A(Z15, {1, 2, 8, 4}), B(Z15, {5, 10});
    const CirculantConference C1 = conference_from_amalgam(D, H, 1), C2 = conference_from_amalgam(D, H, 2);
    o.require(C1.materialize().exact_equals(circulant_from_column({1, 2, 8, 4}, -1)), "C_1 differs from the expected matrix");
    o.require(C2.materialize().exact_equals(circulant_from_column({2, 4, 1, 8}, -1)), "C_2 differs from the expected matrix");
    const CirculantConference Chat = conference_from_srds(A, H, 1);
    o.require(Chat.materialize().exact_equals(circulant_from_column({1, 2, 8, 4}, 1)), "C^_1 differs from the expected matrix");
    const ScalarRelationReport z = scalar_relation_check(D, H, A, B, 1, 1e-9);
    o.require(z.passed && z.z && std::abs(*z.z + 1.0) <= 1e-12, "scalar relation z != -1");
    for (const CirculantConference* C : {&C1, &C2, &Chat}) {
        const ConferenceReport r = verify_conference(*C, 1e-9);
        o.require(r.passed && r.S == 4 && r.exact_unimodular, "verify_conference failed");
    }
    if (o.ok) o.detail = "C_1, C_2, C^_1 exact; z = -1; all verify with S = 4";
    return o;
}

// 6. McFarland(2,2).
Outcome mcfarland_2_2() {
    Outcome o;
    const auto m = mcfarland(2, 2, std::vector<std::int64_t>{2, 2});
    const DesignCertificate c = classify(m.D);
    o.require(c.fine_subgroup.has_value(), "not fine");
    o.require(!c.is_amalgam, "reported as an amalgam");
    if (!c.fine_subgroup) return o;
    const Subgroup& H = *c.fine_subgroup;
    const auto reps = subspace_representatives(H);
    const ExactScalar one = ExactScalar::from_rational(Rational(1));
    double angle_res = 0.0;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (i == j) continue;
            const ComplexMatrix X = e_gamma(m.D, H, reps[i]), Y = e_gamma(m.D, H, reps[j]);
            const CrossGram cg = cross_gram(X, Y);
            int ones = 0;
            bool zero_one = cg.matrix.has_exact();
            for (std::size_t a = 0; a < 3 && zero_one; ++a)
                for (std::size_t b = 0; b < 3 && zero_one; ++b) {
                    const ExactScalar& v = cg.matrix.exact(a, b);
                    if (v.is_zero()) continue;
                    if (a == b && v == one) {
                        ++ones;
                    } else {
                        zero_one = false;
                    }
                }
            o.require(zero_one && ones == 1, "cross-Gram is not a single-1 diagonal 0/1 matrix");
            const AngleReport ar = principal_angles(X, Y);
            const std::vector<double> want{0.0, std::numbers::pi / 2, std::numbers::pi / 2};
            for (std::size_t k = 0; k < 3; ++k) angle_res = std::max(angle_res, std::abs(ar.principal_angles[k] - want[k]));
        }
    o.require(angle_res <= 1e-9, "principal angles differ from {0, pi/2, pi/2}");
    const FusionReport ec = ectff_check(m.D, H, 1e-9);
    o.require(ec.ectff && ec.max_chordal_residual <= 1e-9, "ECTFF check failed");
    const FusionReport ei = eitff_check(m.D, H, 1e-9);
    o.require(!ei.eitff, "EITFF check passed");
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "fine, not amalgam; angles {0, pi/2, pi/2} (residual %.2g); ECTFF pass, EITFF fail",
                      angle_res);
        o.detail = buf;
    }
    return o;
}

// 7. Twin prime power sweep.
Outcome tpp_sweep() {
    Outcome o;
    std::string summary;
    for (const std::int64_t Q : {3, 5, 7, 11, 17, 23, 27}) {
        const auto t = tpp_complement(Q);
        const DesignCertificate c = classify(t.D);
        const std::string q = "Q=" + std::to_string(Q) + ": ";
        o.require(c.fine_subgroup && *c.fine_subgroup == t.H, q + "not fine for F_Q x {0}");
        o.require(c.is_amalgam == (Q % 4 == 3), q + "amalgam verdict wrong");
        o.require(c.composite.has_value() == (Q == 3), q + "composite verdict wrong");
        if (Q == 11) {
            const Index g = characters_outside_annihilator(t.H).front();
            const ConferenceReport r = verify_conference(conference_from_amalgam(t.D, t.H, g), 1e-9);
            o.require(r.passed && r.size == 13 && r.S == 12, q + "13x13 conference matrix failed");
        }
        if (Q == 27) o.require(t.group.cyclic_orders() == std::vector<std::int64_t>{3, 3, 3, 29}, q + "group is not Z_3^3 x Z_29");
        summary += std::to_string(Q) + (c.composite ? "C " : c.is_amalgam ? "A " : "F ");
    }
    if (o.ok) o.detail = "Q verdicts (F fine, A amalgam, C composite): " + summary + "; 13x13 conference verified";
    return o;
}

// 8. Singer sweep.
Outcome singer_sweep() {
    Outcome o;
    std::string sizes;
    double worst = 0.0;
    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
        const std::string q = "(Q,J)=(" + std::to_string(Q) + "," + std::to_string(J) + "): ";
        const auto s = singer_complement(Q, J);
        const DesignCertificate c = classify(s.D, s.H);
        o.require(c.is_ds && c.composite.has_value(), q + "not composite");
        o.require(convolve(s.A.indicator(), s.B.indicator()) == s.D.indicator(), q + "chi_D != chi_A * chi_B");
        for (const Index a : s.A.elements()) o.require(compute_Dg(s.D, s.H, a) == s.B.elements(), q + "D_a != B");
        const FusionReport f = eitff_check(s.D, s.H, 1e-9);
        o.require(f.eitff, q + "EITFF check failed");
        std::size_t n = 0;
        for (const Index g : characters_outside_annihilator(s.H)) {
            const CirculantConference C = conference_from_amalgam(s.D, s.H, g);
            const CirculantConference Chat = conference_from_srds(s.A, s.H, g);
            n = C.size();
            for (const auto& r : {verify_conference(C, 1e-9), verify_conference(Chat, 1e-9)}) {
                o.require(r.passed, q + "conference matrix failed");
                worst = std::max({worst, r.gram_residual, r.unimodular_residual, r.diagonal_residual, r.circulant_residual});
            }
        }
        sizes += std::to_string(n) + " ";
    }
    o.require(worst <= 1e-9, "conference residual above 1e-9");
    if (o.ok) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "composite, exact factorization; conference sizes %sverified, max residual %.2g",
                      sizes.c_str(), worst);
        o.detail = buf;
    }
    return o;
}

// 9. Simplicial RDS sweep.
Outcome srds_sweep() {
    Outcome o;
    double worst = 0.0;
    int matrices = 0;
    for (const std::int64_t Q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        const std::string q = "Q=" + std::to_string(Q) + ": ";
        const auto s = simplicial_rds_quadratic(Q);
        const auto p = certify_rds(s.A, s.K, 1e-9);
        o.require(p && *p == RdsParams{Q + 1, Q - 1, Q, Rational(1)}, q + "not an RDS(Q+1, Q-1, Q, 1)");
        for (const Index a : s.A.elements()) o.require(!s.K.contains(a), q + "meets K");
        const UnbiasedReport u = unbiased_simplices_check(s.A, s.K, 1e-9);
        o.require(u.passed && u.max_unbiased_residual <= 1e-9, q + "simplices are not mutually unbiased");
        worst = std::max(worst, u.max_unbiased_residual);
        for (const Index g : characters_outside_annihilator(s.K)) {
            const ConferenceReport r = verify_conference(conference_from_srds(s.A, s.K, g), 1e-9);
            o.require(r.passed && r.size == Q + 1, q + "conference matrix failed");
            ++matrices;
        }
    }
    if (o.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "9 RDSs certified; unbiased residual %.2g; %d conference matrices verified", worst,
                      matrices);
        o.detail = buf;
    }
    return o;
}

// Real-valued bound G / (S+1) with S^2 = D (G-1) / (G-D).
double subgroup_bound(std::int64_t D, std::int64_t G) {
    const double S = std::sqrt(static_cast<double>(D * (G - 1)) / static_cast<double>(G - D));
    return static_cast<double>(G) / (S + 1.0);
}

// 10. Property suites.
Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    int agree = 0, ds_hits = 0;
    std::vector<GroupSubset> fine_pool;
    for (int t = 0; t < 200; ++t) {
        const AbelianGroup G = oracle::random_group(rng, 60);
        std::vector<Index> S = oracle::random_subset(rng, G);
        // every tenth sample is a known difference set in a random group position
        const GroupSubset D(G, S);
        const bool ds = oracle::ds_lambda(G, S) >= 0;
        const bool ds_fourier = fourier_rds_criterion(D, Subgroup::trivial(G), 1e-9);
        const auto subs = all_subgroups(G);
        const Subgroup& H = subs[rng() % subs.size()];
        const bool rds = oracle::is_rds(G, S, H.elements());
        const bool rds_fourier = fourier_rds_criterion(D, H, 1e-9);
        const bool rds_table = certify_rds(D, H, 1e-9).has_value();
        const bool ds_table = certify_difference_set(D).has_value();
        o.require(ds == ds_fourier && ds == ds_table, "DS criteria disagree on sample " + std::to_string(t));
        o.require(rds == rds_fourier && rds == rds_table, "RDS criteria disagree on sample " + std::to_string(t));
        agree += (ds == ds_fourier && rds == rds_fourier) ? 1 : 0;
        ds_hits += ds ? 1 : 0;
    }

    // Difference sets for the fine and bound checks: every difference set in
    // the small cyclic and non-cyclic groups, plus the algebraic families.
    std::vector<GroupSubset> pool;
    for (const auto& orders : std::vector<std::vector<std::int64_t>>{
             {7}, {11}, {13}, {4, 4}, {2, 8}, {2, 2, 4}, {2, 2, 2, 2}, {16}, {15}}) {
        const AbelianGroup G(orders);
        const Index n = G.order();
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
            if (!(mask & 1)) continue;  // translates: fix 0 in D
            std::vector<Index> S;
            for (Index g = 0; g < n; ++g)
                if (mask >> g & 1) S.push_back(g);
            if (S.size() < 2 || static_cast<Index>(S.size()) > n - 2) continue;
            if (oracle::ds_lambda(G, S) >= 0) pool.emplace_back(G, S);
        }
    }
    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}})
        pool.push_back(singer_complement(Q, J).D);
    for (const std::int64_t Q : {3, 5, 7, 9}) pool.push_back(tpp_complement(Q).D);
    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {2, 3}})
        pool.push_back(mcfarland(Q, J).D);
    for (const std::int64_t p : {19, 23, 31, 43, 47, 59, 67, 71, 79, 83}) {
        std::set<Index> qr;
        for (Index x = 1; x < p; ++x) qr.insert(x * x % p);
        pool.emplace_back(AbelianGroup({p}), std::vector<Index>(qr.begin(), qr.end()));
    }
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i) pool.push_back(complement(pool[i]));

    int fine_count = 0, bound_checks = 0;
    for (const GroupSubset& D : pool) {
        const AbelianGroup& G = D.group();
        const auto lambda = certify_difference_set(D);
        o.require(lambda.has_value(), "pool member is not a difference set");
        if (!lambda) continue;
        const DesignCertificate c = classify(D);
        if (c.fine_subgroup) {
            ++fine_count;
            const std::int64_t lhs = (c.fine_subgroup->order() - 1) * *lambda;
            std::int64_t rhs = 0;
            for (const Coset& cs : cosets(*c.fine_subgroup)) {
                const auto n = static_cast<std::int64_t>(compute_Dg(D, *c.fine_subgroup, cs.representative).size());
                rhs += n * (n - 1);
            }
            o.require(lhs == rhs, "counting identity fails");
        }
        if (G.order() <= 100 && D.size() < G.order()) {
            const double bound = subgroup_bound(D.size(), G.order());
            for (const Subgroup& H : all_subgroups(G)) {
                bool disjoint = true;
                for (const Index h : H.elements()) disjoint = disjoint && !D.contains(h);
                if (!disjoint) continue;
                ++bound_checks;
                o.require(static_cast<double>(H.order()) <= bound + 1e-9, "subgroup bound violated");
            }
        }
    }
    if (o.ok) {
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "%d/200 random samples agree (%d DS); %zu difference sets, %d fine with counting identity, %d "
                      "disjoint subgroups within bound",
                      agree, ds_hits, pool.size(), fine_count, bound_checks);
        o.detail = buf;
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Z15 example classification", 0.1, z15_example},
        {2, "ETF(8,15) coherence and tightness", 0.1, etf_8_15},
        {3, "factorization through the simplex", 0.1, factorization},
        {4, "EITFF angles and triple product", 0.1, eitff_triple},
        {5, "conference matrices of the Z15 example", 0.1, conference_example},
        {6, "McFarland(2,2) fusion frame", 0.1, mcfarland_2_2},
        {7, "twin prime power sweep", 30.0, tpp_sweep},
        {8, "Singer sweep", 60.0, singer_sweep},
        {9, "simplicial RDS sweep", 30.0, srds_sweep},
        {10, "property suites", 120.0, property_suites},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.ok && in_time;
        if (!in_time && o.ok) o.detail += " (over time limit)";
        failures += pass ? 0 : 1;
        std::printf("%s %2d  %-44s %8.3fs / %gs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
