#include "etfkit/frames.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "etfkit/classify.hpp"

namespace etfkit {

namespace {

std::vector<std::string> element_labels(const AbelianGroup& G, const std::vector<Index>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const Index x : xs) out.push_back(G.label(x));
    return out;
}

std::vector<Index> nonidentity_reps(const Subgroup& H) {
    std::vector<Index> out;
    for (const Coset& c : cosets(H))
        if (c.representative != 0) out.push_back(c.representative);
    return out;
}

std::int64_t fine_S(const GroupSubset& D, const Subgroup& H) {
    if (!is_fine_for(D, H)) throw InvalidArgument("D is not fine for the given subgroup");
    return *welch_integer_S(D.size(), D.group().order());
}

double isometry_residual(const ComplexMatrix& E) {
    return multiply(E.adjoint(), E).max_abs_diff(ComplexMatrix::identity(E.cols()));
}

}  // namespace

std::vector<std::string> character_labels(const AbelianGroup& G, const std::vector<Index>& chars) {
    return element_labels(G, chars);
}

ComplexMatrix harmonic_synthesis(const GroupSubset& D) {
    const AbelianGroup& G = D.group();
    if (D.size() == 0) throw InvalidArgument("harmonic_synthesis: empty set");
    std::vector<Index> chars(static_cast<std::size_t>(G.order()));
    for (Index g = 0; g < G.order(); ++g) chars[static_cast<std::size_t>(g)] = g;
    ComplexMatrix Phi(element_labels(G, D.display_order()), character_labels(G, chars));
    const ExactScalar norm = ExactScalar::sqrt_of(Rational(1, D.size()));
    for (std::size_t i = 0; i < D.display_order().size(); ++i)
        for (Index gamma = 0; gamma < G.order(); ++gamma)
            Phi.set_exact(i, static_cast<std::size_t>(gamma),
                          ExactScalar::from_root(G.char_value(gamma, D.display_order()[i])) * norm);
    return Phi;
}

double coherence(const ComplexMatrix& Phi) {
    const std::size_t n = Phi.cols();
    if (n < 2) throw InvalidArgument("coherence needs at least two columns");
    std::vector<double> norms(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < Phi.rows(); ++i) norms[j] += std::norm(Phi(i, j));
    for (auto& v : norms) {
        if (v == 0.0) throw InvalidArgument("coherence: zero column");
        v = std::sqrt(v);
    }
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            cdouble ip{0.0, 0.0};
            for (std::size_t i = 0; i < Phi.rows(); ++i) ip += std::conj(Phi(i, a)) * Phi(i, b);
            best = std::max(best, std::abs(ip) / (norms[a] * norms[b]));
        }
    return best;
}

double welch_bound(std::int64_t D, std::int64_t N) {
    if (D < 1 || N < 2) throw InvalidArgument("welch_bound needs D >= 1 and N >= 2");
    return std::sqrt(static_cast<double>(N - D) / (static_cast<double>(D) * static_cast<double>(N - 1)));
}

std::optional<TightnessReport> check_tight(const ComplexMatrix& Phi, double tol) {
    const ComplexMatrix F = multiply(Phi, Phi.adjoint());
    double trace = 0.0;
    for (std::size_t i = 0; i < F.rows(); ++i) trace += F(i, i).real();
    TightnessReport r;
    r.constant = trace / static_cast<double>(F.rows());
    r.residual = F.max_abs_diff(ComplexMatrix::identity(F.rows()).scaled(r.constant));
    if (r.constant <= 0.0 || r.residual > tol * std::max(1.0, r.constant)) return std::nullopt;
    return r;
}

ComplexMatrix simplex_psi(const Subgroup& H) {
    const AbelianGroup& G = H.parent();
    const std::int64_t S = G.order() / H.order() - 1;
    if (S < 1) throw InvalidArgument("simplex_psi: H must be a proper subgroup");
    const Subgroup perp = annihilator(H);
    const auto all = cosets(H);
    std::vector<Index> reps;
    for (const Coset& c : all)
        if (c.representative != 0) reps.push_back(c.representative);
    ComplexMatrix Psi(element_labels(G, reps), character_labels(G, perp.elements()));
    const ExactScalar norm = ExactScalar::sqrt_of(Rational(1, S));
    std::size_t i = 0;
    for (const Coset& c : all) {
        if (c.representative == 0) continue;
        for (std::size_t j = 0; j < perp.elements().size(); ++j) {
            const Index gamma = perp.elements()[j];
            const std::int64_t e = G.char_exponent(gamma, c.representative);
            for (const Index g : c.elements)
                if (G.char_exponent(gamma, g) != e) throw ConsistencyError("simplex_psi: value depends on coset representative");
            Psi.set_exact(i, j, ExactScalar::from_root(RootOfUnity(e, G.exponent())) * norm);
        }
        ++i;
    }
    return Psi;
}

ComplexMatrix phi_gamma(const GroupSubset& D, const Subgroup& H, Index gamma) {
    const AbelianGroup& G = D.group();
    const Subgroup perp = annihilator(H);
    ComplexMatrix Phi(element_labels(G, D.display_order()), character_labels(G, perp.elements()));
    const ExactScalar norm = ExactScalar::sqrt_of(Rational(1, D.size()));
    for (std::size_t i = 0; i < D.display_order().size(); ++i) {
        const Index d = D.display_order()[i];
        for (std::size_t j = 0; j < perp.elements().size(); ++j) {
            const Index chi = G.add(gamma, perp.elements()[j]);
            Phi.set_exact(i, j, ExactScalar::from_root(G.char_value(chi, d)) * norm);
        }
    }
    return Phi;
}

ComplexMatrix e_gamma(const GroupSubset& D, const Subgroup& H, Index gamma) {
    const std::int64_t S = fine_S(D, H);
    const AbelianGroup& G = D.group();
    const auto reps = nonidentity_reps(H);
    ComplexMatrix E(element_labels(G, D.display_order()), element_labels(G, reps));
    const ExactScalar norm = ExactScalar::sqrt_of(Rational(S, D.size()));
    const ExactScalar zero;
    for (std::size_t i = 0; i < D.display_order().size(); ++i) {
        const Index d = D.display_order()[i];
        const Index rep = coset_representative(H, d);
        for (std::size_t j = 0; j < reps.size(); ++j)
            E.set_exact(i, j, reps[j] == rep ? ExactScalar::from_root(G.char_value(gamma, d)) * norm : zero);
    }
    return E;
}

CrossGram cross_gram(const ComplexMatrix& E1, const ComplexMatrix& E2) {
    if (E1.rows() != E2.rows()) throw InvalidArgument("cross_gram: row counts differ");
    CrossGram out{multiply(E1.adjoint(), E2, true), 0.0};
    out.max_off_diagonal = out.matrix.max_off_diagonal();
    return out;
}

AngleReport principal_angles(const ComplexMatrix& E1, const ComplexMatrix& E2, double tol) {
    if (E1.rows() != E2.rows()) throw InvalidArgument("principal_angles: ambient dimensions differ");
    AngleReport r;
    r.inputs_isometric = isometry_residual(E1) <= tol && isometry_residual(E2) <= tol;
    r.singular_values = singular_values(multiply(E1.adjoint(), E2));
    for (auto& s : r.singular_values) s = std::clamp(s, 0.0, 1.0);
    for (const double s : r.singular_values) {
        r.principal_angles.push_back(std::acos(s));
        r.chordal_sq += 1.0 - s * s;
    }
    if (!r.singular_values.empty()) r.spectral_sq = 1.0 - r.singular_values.front() * r.singular_values.front();
    return r;
}

std::vector<Index> subspace_representatives(const Subgroup& H) {
    std::vector<Index> out;
    for (const Coset& c : cosets(annihilator(H))) out.push_back(c.representative);
    return out;
}

namespace {

FusionReport fusion_report(const GroupSubset& D, const Subgroup& H, double tol) {
    const std::int64_t S = fine_S(D, H);
    const auto reps = subspace_representatives(H);
    std::vector<ComplexMatrix> Es;
    FusionReport rep;
    ComplexMatrix projector_sum(D.display_order().size(), D.display_order().size());
    for (const Index gamma : reps) {
        ComplexMatrix E = e_gamma(D, H, gamma);
        E.drop_exact();
        rep.isometry_residual = std::max(rep.isometry_residual, isometry_residual(E));
        const ComplexMatrix P = multiply(E, E.adjoint());
        for (std::size_t i = 0; i < P.rows(); ++i)
            for (std::size_t j = 0; j < P.cols(); ++j) projector_sum(i, j) += P(i, j);
        Es.push_back(std::move(E));
    }
    const double c = static_cast<double>(S * H.order()) / static_cast<double>(D.size());
    rep.projector_sum_residual = projector_sum.max_abs_diff(ComplexMatrix::identity(projector_sum.rows()).scaled(c));
    const double target = 1.0 / std::sqrt(static_cast<double>(S));
    for (std::size_t a = 0; a < Es.size(); ++a)
        for (std::size_t b = a + 1; b < Es.size(); ++b) {
            const ComplexMatrix G = multiply(Es[a].adjoint(), Es[b]);
            PairAngles pa{reps[a], reps[b], principal_angles(Es[a], Es[b], tol), std::abs(G.frobenius_norm_sq() - 1.0)};
            rep.max_chordal_residual = std::max(rep.max_chordal_residual, pa.chordal_residual);
            for (const double s : pa.angles.singular_values)
                rep.max_spectral_residual = std::max(rep.max_spectral_residual, std::abs(s - target));
            rep.pairs.push_back(std::move(pa));
        }
    rep.ectff = rep.max_chordal_residual <= tol && rep.isometry_residual <= tol;
    rep.eitff = rep.max_spectral_residual <= tol && rep.isometry_residual <= tol;
    return rep;
}

}  // namespace

FusionReport ectff_check(const GroupSubset& D, const Subgroup& H, double tol) { return fusion_report(D, H, tol); }

FusionReport eitff_check(const GroupSubset& D, const Subgroup& H, double tol) {
    FusionReport rep = fusion_report(D, H, tol);
    if (rep.eitff != is_amalgam(D, H).is_amalgam)
        throw ConsistencyError("eitff: spectral check disagrees with the amalgam classification");
    return rep;
}

ComplexMatrix triple_product(const GroupSubset& D, const Subgroup& H, Index g1, Index g2, Index g3) {
    ComplexMatrix E1 = e_gamma(D, H, g1), E2 = e_gamma(D, H, g2), E3 = e_gamma(D, H, g3);
    E1.drop_exact();
    E2.drop_exact();
    E3.drop_exact();
    const ComplexMatrix a = multiply(E1.adjoint(), E2);
    const ComplexMatrix b = multiply(E2.adjoint(), E3);
    const ComplexMatrix c = multiply(E3.adjoint(), E1);
    return multiply(multiply(a, b), c);
}

ExactScalar zeta_inner(const GroupSubset& D, const GroupSubset& B, Index gamma1, Index gamma2) {
    const AbelianGroup& G = D.group();
    const auto S = welch_integer_S(D.size(), G.order());
    if (!S) throw InvalidArgument("zeta_inner: D has no integer S");
    CyclotomicInt sum(G.exponent());
    for (const Index b : B.elements()) sum.add_root(G.char_exponent(gamma2, b) - G.char_exponent(gamma1, b));
    return ExactScalar(sum) * ExactScalar::from_rational(Rational(*S, D.size()));
}

TripleProductReport triple_product_check(const GroupSubset& D, const Subgroup& H, const std::optional<GroupSubset>& B,
                                         double tol, std::uint64_t seed, std::int64_t max_triples) {
    const std::int64_t S = fine_S(D, H);
    const auto reps = subspace_representatives(H);
    const auto n = static_cast<std::int64_t>(reps.size());
    std::vector<ComplexMatrix> Es;
    for (const Index g : reps) {
        Es.push_back(e_gamma(D, H, g));
        Es.back().drop_exact();
    }
    std::vector<std::vector<ComplexMatrix>> cg(reps.size(), std::vector<ComplexMatrix>(reps.size()));
    auto gram = [&](std::int64_t i, std::int64_t j) -> const ComplexMatrix& {
        auto& slot = cg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (slot.rows() == 0) slot = multiply(Es[static_cast<std::size_t>(i)].adjoint(), Es[static_cast<std::size_t>(j)]);
        return slot;
    };

    std::vector<std::array<std::int64_t, 3>> triples;
    const std::int64_t total = n * (n - 1) * (n - 2);
    TripleProductReport rep;
    if (total <= max_triples) {
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j)
                for (std::int64_t k = 0; k < n; ++k)
                    if (i != j && j != k && i != k) triples.push_back({i, j, k});
    } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
        while (static_cast<std::int64_t>(triples.size()) < max_triples) {
            const std::int64_t i = pick(rng), j = pick(rng), k = pick(rng);
            if (i != j && j != k && i != k) triples.push_back({i, j, k});
        }
    }

    const auto m = static_cast<std::size_t>(S);
    for (const auto& t : triples) {
        const ComplexMatrix P = multiply(multiply(gram(t[0], t[1]), gram(t[1], t[2])), gram(t[2], t[0]));
        cdouble c{0.0, 0.0};
        if (B) {
            const Index g1 = reps[static_cast<std::size_t>(t[0])], g2 = reps[static_cast<std::size_t>(t[1])],
                        g3 = reps[static_cast<std::size_t>(t[2])];
            c = (zeta_inner(D, *B, g1, g2) * zeta_inner(D, *B, g2, g3) * zeta_inner(D, *B, g3, g1)).to_complex();
        } else {
            for (std::size_t i = 0; i < m; ++i) c += P(i, i);
            c /= static_cast<double>(m);
        }
        if (!rep.sample_scalar) rep.sample_scalar = c;
        rep.max_residual = std::max(rep.max_residual, P.max_abs_diff(ComplexMatrix::identity(m).scaled(c)));
        ++rep.triples_checked;
    }

    if (B) {
        const AbelianGroup& G = D.group();
        const Subgroup perp = annihilator(H);
        const double off = 1.0 / std::sqrt(static_cast<double>(S));
        for (std::size_t a = 0; a < reps.size(); ++a) {
            for (const Index delta : perp.elements()) {
                const double v = std::abs(zeta_inner(D, *B, reps[a], G.add(reps[a], delta)).to_complex());
                rep.max_zeta_residual = std::max(rep.max_zeta_residual, std::abs(v - 1.0));
            }
            for (std::size_t b = a + 1; b < reps.size(); ++b) {
                const double v = std::abs(zeta_inner(D, *B, reps[a], reps[b]).to_complex());
                rep.max_zeta_residual = std::max(rep.max_zeta_residual, std::abs(v - off));
            }
        }
    }
    rep.passed = rep.max_residual <= tol && rep.max_zeta_residual <= tol;
    return rep;
}

ComplexMatrix xi_block(const GroupSubset& A, const Subgroup& H, Index gamma) {
    const AbelianGroup& G = A.group();
    const std::int64_t S = G.order() / H.order() - 1;
    if (S < 1) throw InvalidArgument("xi_block: H must be a proper subgroup");
    const Subgroup perp = annihilator(H);
    std::vector<Index> cols;
    for (const Index d : perp.elements()) cols.push_back(G.add(gamma, d));
    ComplexMatrix Xi(element_labels(G, A.display_order()), character_labels(G, cols));
    const ExactScalar norm = ExactScalar::sqrt_of(Rational(1, S));
    for (std::size_t i = 0; i < A.display_order().size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            Xi.set_exact(i, j, ExactScalar::from_root(G.char_value(cols[j], A.display_order()[i])) * norm);
    return Xi;
}

UnbiasedReport unbiased_simplices_check(const GroupSubset& A, const Subgroup& H, double tol) {
    const AbelianGroup& G = A.group();
    const std::int64_t S = G.order() / H.order() - 1;
    if (A.size() != S) throw InvalidArgument("unbiased_simplices_check: |A| must equal G/H - 1");
    UnbiasedReport rep;
    const auto reps = subspace_representatives(H);
    std::vector<ComplexMatrix> blocks;
    const auto m = static_cast<std::size_t>(S + 1);
    ComplexMatrix simplex_gram = ComplexMatrix::identity(m).scaled(1.0 + 1.0 / static_cast<double>(S));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) simplex_gram(i, j) -= 1.0 / static_cast<double>(S);
    for (const Index gamma : reps) {
        ComplexMatrix Xi = xi_block(A, H, gamma);
        Xi.drop_exact();
        rep.max_simplex_residual = std::max(rep.max_simplex_residual, multiply(Xi.adjoint(), Xi).max_abs_diff(simplex_gram));
        for (std::size_t i = 0; i < Xi.rows(); ++i) {
            cdouble row_sum{0.0, 0.0};
            for (std::size_t j = 0; j < Xi.cols(); ++j) row_sum += Xi(i, j);
            rep.max_simplex_residual = std::max(rep.max_simplex_residual, std::abs(row_sum));
        }
        blocks.push_back(std::move(Xi));
    }
    const double off = 1.0 / std::sqrt(static_cast<double>(S));
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b) {
            const ComplexMatrix X = multiply(blocks[a].adjoint(), blocks[b]);
            for (std::size_t i = 0; i < X.rows(); ++i)
                for (std::size_t j = 0; j < X.cols(); ++j)
                    rep.max_unbiased_residual = std::max(rep.max_unbiased_residual, std::abs(std::abs(X(i, j)) - off));
        }
    rep.passed = rep.max_simplex_residual <= tol && rep.max_unbiased_residual <= tol;
    const bool disjoint = std::none_of(A.elements().begin(), A.elements().end(), [&](Index a) { return H.contains(a); });
    rep.is_simplicial_rds = disjoint && certify_rds(A, H).has_value();
    if (rep.passed != rep.is_simplicial_rds)
        throw ConsistencyError("unbiased simplices disagree with the simplicial RDS certificate");
    return rep;
}

}  // namespace etfkit
