#include "etfkit/conference.hpp"

#include <algorithm>
#include <cmath>

#include "etfkit/classify.hpp"

namespace etfkit {

namespace {

std::vector<Index> coset_reps_of(const Subgroup& H) {
    std::vector<Index> out;
    for (const Coset& c : cosets(H)) out.push_back(c.representative);
    return out;
}

void require_outside_perp(const Subgroup& H, Index gamma) {
    const AbelianGroup& G = H.parent();
    if (gamma < 0 || gamma >= G.order()) throw InvalidArgument("character index out of range");
    if (annihilator(H).contains(gamma))
        throw InvalidArgument("character " + G.label(gamma) + " lies in the annihilator of H");
}

}  // namespace

std::size_t CirculantConference::coset_position(Index g) const {
    const Index rep = coset_representative(H, g);
    const auto it = std::lower_bound(coset_reps.begin(), coset_reps.end(), rep);
    if (it == coset_reps.end() || *it != rep) throw ConsistencyError("coset representative not found");
    return static_cast<std::size_t>(it - coset_reps.begin());
}

std::vector<std::vector<std::size_t>> coset_difference_table(const CirculantConference& C) {
    const AbelianGroup& G = C.H.parent();
    const std::size_t n = C.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = C.coset_position(G.sub(C.coset_reps[i], C.coset_reps[j]));
    return table;
}

ComplexMatrix CirculantConference::materialize() const {
    const AbelianGroup& G = H.parent();
    std::vector<std::string> labels;
    for (const Index r : coset_reps) labels.push_back(G.label(r));
    ComplexMatrix M(labels, labels);
    const auto table = coset_difference_table(*this);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) M.set_exact(i, j, first_column[table[i][j]]);
    return M;
}

CirculantConference conference_from_amalgam(const GroupSubset& D, const Subgroup& H, Index gamma) {
    if (!is_fine_for(D, H)) throw InvalidArgument("conference_from_amalgam: D is not fine for the given subgroup");
    require_outside_perp(H, gamma);
    const AbelianGroup& G = D.group();
    const std::int64_t S = *welch_integer_S(D.size(), G.order());
    CirculantConference C{H, coset_reps_of(H), {}, S};
    std::vector<CyclotomicInt> sums(C.size(), CyclotomicInt(G.exponent()));
    for (const Index d : D.elements()) sums[C.coset_position(d)].add_root(G.char_exponent(gamma, d));
    for (auto& s : sums) C.first_column.emplace_back(s * S, D.size(), S);
    return C;
}

CirculantConference conference_from_srds(const GroupSubset& A, const Subgroup& H, Index gamma) {
    const AbelianGroup& G = A.group();
    const std::int64_t S = G.order() / H.order() - 1;
    if (A.size() != S) throw InvalidArgument("conference_from_srds: |A| must equal G/H - 1");
    require_outside_perp(H, gamma);
    CirculantConference C{H, coset_reps_of(H), {}, S};
    std::vector<CyclotomicInt> sums(C.size(), CyclotomicInt(G.exponent()));
    for (const Index a : A.elements()) sums[C.coset_position(a)].add_root(G.char_exponent(gamma, a));
    for (auto& s : sums) C.first_column.emplace_back(std::move(s));
    return C;
}

ConferenceReport verify_conference(const ComplexMatrix& C, double tol,
                                   const std::vector<std::vector<std::size_t>>* difference_table) {
    const std::size_t n = C.rows();
    if (C.cols() != n || n < 2) throw InvalidArgument("verify_conference: need a square matrix of size >= 2");
    ConferenceReport r;
    r.size = static_cast<std::int64_t>(n);
    r.S = r.size - 1;
    r.exact_unimodular = C.has_exact();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                r.diagonal_residual = std::max(r.diagonal_residual, std::abs(C(i, j)));
                if (C.has_exact() && !C.exact(i, j).is_zero()) r.exact_unimodular = false;
                continue;
            }
            r.unimodular_residual = std::max(r.unimodular_residual, std::abs(std::abs(C(i, j)) - 1.0));
            if (r.exact_unimodular) {
                const auto m = C.exact(i, j).as_monomial();
                if (!m || m->num != m->den || m->rad != 1) r.exact_unimodular = false;
            }
            const std::size_t src = difference_table ? (*difference_table)[i][j] : (i + n - j) % n;
            r.circulant_residual = std::max(r.circulant_residual, std::abs(C(i, j) - C(src, 0)));
        }
    const ComplexMatrix gram = multiply(C.adjoint(), C);
    r.gram_residual = gram.max_abs_diff(ComplexMatrix::identity(n).scaled(static_cast<double>(r.S)));
    r.passed = r.diagonal_residual <= tol && r.unimodular_residual <= tol && r.gram_residual <= tol &&
               r.circulant_residual <= tol;
    return r;
}

ConferenceReport verify_conference(const CirculantConference& C, double tol) {
    const auto table = coset_difference_table(C);
    ConferenceReport r = verify_conference(C.materialize(), tol, &table);
    if (r.S != C.S) r.passed = false;
    return r;
}

bool first_column_autocorrelation_exact(const CirculantConference& C) {
    const AbelianGroup& G = C.H.parent();
    const std::size_t n = C.size();
    for (std::size_t t = 0; t < n; ++t) {
        std::optional<ExactScalar> acc = ExactScalar{};
        for (std::size_t u = 0; u < n && acc; ++u) {
            const std::size_t v = C.coset_position(G.add(C.coset_reps[u], C.coset_reps[t]));
            acc = ExactScalar::add(*acc, C.first_column[u].conj() * C.first_column[v]);
        }
        if (!acc) return false;
        const ExactScalar want = ExactScalar::from_rational(Rational(t == 0 ? C.S : 0));
        if (!(*acc == want)) return false;
    }
    return true;
}

ScalarRelationReport scalar_relation_check(const GroupSubset& D, const Subgroup& H, const GroupSubset& A,
                                           const GroupSubset& B, Index gamma, double tol) {
    const CirculantConference C = conference_from_amalgam(D, H, gamma);
    const CirculantConference Chat = conference_from_srds(A, H, gamma);
    const AbelianGroup& G = D.group();
    ScalarRelationReport r;

    CyclotomicInt bsum(G.exponent());
    for (const Index b : B.elements()) bsum.add_root(G.char_exponent(gamma, b));
    const ExactScalar z_formula(bsum * C.S, D.size(), C.S);
    r.z_formula = z_formula.to_complex();
    r.z_exact = z_formula.as_monomial();

    for (std::size_t i = 0; i < Chat.size(); ++i) {
        const cdouble h = Chat.first_column[i].to_complex();
        if (std::abs(h) > 0.5) {
            r.z = C.first_column[i].to_complex() / h;
            break;
        }
    }
    if (!r.z) return r;
    for (std::size_t i = 0; i < C.size(); ++i)
        r.proportionality_residual = std::max(
            r.proportionality_residual, std::abs(C.first_column[i].to_complex() - *r.z * Chat.first_column[i].to_complex()));
    r.modulus_residual = std::abs(std::abs(*r.z) - 1.0);
    r.formula_residual = std::abs(*r.z - r.z_formula);
    bool exact_ok = true;
    for (std::size_t i = 0; i < C.size() && exact_ok; ++i)
        exact_ok = C.first_column[i] == z_formula * Chat.first_column[i];
    r.passed = exact_ok && r.proportionality_residual <= tol && r.modulus_residual <= tol && r.formula_residual <= tol;
    return r;
}

std::vector<Index> characters_outside_annihilator(const Subgroup& H) {
    const Subgroup perp = annihilator(H);
    std::vector<Index> out;
    for (Index g = 0; g < H.parent().order(); ++g)
        if (!perp.contains(g)) out.push_back(g);
    return out;
}

}  // namespace etfkit
