#pragma once

// Circulant conference matrices over G/H: zero diagonal, unimodular
// off-diagonal entries, C* C = S I, entry (g, g') depending only on g - g'.

#include <optional>
#include <string>
#include <vector>

#include "etfkit/designs.hpp"
#include "etfkit/matrix.hpp"

namespace etfkit {

/// Stored by first column over the cosets of H (ordered by representative).
struct CirculantConference {
    Subgroup H;
    std::vector<Index> coset_reps;
    std::vector<ExactScalar> first_column;  // entry (g-bar, 0-bar)
    std::int64_t S = 0;

    [[nodiscard]] std::size_t size() const { return coset_reps.size(); }
    /// Position of the coset of g in `coset_reps`.
    [[nodiscard]] std::size_t coset_position(Index g) const;
    /// Full matrix, exact entries included.
    [[nodiscard]] ComplexMatrix materialize() const;
};

/// C_gamma(g, g') = (S^{3/2} / D) sum_{d in D, d-bar = g-bar - g'-bar} gamma(d).
/// Requires D to be H-fine and gamma outside H^perp.
CirculantConference conference_from_amalgam(const GroupSubset& D, const Subgroup& H, Index gamma);

/// C^_gamma(g, g') = sum_{a in A, a-bar = g-bar - g'-bar} gamma(a). Requires |A| = G/H - 1 and gamma outside H^perp.
CirculantConference conference_from_srds(const GroupSubset& A, const Subgroup& H, Index gamma);

struct ConferenceReport {
    bool passed = false;
    std::int64_t size = 0;
    std::int64_t S = 0;
    double diagonal_residual = 0.0;
    double unimodular_residual = 0.0;
    double gram_residual = 0.0;       // ||C* C - S I||_inf
    double circulant_residual = 0.0;  // distance from the first-column rule
    bool exact_unimodular = false;    // every off-diagonal entry is exactly a root of unity
};

/// Residual checks on a materialized matrix. `difference_table[i][j]` names the
/// row whose first-column entry (i, j) should equal; without it the cyclic rule (i - j) mod n is used.
ConferenceReport verify_conference(const ComplexMatrix& C, double tol = 1e-9,
                                   const std::vector<std::vector<std::size_t>>* difference_table = nullptr);
ConferenceReport verify_conference(const CirculantConference& C, double tol = 1e-9);

/// Rows of the coset difference table: table[i][j] = position of g_i - g_j.
std::vector<std::vector<std::size_t>> coset_difference_table(const CirculantConference& C);

/// Autocorrelation of the first column: sum_g conj(y(g)) y(g + t) = S delta_0(t), exactly.
bool first_column_autocorrelation_exact(const CirculantConference& C);

struct ScalarRelationReport {
    bool passed = false;
    std::optional<cdouble> z;              // C = z C^, read off the matrices
    cdouble z_formula{0.0, 0.0};           // (S^{3/2}/D) sum_{b in B} gamma(b)
    double proportionality_residual = 0.0;  // ||C - z C^||_inf
    double modulus_residual = 0.0;          // | |z| - 1 |
    double formula_residual = 0.0;          // |z - z_formula|
    std::optional<Monomial> z_exact;
};

/// Compares the amalgam-route and simplicial-route matrices for a composite D = A + B.
ScalarRelationReport scalar_relation_check(const GroupSubset& D, const Subgroup& H, const GroupSubset& A,
                                           const GroupSubset& B, Index gamma, double tol = 1e-9);

/// Characters outside H^perp, ascending.
std::vector<Index> characters_outside_annihilator(const Subgroup& H);

}  // namespace etfkit
