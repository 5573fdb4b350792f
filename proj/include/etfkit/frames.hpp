#pragma once

// Harmonic frames from difference sets, their decomposition into regular
// simplices over a fine subgroup, and fusion-frame checks on the resulting
// subspaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etfkit/designs.hpp"
#include "etfkit/matrix.hpp"

namespace etfkit {

/// Entry (d, gamma) = gamma(d) / sqrt(D); rows follow D's display order, columns every character.
ComplexMatrix harmonic_synthesis(const GroupSubset& D);

/// Max normalized |<phi_n, phi_n'>| over distinct columns.
double coherence(const ComplexMatrix& Phi);
/// sqrt((N - D) / (D (N - 1))).
double welch_bound(std::int64_t D, std::int64_t N);

struct TightnessReport {
    double constant = 0.0;
    double residual = 0.0;  // ||Phi Phi* - C I||_inf
};
/// C with Phi Phi* = C I, if the residual is within tol.
std::optional<TightnessReport> check_tight(const ComplexMatrix& Phi, double tol = 1e-9);

/// Column labels for characters of G (same format as element labels).
std::vector<std::string> character_labels(const AbelianGroup& G, const std::vector<Index>& chars);

/// Psi(g-bar, gamma) = gamma(g) / sqrt(S): rows the nonidentity cosets of H, columns H^perp.
ComplexMatrix simplex_psi(const Subgroup& H);

/// Phi_gamma(d, gamma') = gamma(d) gamma'(d) / sqrt(D), gamma' running over H^perp.
ComplexMatrix phi_gamma(const GroupSubset& D, const Subgroup& H, Index gamma);

/// E_gamma(d, g-bar) = sqrt(S/D) gamma(d) when d lies in g-bar; requires D to be H-fine.
ComplexMatrix e_gamma(const GroupSubset& D, const Subgroup& H, Index gamma);

struct CrossGram {
    ComplexMatrix matrix;
    double max_off_diagonal = 0.0;
};
/// E1* E2 (exact when both carry exact entries).
CrossGram cross_gram(const ComplexMatrix& E1, const ComplexMatrix& E2);

struct AngleReport {
    std::vector<double> singular_values;   // descending
    std::vector<double> principal_angles;  // ascending, radians
    double chordal_sq = 0.0;
    double spectral_sq = 0.0;
    bool inputs_isometric = true;
};
AngleReport principal_angles(const ComplexMatrix& E1, const ComplexMatrix& E2, double tol = 1e-9);

/// One representative per coset of H^perp in the dual (least index first).
std::vector<Index> subspace_representatives(const Subgroup& H);

struct PairAngles {
    Index gamma1;
    Index gamma2;
    AngleReport angles;
    double chordal_residual;  // | ||E1* E2||_F^2 - 1 |
};

struct FusionReport {
    bool ectff = false;
    bool eitff = false;
    double max_chordal_residual = 0.0;
    double max_spectral_residual = 0.0;  // max |sigma - 1/sqrt(S)|
    double projector_sum_residual = 0.0;  // ||sum P - (S H / D) I||_inf
    double isometry_residual = 0.0;       // max ||E* E - I||_inf
    std::vector<PairAngles> pairs;
};

/// Chordal check: ||E_gamma* E_gamma'||_F^2 = 1 for all pairs of distinct subspaces.
FusionReport ectff_check(const GroupSubset& D, const Subgroup& H, double tol = 1e-9);
/// Spectral check: every singular value of every cross-Gram is 1/sqrt(S). Asserts
/// agreement with the amalgam classification of D.
FusionReport eitff_check(const GroupSubset& D, const Subgroup& H, double tol = 1e-9);

struct TripleProductReport {
    bool passed = false;
    std::int64_t triples_checked = 0;
    double max_residual = 0.0;            // distance of the product from c I (or from its own scalar part)
    double max_zeta_residual = 0.0;       // | |<zeta, zeta'>| - 1/sqrt(S) | off-coset, | . - 1| on-coset
    bool exhaustive = true;
    std::optional<cdouble> sample_scalar;  // c for the first triple of distinct subspaces
};

/// E*_{g1} E_{g2} E*_{g2} E_{g3} E*_{g3} E_{g1} against <z1,z2><z2,z3><z3,z1> I,
/// z_gamma(b) = sqrt(S/D) gamma(b). Without a witness only scalarness is tested.
/// Exhaustive up to `max_triples` ordered triples, otherwise sampled with `seed`.
TripleProductReport triple_product_check(const GroupSubset& D, const Subgroup& H,
                                         const std::optional<GroupSubset>& B, double tol = 1e-9,
                                         std::uint64_t seed = 0, std::int64_t max_triples = 500);

/// The same product for one explicit triple of characters.
ComplexMatrix triple_product(const GroupSubset& D, const Subgroup& H, Index g1, Index g2, Index g3);
/// <z_gamma1, z_gamma2> for z_gamma(b) = sqrt(S/D) gamma(b), exactly.
ExactScalar zeta_inner(const GroupSubset& D, const GroupSubset& B, Index gamma1, Index gamma2);

struct UnbiasedReport {
    bool passed = false;
    bool is_simplicial_rds = false;  // certify_rds(A, H) and A misses H
    double max_simplex_residual = 0.0;
    double max_unbiased_residual = 0.0;
};

/// xi_gamma(a) = gamma(a) / sqrt(S): per-coset regular simplices, mutually unbiased across cosets.
UnbiasedReport unbiased_simplices_check(const GroupSubset& A, const Subgroup& H, double tol = 1e-9);

/// Xi matrix for one coset of H^perp (columns gamma gamma' for gamma' in H^perp).
ComplexMatrix xi_block(const GroupSubset& A, const Subgroup& H, Index gamma);

}  // namespace etfkit
