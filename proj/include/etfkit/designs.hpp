#pragma once

// Difference sets and relative difference sets: certification and the
// standard algebraic constructions (Singer complements, twin prime power
// complements, McFarland sets, simplicial RDSs from relative traces).

#include <cstdint>
#include <optional>
#include <vector>

#include "etfkit/group.hpp"

namespace etfkit {

/// A subset of a group. `elements()` is canonical (sorted); `display_order()`
/// keeps the order the caller supplied, which only affects matrix labeling.
class GroupSubset {
public:
    GroupSubset() = default;
    GroupSubset(AbelianGroup group, std::vector<Index> elements);

    [[nodiscard]] const AbelianGroup& group() const { return group_; }
    [[nodiscard]] const std::vector<Index>& elements() const { return elements_; }
    [[nodiscard]] const std::vector<Index>& display_order() const { return display_; }
    [[nodiscard]] std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
    [[nodiscard]] bool contains(Index g) const;
    [[nodiscard]] IntVector indicator() const { return IntVector::indicator(group_, elements_); }
    /// Same set with a different display order (must be a permutation of the elements).
    [[nodiscard]] GroupSubset with_display_order(std::vector<Index> order) const;
    /// d + t for every d.
    [[nodiscard]] GroupSubset translate(Index t) const;

    /// Canonical identity ignores the display order.
    friend bool operator==(const GroupSubset& a, const GroupSubset& b) {
        return a.group_ == b.group_ && a.elements_ == b.elements_;
    }

private:
    AbelianGroup group_;
    std::vector<Index> elements_;
    std::vector<Index> display_;
};

struct RdsParams {
    std::int64_t m;  // G / H
    std::int64_t H;
    std::int64_t D;
    Rational lambda;
    friend bool operator==(const RdsParams&, const RdsParams&) = default;
};

/// chi_D * chi_D~: the number of ways each g is a difference of members of D.
IntVector difference_counts(const GroupSubset& D);

/// Lambda when D is a difference set (every nonzero g is a difference exactly Lambda times).
std::optional<std::int64_t> certify_difference_set(const GroupSubset& D);

/// Two nonzero elements with different difference counts, when D is not a difference set.
std::optional<std::pair<Index, Index>> difference_set_witness(const GroupSubset& D);

/// Parameters when D is an H-RDS, decided on the difference counts; the
/// Fourier-side criterion is evaluated as a cross-check and a disagreement
/// raises ConsistencyError.
std::optional<RdsParams> certify_rds(const GroupSubset& D, const Subgroup& H, double tol = 1e-9);

/// The Fourier-side criterion alone: |F* chi_D|^2 equals D - Lambda H on
/// H^perp minus the trivial character, D off H^perp, with Lambda = D(D-1)/(G-H).
bool fourier_rds_criterion(const GroupSubset& D, const Subgroup& H, double tol = 1e-9);

/// S with S^2 = D(G-1)/(G-D) when that is a perfect square; requires 0 < D < G.
std::optional<std::int64_t> welch_integer_S(std::int64_t D, std::int64_t G);

struct QuotientRds {
    QuotientGroup quotient;
    GroupSubset image;
    Subgroup forbidden;  // H / K inside G / K
    RdsParams params;
};

/// Image of an H-RDS in G/K for K <= H; an RDS relative to H/K with Lambda scaled by K.
QuotientRds quotient_rds(const GroupSubset& D, const Subgroup& H, const Subgroup& K);

GroupSubset complement(const GroupSubset& D);

struct SingerComplement {
    AbelianGroup group;
    GroupSubset D;
    Subgroup H;
    GroupSubset A;
    GroupSubset B;
};

/// Complement of a Singer difference set in Z_{(Q^{2J}-1)/(Q-1)}, realized by
/// discrete logs, with its composite factorization chi_D = chi_A * chi_B.
SingerComplement singer_complement(std::int64_t Q, std::int64_t J);

struct SimplicialRds {
    AbelianGroup group;
    GroupSubset A;
    Subgroup K;
};

/// RDS(Q+1, Q-1, Q, 1) in Z_{Q^2-1} from {x : tr_{Q^2/Q}(x) = 1}, disjoint from K.
SimplicialRds simplicial_rds_quadratic(std::int64_t Q);

struct TppComplement {
    AbelianGroup group;
    GroupSubset D;
    Subgroup H;
};

/// Twin prime power complement in the additive group F_Q x F_{Q+2}.
TppComplement tpp_complement(std::int64_t Q);

struct McFarlandSet {
    AbelianGroup group;
    GroupSubset D;
    Subgroup H;
};

/// McFarland difference set in K x F_Q^J; K defaults to the cyclic group of
/// order (Q^J-1)/(Q-1) + 1.
McFarlandSet mcfarland(std::int64_t Q, std::int64_t J, std::optional<std::vector<std::int64_t>> K_orders = {});

/// Group of the additive structure of F_Q: p repeated n times.
std::vector<std::int64_t> additive_orders(std::int64_t Q);

}  // namespace etfkit
