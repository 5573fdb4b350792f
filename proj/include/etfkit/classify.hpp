#pragma once

// Fine / amalgam / composite classification of difference sets.

#include <optional>
#include <string>
#include <vector>

#include "etfkit/designs.hpp"

namespace etfkit {

/// D_g = H n (D - g), as a sorted list of elements of H.
std::vector<Index> compute_Dg(const GroupSubset& D, const Subgroup& H, Index g);

/// Slice of D over one coset of H.
struct DgEntry {
    Index representative;
    std::vector<Index> elements;
    bool is_difference_set;  // for H; empty slices count as trivially valid
    std::optional<std::int64_t> lambda;
};

/// D_g for every coset representative of H, in representative order.
std::vector<DgEntry> dg_table(const GroupSubset& D, const Subgroup& H);

/// True when D misses H and |H| = G/(S+1) for the integer S of D.
bool is_fine_for(const GroupSubset& D, const Subgroup& H);

/// First subgroup of order G/(S+1) disjoint from D. On success the Fourier
/// condition (value -D/S on H^perp minus the trivial character, checked exactly)
/// and the slice-size condition |D_g| = D/S off H are both asserted.
std::optional<Subgroup> is_fine(const GroupSubset& D);

struct AmalgamResult {
    bool is_amalgam = false;
    bool rejected_by_divisibility = false;  // S^3 does not divide D^2
    std::vector<DgEntry> table;
};

/// Whether every D_g is a difference set for H. Requires D to be H-fine.
AmalgamResult is_amalgam(const GroupSubset& D, const Subgroup& H);

struct CompositeWitness {
    GroupSubset A;
    GroupSubset B;
};

/// Translate matching: succeeds when every nonidentity coset of H contains an
/// a with D_a equal to one fixed nonempty slice B. Requires D to be H-fine.
std::optional<CompositeWitness> is_composite(const GroupSubset& D, const Subgroup& H);

/// sum over coset representatives of |D_g|(|D_g| - 1).
std::int64_t dg_pair_count(const std::vector<DgEntry>& table);

struct DesignCertificate {
    bool is_ds = false;
    std::optional<std::int64_t> lambda;
    std::optional<std::pair<Index, Index>> non_ds_witness;
    std::optional<std::int64_t> S;
    std::optional<Subgroup> fine_subgroup;
    std::vector<DgEntry> dg;
    bool is_amalgam = false;
    std::optional<CompositeWitness> composite;
    bool s_divides_d = false;
    bool s3_divides_d2 = false;
    bool complement_divides = false;  // (G - D) | (D - 1)
    std::vector<std::string> notes;
};

/// DS -> S -> fine -> amalgam -> composite, each stage gated on the previous.
/// When `H` is supplied it is used as the fine subgroup candidate instead of searching.
DesignCertificate classify(const GroupSubset& D, const std::optional<Subgroup>& H = std::nullopt);

}  // namespace etfkit
