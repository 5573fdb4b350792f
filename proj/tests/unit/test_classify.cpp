#include <doctest.h>

#include "etfkit/classify.hpp"
#include "oracles.hpp"

using namespace etfkit;

namespace {

const AbelianGroup Z15({15});
const GroupSubset kZ15Set(Z15, {6, 11, 7, 12, 13, 3, 9, 14});
const Subgroup kH(Z15, {0, 5, 10});

// Every slice H n (D - g) is a difference set for H, straight from the definitions.
bool brute_amalgam(const GroupSubset& D, const Subgroup& H) {
    const AbelianGroup& G = D.group();
    for (Index g = 0; g < G.order(); ++g) {
        std::vector<Index> slice;
        for (const Index h : H.elements())
            if (D.contains(G.add(h, g))) slice.push_back(h);
        const auto c = oracle::difference_counts(G, slice);
        std::int64_t lambda = -1;
        for (const Index h : H.elements()) {
            if (h == 0) continue;
            const std::int64_t v = c[static_cast<std::size_t>(h)];
            if (lambda < 0) lambda = v;
            if (v != lambda) return false;
        }
    }
    return true;
}

void check_invariants(const GroupSubset& D, const DesignCertificate& cert) {
    if (cert.composite) CHECK(cert.is_amalgam);
    if (cert.is_amalgam) CHECK(cert.fine_subgroup.has_value());
    if (!cert.fine_subgroup) return;
    const Subgroup& H = *cert.fine_subgroup;
    const std::int64_t S = *cert.S;
    CHECK(D.size() % S == 0);
    CHECK(D.size() - *cert.lambda == (D.size() / S) * (D.size() / S));
    CHECK((H.order() - 1) * *cert.lambda == dg_pair_count(cert.dg));
    CHECK(cert.is_amalgam == brute_amalgam(D, H));
    if (cert.composite) {
        CHECK(cert.s3_divides_d2);
        CHECK(cert.complement_divides);
    }
}

}  // namespace

TEST_CASE("slices of the Z15 example") {
    CHECK(compute_Dg(kZ15Set, kH, 1) == std::vector<Index>{5, 10});
    CHECK(compute_Dg(kZ15Set, kH, 6) == std::vector<Index>{0, 5});
    CHECK(compute_Dg(kZ15Set, kH, 0).empty());
    for (const Index g : {1, 2, 8, 4}) CHECK(compute_Dg(kZ15Set, kH, g) == std::vector<Index>{5, 10});
    for (const Index g : {6, 7, 13, 9}) CHECK(compute_Dg(kZ15Set, kH, g) == std::vector<Index>{0, 5});
    for (const Index g : {0, 5, 10}) CHECK(compute_Dg(kZ15Set, kH, g).empty());

    const auto table = dg_table(kZ15Set, kH);
    REQUIRE(table.size() == 5);
    CHECK(table[0].representative == 0);
    CHECK(table[0].elements.empty());
    CHECK(table[0].is_difference_set);
    for (const auto& e : table) CHECK(e.is_difference_set);
}

TEST_CASE("Z15 example classifies as composite") {
    const DesignCertificate cert = classify(kZ15Set);
    CHECK(cert.is_ds);
    CHECK(cert.lambda == std::optional<std::int64_t>(4));
    CHECK(cert.S == std::optional<std::int64_t>(4));
    REQUIRE(cert.fine_subgroup);
    CHECK(*cert.fine_subgroup == kH);
    CHECK(cert.is_amalgam);
    REQUIRE(cert.composite);
    CHECK(cert.composite->B.elements() == std::vector<Index>{5, 10});
    CHECK(convolve(cert.composite->A.indicator(), cert.composite->B.indicator()) == kZ15Set.indicator());
    // A is a transversal of the nonidentity cosets with D_a = B
    std::set<Index> reps;
    for (const Index a : cert.composite->A.elements()) {
        reps.insert(coset_representative(kH, a));
        CHECK(compute_Dg(kZ15Set, kH, a) == cert.composite->B.elements());
    }
    CHECK(reps == std::set<Index>{1, 2, 3, 4});
    CHECK(cert.s_divides_d);
    CHECK(cert.s3_divides_d2);
    CHECK(cert.complement_divides);
    check_invariants(kZ15Set, cert);
}

TEST_CASE("a difference set with non-integer S is not fine") {
    const GroupSubset D(AbelianGroup({7}), {1, 2, 4});
    const DesignCertificate cert = classify(D);
    CHECK(cert.is_ds);
    CHECK(cert.lambda == std::optional<std::int64_t>(1));
    CHECK_FALSE(cert.S);
    CHECK_FALSE(cert.fine_subgroup);
    CHECK_FALSE(cert.is_amalgam);
    CHECK_FALSE(is_fine(D));
}

TEST_CASE("a non difference set carries a witness") {
    const GroupSubset D(Z15, {0, 1, 2, 7});
    const DesignCertificate cert = classify(D);
    CHECK_FALSE(cert.is_ds);
    REQUIRE(cert.non_ds_witness);
    const auto c = oracle::difference_counts(Z15, D.elements());
    CHECK(c[static_cast<std::size_t>(cert.non_ds_witness->first)] !=
          c[static_cast<std::size_t>(cert.non_ds_witness->second)]);
}

TEST_CASE("mcfarland(2,2) is fine but not an amalgam") {
    const auto m = mcfarland(2, 2, std::vector<std::int64_t>{2, 2});
    const DesignCertificate cert = classify(m.D);
    CHECK(cert.S == std::optional<std::int64_t>(3));
    REQUIRE(cert.fine_subgroup);
    CHECK(cert.fine_subgroup->order() == 4);
    CHECK_FALSE(cert.is_amalgam);
    CHECK_FALSE(cert.composite);
    check_invariants(m.D, cert);
    CHECK(is_amalgam(m.D, m.H).rejected_by_divisibility);
}

TEST_CASE("twin prime power classification") {
    for (const std::int64_t Q : {3, 5, 7, 9, 11}) {
        CAPTURE(Q);
        const auto t = tpp_complement(Q);
        const DesignCertificate cert = classify(t.D);
        REQUIRE(cert.fine_subgroup);
        CHECK(cert.S == std::optional<std::int64_t>(Q + 1));
        CHECK(cert.is_amalgam == (Q % 4 == 3));
        CHECK(cert.composite.has_value() == (Q == 3));
        check_invariants(t.D, cert);
        if (Q % 4 == 1) CHECK(is_amalgam(t.D, t.H).rejected_by_divisibility);
    }
}

TEST_CASE("singer complements are composite") {
    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
        CAPTURE(Q);
        const auto s = singer_complement(Q, J);
        const DesignCertificate cert = classify(s.D, s.H);
        CHECK(cert.is_amalgam);
        REQUIRE(cert.composite);
        check_invariants(s.D, cert);
        const auto w = is_composite(s.D, s.H);
        REQUIRE(w);
        CHECK(convolve(w->A.indicator(), w->B.indicator()) == s.D.indicator());
    }
}

TEST_CASE("fine subgroup check and the subgroup bound") {
    CHECK(is_fine_for(kZ15Set, kH));
    CHECK_FALSE(is_fine_for(kZ15Set, Subgroup::generated_by(Z15, {3})));
    // every subgroup missing a difference set has order at most G/(S+1)
    for (const GroupSubset& D : {kZ15Set, mcfarland(2, 2).D, tpp_complement(5).D, singer_complement(3, 2).D}) {
        const std::int64_t S = *welch_integer_S(D.size(), D.group().order());
        for (const Subgroup& H : all_subgroups(D.group())) {
            bool disjoint = true;
            for (const Index h : H.elements()) disjoint = disjoint && !D.contains(h);
            if (disjoint) CHECK(H.order() <= D.group().order() / (S + 1));
        }
    }
}

TEST_CASE("classify with an explicit subgroup") {
    const DesignCertificate cert = classify(kZ15Set, kH);
    CHECK(cert.fine_subgroup == std::optional<Subgroup>(kH));
    const DesignCertificate wrong = classify(kZ15Set, Subgroup::generated_by(Z15, {3}));
    CHECK_FALSE(wrong.fine_subgroup);
    CHECK_FALSE(wrong.notes.empty());
}
