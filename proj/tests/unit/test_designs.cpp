#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "etfkit/designs.hpp"
#include "etfkit/finite_field.hpp"
#include "oracles.hpp"

using namespace etfkit;

namespace {

const AbelianGroup Z15({15});
const std::vector<Index> kZ15Set{6, 11, 7, 12, 13, 3, 9, 14};

std::vector<Index> sorted(std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void check_certified_ds(const GroupSubset& D) {
    const std::int64_t want = oracle::ds_lambda(D.group(), D.elements());
    REQUIRE(want >= 0);
    CHECK(certify_difference_set(D) == std::optional<std::int64_t>(want));
}

}  // namespace

TEST_CASE("group subsets keep a display order but compare canonically") {
    const GroupSubset D(Z15, kZ15Set);
    CHECK(D.elements() == sorted(kZ15Set));
    CHECK(D.display_order() == kZ15Set);
    CHECK(D == GroupSubset(Z15, sorted(kZ15Set)));
    CHECK(D.contains(13));
    CHECK_FALSE(D.contains(0));
    CHECK_THROWS_AS(GroupSubset(Z15, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(GroupSubset(Z15, {15}), InvalidArgument);
    CHECK_THROWS_AS(D.with_display_order({3, 6}), InvalidArgument);
    CHECK(D.translate(1).elements() == sorted({7, 12, 8, 13, 14, 4, 10, 0}));
}

TEST_CASE("Z15 example is a (15, 8, 4) difference set") {
    const GroupSubset D(Z15, kZ15Set);
    CHECK(certify_difference_set(D) == std::optional<std::int64_t>(4));
    CHECK(welch_integer_S(8, 15) == std::optional<std::int64_t>(4));
    CHECK_FALSE(difference_set_witness(D));
}

TEST_CASE("difference set certification agrees with the brute-force table") {
    CHECK(certify_difference_set(GroupSubset(AbelianGroup({7}), {1, 2, 4})) == std::optional<std::int64_t>(1));
    CHECK(certify_difference_set(GroupSubset(AbelianGroup({13}), {0, 1, 3, 9})) == std::optional<std::int64_t>(1));
    CHECK_FALSE(certify_difference_set(GroupSubset(AbelianGroup({7}), {0, 1, 2})));
    CHECK_FALSE(certify_difference_set(GroupSubset(AbelianGroup({7}), {})));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const AbelianGroup G = oracle::random_group(rng, 40);
        const auto S = oracle::random_subset(rng, G);
        const GroupSubset D(G, S);
        const std::int64_t want = oracle::ds_lambda(G, S);
        const auto got = certify_difference_set(D);
        CHECK(got.has_value() == (want >= 0));
        if (got) CHECK(*got == want);
        const auto w = difference_set_witness(D);
        CHECK(w.has_value() == (want < 0));
        if (w) {
            const auto c = oracle::difference_counts(G, S);
            CHECK(w->first != 0);
            CHECK(w->second != 0);
            CHECK(c[static_cast<std::size_t>(w->first)] != c[static_cast<std::size_t>(w->second)]);
        }
    }
}

TEST_CASE("rds certification and the fourier criterion agree with the oracle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const AbelianGroup G = oracle::random_group(rng, 36);
        const auto subs = all_subgroups(G);
        const Subgroup& H = subs[rng() % subs.size()];
        const auto S = oracle::random_subset(rng, G);
        const GroupSubset D(G, S);
        const bool want = oracle::is_rds(G, S, H.elements());
        CHECK(certify_rds(D, H).has_value() == want);
        CHECK(fourier_rds_criterion(D, H) == want);
    }
    // a known positive: {1,2,8,4} relative to {0,5,10}
    const auto p = certify_rds(GroupSubset(Z15, {1, 2, 8, 4}), Subgroup(Z15, {0, 5, 10}));
    REQUIRE(p);
    CHECK(*p == RdsParams{5, 3, 4, Rational(1)});
}

TEST_CASE("welch integer S") {
    CHECK(welch_integer_S(8, 15) == std::optional<std::int64_t>(4));
    CHECK(welch_integer_S(6, 16) == std::optional<std::int64_t>(3));
    CHECK_FALSE(welch_integer_S(3, 7));
    CHECK_THROWS_AS(welch_integer_S(0, 7), InvalidArgument);
    CHECK_THROWS_AS(welch_integer_S(7, 7), InvalidArgument);
}

TEST_CASE("singer complement for Q=2, J=2 is the Z15 example") {
    const auto s = singer_complement(2, 2);
    CHECK(s.group == Z15);
    CHECK(s.D.elements() == sorted(kZ15Set));
    CHECK(s.H.elements() == std::vector<Index>{0, 5, 10});
    CHECK(s.A.elements() == std::vector<Index>{1, 2, 4, 8});
    CHECK(s.B.elements() == std::vector<Index>{5, 10});
    CHECK(convolve(s.A.indicator(), s.B.indicator()) == s.D.indicator());
}

TEST_CASE("singer complements: sizes, factorization and slices") {
    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {5, 2}}) {
        CAPTURE(Q);
        CAPTURE(J);
        const auto s = singer_complement(Q, J);
        std::int64_t QJ = 1;
        for (int i = 0; i < J; ++i) QJ *= Q;
        CHECK(s.group.order() == (QJ * QJ - 1) / (Q - 1));
        CHECK(s.D.size() == QJ * QJ / Q);
        CHECK(s.H.order() == (QJ - 1) / (Q - 1));
        CHECK(s.A.size() == QJ);
        check_certified_ds(s.D);
        // B is a difference set inside H
        const auto counts = oracle::difference_counts(s.group, s.B.elements());
        for (const Index h : s.H.elements())
            if (h != 0) CHECK(counts[static_cast<std::size_t>(h)] == counts[static_cast<std::size_t>(s.H.elements()[1])]);
        CHECK(convolve(s.A.indicator(), s.B.indicator()) == s.D.indicator());
        for (const Index a : s.A.elements())
            for (const Index h : s.H.elements()) CHECK(s.D.contains(s.group.add(a, h)) == s.B.contains(h));
    }
    CHECK_THROWS_AS(singer_complement(2, 1), InvalidArgument);
    CHECK_THROWS_AS(singer_complement(6, 2), InvalidArgument);
}

TEST_CASE("simplicial rds from the quadratic trace") {
    for (const std::int64_t Q : {2, 3, 4, 5, 7, 8, 9}) {
        CAPTURE(Q);
        const auto s = simplicial_rds_quadratic(Q);
        CHECK(s.group.order() == Q * Q - 1);
        CHECK(s.K.order() == Q - 1);
        CHECK(s.A.size() == Q);
        CHECK(oracle::is_rds(s.group, s.A.elements(), s.K.elements()));
        for (const Index a : s.A.elements()) CHECK_FALSE(s.K.contains(a));
        const auto p = certify_rds(s.A, s.K);
        REQUIRE(p);
        CHECK(*p == RdsParams{Q + 1, Q - 1, Q, Rational(1)});
    }
    CHECK_THROWS_AS(simplicial_rds_quadratic(10), InvalidArgument);
}

TEST_CASE("twin prime power complements") {
    for (const std::int64_t Q : {3, 5, 7, 9, 11}) {
        CAPTURE(Q);
        const auto t = tpp_complement(Q);
        CHECK(t.group.order() == Q * (Q + 2));
        CHECK(t.D.size() == (Q + 1) * (Q + 1) / 2);
        CHECK(t.H.order() == Q);
        check_certified_ds(t.D);
        for (const Index h : t.H.elements()) CHECK_FALSE(t.D.contains(h));
        const std::int64_t S = *welch_integer_S(t.D.size(), t.group.order());
        CHECK(S == Q + 1);
        const bool s3_divides = (t.D.size() * t.D.size()) % (S * S * S) == 0;
        CHECK(s3_divides == (Q % 4 == 3));
    }
    CHECK(tpp_complement(27).group.cyclic_orders() == std::vector<std::int64_t>{3, 3, 3, 29});
    CHECK_THROWS_AS(tpp_complement(13), InvalidArgument);
    CHECK_THROWS_AS(tpp_complement(4), InvalidArgument);
}

TEST_CASE("mcfarland sets") {
    const auto m = mcfarland(2, 2, std::vector<std::int64_t>{2, 2});
    CHECK(m.group.cyclic_orders() == std::vector<std::int64_t>{2, 2, 2, 2});
    std::set<std::vector<std::int64_t>> got;
    for (const Index d : m.D.elements()) got.insert(m.group.residues(d));
    const std::set<std::vector<std::int64_t>> want{
        {1, 0, 0, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 0, 0}, {1, 1, 1, 1}};
    CHECK(got == want);
    std::set<std::vector<std::int64_t>> h;
    for (const Index x : m.H.elements()) h.insert(m.group.residues(x));
    CHECK(h == std::set<std::vector<std::int64_t>>{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}});

    for (const auto& [Q, J] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}, {5, 2}}) {
        CAPTURE(Q);
        CAPTURE(J);
        const auto f = mcfarland(Q, J);
        check_certified_ds(f.D);
        std::int64_t QJ1 = 1;
        for (int i = 1; i < J; ++i) QJ1 *= Q;
        const std::int64_t S = *welch_integer_S(f.D.size(), f.group.order());
        CHECK(f.D.size() == (QJ1 * Q - 1) / (Q - 1) * QJ1);
        for (const Coset& c : cosets(f.H)) {
            if (c.representative == 0) continue;
            std::int64_t hits = 0;
            for (const Index g : c.elements) hits += f.D.contains(g) ? 1 : 0;
            CHECK(hits == QJ1);
        }
        CHECK((f.D.size() * f.D.size()) % (S * S * S) != 0);
    }
    const auto m32 = mcfarland(3, 2);
    CHECK(m32.D.size() == 12);
    CHECK(m32.group.order() == 45);
    CHECK(welch_integer_S(12, 45) == std::optional<std::int64_t>(4));
    CHECK_THROWS_AS(mcfarland(2, 2, std::vector<std::int64_t>{3}), InvalidArgument);
    CHECK_THROWS_AS(mcfarland(6, 2), InvalidArgument);
}

TEST_CASE("translates and automorphisms preserve certification") {
    std::mt19937_64 rng(9);
    const std::vector<GroupSubset> seeds{singer_complement(2, 2).D, singer_complement(3, 2).D, tpp_complement(5).D,
                                         mcfarland(3, 2).D, singer_complement(2, 3).D};
    for (const GroupSubset& D : seeds) {
        const AbelianGroup& G = D.group();
        const auto lambda = certify_difference_set(D);
        REQUIRE(lambda);
        for (int t = 0; t < 5; ++t) {
            const Index shift = static_cast<Index>(rng() % static_cast<std::uint64_t>(G.order()));
            CHECK(certify_difference_set(D.translate(shift)) == lambda);
            // multiplication by k coprime to the exponent is an automorphism
            std::int64_t k = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(G.exponent()));
            while (std::gcd(k, G.exponent()) != 1) ++k;
            std::vector<Index> img;
            for (const Index d : D.elements()) img.push_back(G.scale(d, k));
            CHECK(certify_difference_set(GroupSubset(G, img)) == lambda);
        }
    }
}

TEST_CASE("quotient of an rds") {
    const auto s = simplicial_rds_quadratic(5);  // Z_24, K order 4
    const Subgroup K2 = Subgroup::generated_by(s.group, {12});
    const QuotientRds q = quotient_rds(s.A, s.K, K2);
    CHECK(q.quotient.group().order() == 12);
    CHECK(q.forbidden.order() == 2);
    CHECK(q.image.size() == 5);
    CHECK(oracle::is_rds(q.quotient.group(), q.image.elements(), q.forbidden.elements()));
    CHECK(q.params.lambda == Rational(2));
}

TEST_CASE("complement and additive orders") {
    const GroupSubset D(Z15, kZ15Set);
    const GroupSubset C = complement(D);
    CHECK(C.size() == 7);
    CHECK(oracle::ds_lambda(Z15, C.elements()) == 3);
    CHECK(additive_orders(27) == std::vector<std::int64_t>{3, 3, 3});
    CHECK(additive_orders(7) == std::vector<std::int64_t>{7});
}
