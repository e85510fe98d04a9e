#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pjones/closedform.hpp"
#include "pjones/stability.hpp"

using namespace pjones;

namespace {

Series scale_all(Series s, long k) {
    for (auto& x : s) x *= k;
    return s;
}

Series geometric(long k, std::size_t depth) {  // 1/(1-q^-k)
    Series den(static_cast<std::size_t>(k) + 1, 0);
    den[0] = 1;
    den[static_cast<std::size_t>(k)] = -1;
    return series_invert(den, depth);
}

const Series kEulerHeader{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1};

}  // namespace

TEST_CASE("euler product") {
    CHECK(euler_product(16) == kEulerHeader);
    CHECK(euler_product(1) == Series{1});
    // the finite products agree with the infinite one to depth N
    for (int N : {5, 10, 20}) {
        CanonicalSeries c = canonical_series(qfact(N, FactKind::brace).expand(),
                                             static_cast<std::size_t>(N));
        CHECK(series_eq(c.coefficients, euler_product(static_cast<std::size_t>(N)),
                        static_cast<std::size_t>(N)));
    }
}

TEST_CASE("euler pentagonal support") {
    Series e = euler_product(100);
    Series want(100, 0);
    want[0] = 1;
    for (long k = 1;; ++k) {
        long a = k * (3 * k - 1) / 2, b = k * (3 * k + 1) / 2;
        if (a >= 100 && b >= 100) break;
        long sign = (k % 2) ? -1 : 1;
        if (a < 100) want[static_cast<std::size_t>(a)] = sign;
        if (b < 100) want[static_cast<std::size_t>(b)] = sign;
    }
    CHECK(e == want);
}

TEST_CASE("one-head closed form") {
    CHECK(one_head_935(6) == Series{4, -1, -4, -3, -3, 1});
    CHECK(one_head_935(1) == Series{4});
    CHECK(one_head_935(16) == Series{4, -1, -4, -3, -3, 1, 0, 4, 3, 3, 3, 3, -1, 0, 0, -4});
    // matches the stabilized extraction
    ExtractOptions opt;
    opt.color_hi = 12;
    opt.depth = 10;
    HeadReport r = extract_khead(PretzelSpec{3, 3, 3}, 1, opt);
    CHECK(r.head == one_head_935(10));
}

TEST_CASE("classification") {
    TwoHeadCase c = classify(PretzelSpec{3, 2, 1});
    CHECK(c.n == 1);
    CHECK(c.m == 1);
    c = classify(PretzelSpec{4, 3, 3});
    CHECK(c.n == 0);
    CHECK(c.m == 3);
    c = classify(PretzelSpec{1, 1, 1});
    CHECK(c.n == 0);
    CHECK(c.m == 0);
}

TEST_CASE("correction polynomial") {
    CHECK(f_poly({0, 0}).empty());
    CHECK(f_poly({1, 0}) == Series{1, -3, -1, 2});
    CHECK(f_poly({0, 1}) == Series{1, -3, -1, 2});
    CHECK(f_poly({1, 1}) == Series{2, -6, -3, 3});
    CHECK(f_poly({0, 3}) == Series{3, -9, -6, 3});
    CHECK_THROWS_AS(f_poly({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(f_poly({-1, 0}), std::invalid_argument);
}

TEST_CASE("two-head values") {
    // (3,3,3): the golden two-head row
    Justified j = left_justify(two_head(PretzelSpec{3, 3, 3}, 14));
    CHECK(series_eq(j.series, Series{-3, 10, 5, -1, -6, -12}, 6));
    // (1,1,1): bare euler product shifted one step down
    j = left_justify(two_head(PretzelSpec{1, 1, 1}, 11));
    CHECK(j.shift == 1);
    CHECK(series_eq(j.series, euler_product(10), 10));
    // the class depends only on (n, m), not on which regions carry the twists
    CHECK(two_head(PretzelSpec{5, 3, 3}, 20) == two_head(PretzelSpec{3, 3, 3}, 20));
    CHECK(two_head(PretzelSpec{1, 2, 3}, 20) == two_head(PretzelSpec{3, 2, 1}, 20));
}

TEST_CASE("per-case numerators") {
    const std::size_t D = 20;
    struct Case {
        PretzelSpec spec;
        Series num;
    } cases[] = {
        {{3, 3, 3}, {-3, 10, 5, -4, 1}}, {{3, 3, 1}, {-2, 7, 2, -4, 1}},
        {{3, 2, 1}, {-1, 7, 1, -4, 1}},  {{2, 2, 1}, {0, 7, 0, -4, 1}},
        {{3, 1, 1}, {-1, 4, 0, -3, 1}},  {{2, 1, 1}, {0, 4, -1, -3, 1}},
        {{1, 1, 1}, {0, 1, -1, -1, 1}},
    };
    Series g1 = geometric(1, D), g2 = geometric(2, D);
    Series e = euler_product(D);
    for (const auto& [spec, num] : cases) {
        Series rhs = series_mul(series_mul(e, series_trunc(num, D), D),
                                series_mul(g1, g2, D), D);
        CHECK(two_head(spec, D) == rhs);

        // the numerator itself decomposes as q^-1(1-q^-1)(1-q^-2) + n(1-q^-2) - f
        TwoHeadCase c = classify(spec);
        Series want{0, 1, -1, -1, 1};  // q^-1(1-q^-1)(1-q^-2)
        want = series_add(want, scale_all(Series{1, 0, -1}, c.n));
        want = series_sub(want, f_poly(c));
        CHECK(series_eq(series_trunc(num, 5), want, 5));
    }
}

TEST_CASE("two-head changes by one euler-geometric step across classes") {
    const std::size_t D = 20;
    Series eg1 = series_mul(euler_product(D), geometric(1, D), D);
    // raising n by one at fixed n+m adds E/(1-q^-1)
    struct Pair {
        PretzelSpec hi, lo;
    } pairs[] = {
        {{3, 2, 1}, {3, 3, 1}},  // (1,1) vs (0,2)
        {{2, 2, 1}, {3, 2, 1}},  // (2,0) vs (1,1)
        {{3, 3, 2}, {3, 3, 3}},  // (1,2) vs (0,3)
        {{2, 2, 3}, {3, 3, 2}},  // (2,1) vs (1,2)
        {{2, 1, 1}, {3, 1, 1}},  // (1,0) vs (0,1)
    };
    for (const auto& [hi, lo] : pairs)
        CHECK(series_sub(two_head(hi, D), two_head(lo, D)) == eg1);
}

TEST_CASE("identity names round trip") {
    const char* names[] = {"L2.1", "L2.3a", "L2.3b", "L2.4a", "L2.4b",
                           "L3.1", "L3.2", "L3.3", "L3.4", "Eq3.2chain"};
    for (const char* n : names) CHECK(lemma_name(lemma_id(n)) == n);
    CHECK_THROWS_AS(lemma_id("L9.9"), std::invalid_argument);
}

TEST_CASE("factorial expansions at a spot value") {
    int N = 6;
    std::size_t D = 19;  // 3N+1
    CanonicalSeries f12 = canonical_series(qfact(12, FactKind::brace).expand(), D);
    CHECK(series_eq(f12.coefficients, lemma_rhs(LemmaId::L23a, N, D), D));
    Series sq = series_mul(f12.coefficients, f12.coefficients, D);
    CHECK(series_eq(sq, lemma_rhs(LemmaId::L23b, N, D), D));
    CanonicalSeries f19 = canonical_series(qfact(19, FactKind::brace).expand(), D);
    CHECK(series_eq(f19.coefficients, lemma_rhs(LemmaId::L24a, N, D), D));
    CanonicalSeries f18 = canonical_series(qfact(18, FactKind::brace).expand(), D);
    CHECK(series_eq(f18.coefficients, lemma_rhs(LemmaId::L24b, N, D), D));
}

TEST_CASE("summand expansion spot value") {
    int N = 6;
    std::size_t D = 12;  // 2N
    auto f = normalized_summand_fraction({N, N - 1, N, N}, PretzelSpec{3, 3, 3});
    REQUIRE(f.has_value());
    CHECK(series_eq(fraction_qseries(*f, D), lemma_rhs(LemmaId::L31, N, D), D));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(lemma_rhs(LemmaId::L33, 3, 5), IndexOutOfRange);
    CHECK_THROWS_AS(lemma_rhs(LemmaId::L32, 1, 5), IndexOutOfRange);
    CHECK_THROWS_AS(lemma_rhs(LemmaId::L34, 1, 5), IndexOutOfRange);
    CHECK_THROWS_AS(lemma_rhs(LemmaId::L21, 0, 5), IndexOutOfRange);
}

TEST_CASE("construction depth does not leak into retained prefix") {
    // every builder is prefix-exact: computing deeper never changes a prefix
    for (std::size_t d : {1u, 3u, 7u}) {
        CHECK(series_trunc(euler_product(d + 4), d) == euler_product(d));
        CHECK(series_trunc(one_head_935(d + 4), d) == one_head_935(d));
        CHECK(series_trunc(two_head(PretzelSpec{3, 2, 1}, d + 4), d) ==
              two_head(PretzelSpec{3, 2, 1}, d));
        CHECK(series_trunc(lemma_rhs(LemmaId::L24a, 3, d + 4), d) ==
              lemma_rhs(LemmaId::L24a, 3, d));
    }
}

TEST_CASE("identity suite passes") {
    auto results = lemma_suite(6);
    CHECK(results.size() == 11);
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("family representatives") {
    const auto& reps = family_representatives();
    CHECK(reps.size() == 11);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t k = i + 1; k < reps.size(); ++k) CHECK(!(reps[i] == reps[k]));
    CHECK(std::find(reps.begin(), reps.end(), PretzelSpec{3, 3, 3}) != reps.end());
    CHECK(std::find(reps.begin(), reps.end(), PretzelSpec{1, 1, 1}) != reps.end());
}

TEST_CASE("theorem check on the simplest knot") {
    TheoremCheck tc = verify_two_head(PretzelSpec{1, 1, 1}, 4);
    CHECK(tc.pass);
    CHECK(tc.depth == 4);
    CHECK(tc.report.order == 2);
    CHECK(tc.report.head == euler_product(4));
}
