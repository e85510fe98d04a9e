#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pjones/closedform.hpp"
#include "pjones/stability.hpp"

using namespace pjones;

namespace {

LaurentPoly from_terms(std::initializer_list<std::pair<long, long>> ts) {
    LaurentPoly p;
    for (auto [e, c] : ts) p.add_term(Int(c), e);
    return p;
}

}  // namespace

TEST_CASE("series arithmetic") {
    Series a{1, 2, 3}, b{4, 0, -3, 1};
    CHECK(series_add(a, b) == Series{5, 2, 0, 1});
    CHECK(series_sub(b, a) == Series{3, -2, -6, 1});
    CHECK(series_shift(Series{4, -1}, 2) == Series{0, 0, 4, -1});
    CHECK(series_trunc(b, 2) == Series{4, 0});
    CHECK(series_trunc(a, 5) == Series{1, 2, 3, 0, 0});
    CHECK(series_mul(Series{1, 1}, Series{1, -1}, 4) == Series{1, 0, -1, 0});
    CHECK(series_eq(a, Series{1, 2, 3, 0}, 4));
    CHECK(series_eq(a, Series{1, 2}, 2));
    CHECK_FALSE(series_eq(a, Series{1, 2}, 3));
}

TEST_CASE("series inversion") {
    // 1/(1 - q^-1) = 1 + q^-1 + q^-2 + ...
    CHECK(series_invert(Series{1, -1}, 5) == Series{1, 1, 1, 1, 1});
    Series g{1, -1};
    Series prod = series_mul(series_invert(g, 8), g, 8);
    CHECK(prod == series_trunc(Series{1}, 8));
    // leading -1 works too
    Series h{-1, 2, 5};
    prod = series_mul(series_invert(h, 8), h, 8);
    CHECK(prod == series_trunc(Series{1}, 8));
    CHECK_THROWS_AS(series_invert(Series{2, 1}, 3), NonUnitLeading);
    CHECK_THROWS_AS(series_invert(Series{}, 3), NonUnitLeading);
}

TEST_CASE("left justify") {
    Justified j = left_justify(Series{0, 0, 4, -4, 3});
    CHECK(j.series == Series{4, -4, 3});
    CHECK(j.shift == 2);
    j = left_justify(Series{1});
    CHECK(j.series == Series{1});
    CHECK(j.shift == 0);
    CHECK_THROWS_AS(left_justify(Series{0, 0, 0}), AllZero);
    CHECK_THROWS_AS(left_justify(Series{}), AllZero);
}

TEST_CASE("canonical series") {
    LaurentPoly p = from_terms({{8, 1}, {4, 2}, {-4, -1}});
    CHECK(canonical_series(p, 4).coefficients == Series{1, 2, 0, -1});
    CHECK(canonical_series(p, 3).coefficients == Series{1, 2, 0});
    CHECK(canonical_series(p, 6).coefficients == Series{1, 2, 0, -1, 0, 0});
    // sign-normalized
    CHECK(canonical_series(-p, 4).coefficients == Series{1, 2, 0, -1});
    // off-lattice spacing is a caller bug, not data
    CHECK_THROWS_AS(canonical_series(from_terms({{1, 1}, {-1, 1}}), 2), std::logic_error);
    CHECK_THROWS_AS(canonical_series(LaurentPoly(), 2), ZeroPolynomial);
}

TEST_CASE("depth-n comparison") {
    LaurentPoly p = from_terms({{8, 1}, {4, 2}, {0, 7}});
    LaurentPoly q = p * LaurentPoly::monomial(-1, 12);  // -q^3 p
    CHECK(approx_eq(p, q, 3));
    LaurentPoly r = from_terms({{0, 1}, {-4, 1}});   // 1 + q^-1
    LaurentPoly s = from_terms({{0, 1}, {-4, -1}});  // 1 - q^-1
    CHECK(approx_eq(r, s, 1));
    CHECK_FALSE(approx_eq(r, s, 2));
    // equivalence relation on a small sample
    LaurentPoly parts[3] = {p, q, p * LaurentPoly::monomial(2, -4)};
    for (auto& x : parts) CHECK(approx_eq(x, x, 3));
    CHECK(approx_eq(q, p, 3));
    for (auto& x : parts)
        for (auto& y : parts)
            if (approx_eq(parts[0], x, 2) && approx_eq(x, y, 2)) CHECK(approx_eq(parts[0], y, 2));
}

TEST_CASE("consecutive colors stabilize") {
    PretzelSpec spec{3, 3, 3};
    LaurentPoly j3 = normalized_colored_jones(3, spec);
    LaurentPoly j4 = normalized_colored_jones(4, spec);
    CHECK(approx_eq(j3, j4, 3));
    CHECK_FALSE(approx_eq(j3, j4, 4));
}

TEST_CASE("order zero head is the euler product") {
    ExtractOptions opt;
    opt.color_hi = 7;
    opt.depth = 6;
    HeadReport r = extract_khead(PretzelSpec{3, 2, 1}, 0, opt);
    CHECK(r.head == euler_product(6));
    CHECK(r.order == 0);
    for (auto& e : r.certificate) CHECK(e.shift == 0);
}

TEST_CASE("order one head") {
    ExtractOptions opt;
    opt.depth = 6;
    HeadReport r = extract_khead(PretzelSpec{3, 3, 3}, 1, opt);
    CHECK(r.head == Series{4, -1, -4, -3, -3, 1});
    // residual rows at color c start with exactly c zeros before justification
    for (auto& e : r.certificate) CHECK(e.shift == e.color);
    // stabilized neighbours agree at least to color-2 entries
    for (std::size_t i = 1; i < r.certificate.size(); ++i) {
        long cap = static_cast<long>(std::min(r.rows[i].size(), r.rows[i - 1].size()));
        CHECK(r.certificate[i].agreement >= std::min<long>(r.certificate[i].color - 2, cap));
    }
}

TEST_CASE("order two head with closed one-head") {
    ExtractOptions opt;
    opt.color_hi = 8;
    opt.depth = 6;
    opt.head1 = one_head_935(40);
    HeadReport r = extract_khead(PretzelSpec{3, 3, 3}, 2, opt);
    CHECK(r.head == Series{-3, 10, 5, -1, -6, -12});
    // cumulative shifts climb with slope 2 (one extra zero block per order)
    for (std::size_t i = 0; i < r.certificate.size(); ++i)
        CHECK(r.certificate[i].shift == 2 * r.certificate[i].color - 1);
}

TEST_CASE("head is range independent") {
    ExtractOptions a, b;
    a.color_lo = 2;
    a.color_hi = 8;
    b.color_lo = 3;
    b.color_hi = 9;
    a.depth = b.depth = 5;
    CHECK(extract_khead(PretzelSpec{3, 3, 3}, 1, a).head ==
          extract_khead(PretzelSpec{3, 3, 3}, 1, b).head);
}

TEST_CASE("not stabilized") {
    ExtractOptions opt;
    opt.color_hi = 6;
    opt.depth = 10;  // consensus cannot reach depth 10 from colors <= 6
    try {
        extract_khead(PretzelSpec{3, 3, 3}, 1, opt);
        FAIL("expected NotStabilized");
    } catch (const NotStabilized& e) {
        CHECK(e.color >= 2);
        CHECK(e.color <= 6);
    }
    ExtractOptions o2;
    o2.color_hi = 9;
    o2.depth = 8;  // empirical order-2 consensus needs colors up to 2*8+4
    CHECK_THROWS_AS(extract_khead(PretzelSpec{3, 3, 3}, 2, o2), NotStabilized);
}

TEST_CASE("report serialization") {
    ExtractOptions opt;
    opt.depth = 4;
    opt.color_hi = 6;
    HeadReport r = extract_khead(PretzelSpec{2, 2, 2}, 1, opt);
    nlohmann::json j = to_json(r);
    CHECK(j.at("spec") == "2,2,2");
    CHECK(j.at("order") == 1);
    CHECK(j.at("colors") == nlohmann::json({2, 6}));
    CHECK(j.at("coefficients").size() == 4);
    CHECK(j.at("shifts").size() == j.at("rows").size());
    CHECK(j.at("windows").size() == j.at("rows").size());
    CHECK(j.at("agreements").front() == 0);
    for (std::size_t i = 0; i < r.head.size(); ++i)
        CHECK(j.at("coefficients")[i] == r.head[i].get_str());
}
