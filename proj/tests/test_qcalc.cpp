#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "pjones/qcalc.hpp"

using namespace pjones;

namespace {

LaurentPoly from_terms(std::initializer_list<std::pair<long, long>> ts) {
    LaurentPoly p;
    for (auto [e, c] : ts) p.add_term(Int(c), e);
    return p;
}

QFraction to_fraction(const FactoredScalar& s) {
    REQUIRE(s.one_power >= 0);
    QFraction f{LaurentPoly::monomial(s.sign, s.mono), {}};
    for (auto [k, m] : s.brackets) {
        if (m > 0)
            for (int t = 0; t < m; ++t) f.num = f.num * qbracket(k);
        else
            f.den[k] -= m;
    }
    for (int t = 0; t < s.one_power; ++t) f.num = f.num * qbrace(1);
    return f;
}

// classical alternating-sum tet with [n] -> n, independent of the library's
// own classical_tet
mpq_class plain_tet(int a, int b, int e, int c, int d, int f) {
    auto fact = [](int n) {
        mpz_class r = 1;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    int v[4][3] = {{a, d, e}, {b, c, e}, {a, b, f}, {c, d, f}};
    int sq[3][2] = {{a, c}, {b, d}, {e, f}};
    std::vector<int> T, Q;
    for (auto& t : v) T.push_back((t[0] + t[1] + t[2]) / 2);
    for (auto& s : sq) Q.push_back((a + b + c + d + e + f - s[0] - s[1]) / 2);
    int lo = *std::max_element(T.begin(), T.end());
    int hi = *std::min_element(Q.begin(), Q.end());
    mpq_class interior(0);
    for (int s = lo; s <= hi; ++s) {
        mpq_class term(fact(s + 1));
        for (int t : T) term /= fact(s - t);
        for (int q : Q) term /= fact(q - s);
        if ((s % 2) != 0) term = -term;
        interior += term;
    }
    mpq_class ext(1);
    for (int t : T)
        for (int q : Q) ext *= fact(q - t);
    for (int edge : {a, b, c, d, e, f}) ext /= fact(edge);
    return ext * interior;
}

}  // namespace

TEST_CASE("quantum integers") {
    CHECK(qbracket(1) == LaurentPoly::one());
    CHECK(qbracket(2) == from_terms({{2, 1}, {-2, 1}}));
    CHECK(qbracket(0).is_zero());
    for (int n = 1; n <= 20; ++n) CHECK(qbracket(n).eval_one() == n);
}

TEST_CASE("braces") {
    CHECK(qbrace(0).is_zero());
    CHECK(qbrace(1) == from_terms({{2, 1}, {-2, -1}}));
    for (int n = 1; n <= 10; ++n) CHECK(qbrace(-n) == -qbrace(n));
    for (int n = 0; n <= 30; ++n) CHECK(qbrace(n) == qbracket(n) * qbrace(1));
}

TEST_CASE("factorials") {
    CHECK(qfact(0, FactKind::bracket).expand() == LaurentPoly::one());
    CHECK(qfact(3, FactKind::bracket).expand() == qbracket(3) * qbracket(2));
    for (int n = 1; n <= 8; ++n) {
        LaurentPoly prod = LaurentPoly::one();
        for (int i = 1; i <= n; ++i) prod = prod * delta(i);
        CHECK(qfact(n, FactKind::delta).expand() == prod);
        LaurentPoly bprod = LaurentPoly::one();
        for (int i = 1; i <= n; ++i) bprod = bprod * qbrace(i);
        CHECK(qfact(n, FactKind::brace).expand() == bprod);
    }
}

TEST_CASE("loop values") {
    CHECK(delta(0) == LaurentPoly::one());
    CHECK(delta(1) == from_terms({{2, -1}, {-2, -1}}));
    CHECK(delta(2) == from_terms({{4, 1}, {0, 1}, {-4, 1}}));
}

TEST_CASE("admissibility") {
    CHECK(admissible(1, 1, 2));
    CHECK(admissible(0, 0, 0));
    CHECK_FALSE(admissible(1, 1, 1));  // odd sum
    CHECK_FALSE(admissible(1, 1, 3));  // triangle violation
    AdmissibleTriple t(2, 4, 2);
    CHECK(t.i == 2);
    CHECK(t.j == 0);
    CHECK(t.k == 2);
    CHECK_THROWS_AS(AdmissibleTriple(1, 1, 3), InadmissibleTriple);
}

TEST_CASE("theta anchors") {
    CHECK(theta(0, 0, 0).expand() == LaurentPoly::one());
    CHECK(theta(1, 1, 2).expand() == qbracket(3));
    for (int n = 1; n <= 8; ++n) CHECK(theta(n, n, 0).expand() == delta(n));
    CHECK_THROWS_AS(theta(1, 1, 1), InadmissibleTriple);
}

TEST_CASE("theta symmetry") {
    for (int a = 0; a <= 12; ++a)
        for (int b = a; b <= 12; ++b)
            for (int c = b; c <= 12; ++c) {
                if (!admissible(a, b, c)) continue;
                QFraction ref = to_fraction(theta(a, b, c));
                CHECK(fraction_equal(to_fraction(theta(b, a, c)), ref));
                CHECK(fraction_equal(to_fraction(theta(c, b, a)), ref));
                CHECK(fraction_equal(to_fraction(theta(a, c, b)), ref));
            }
}

TEST_CASE("twist coefficient") {
    CHECK(gamma_twist(1, 1, 0) == LaurentPoly::monomial(-1, 3));
    CHECK(gamma_twist(1, 1, 2) == LaurentPoly::monomial(1, -1));
    CHECK(gamma_twist(2, 2, 4) == LaurentPoly::monomial(1, -4));
    for (int n = 1; n <= 12; ++n)
        CHECK(gamma_twist(n, n, 2 * n) == LaurentPoly::monomial(1, -long(n) * n));
}

TEST_CASE("tet edge zero degenerates to theta") {
    // f = 0 forces a = b and c = d; the network collapses to theta(a, c, e)
    struct Case {
        int x, y, e;
    } cases[] = {{1, 1, 2}, {2, 2, 2}, {1, 3, 2}, {2, 2, 4}, {3, 3, 0}};
    for (auto [x, y, e] : cases) {
        REQUIRE(admissible(x, y, e));
        QFraction t = tet_fraction(x, x, e, y, y, 0);
        CHECK(fraction_equal(t, to_fraction(theta(x, y, e))));
    }
}

TEST_CASE("tet tetrahedral symmetry") {
    struct Six {
        int a, b, e, c, d, f;
    } cols[] = {{1, 1, 2, 1, 1, 2}, {2, 2, 2, 2, 2, 2}, {3, 3, 2, 3, 3, 2},
                {2, 1, 1, 2, 1, 1}, {2, 2, 4, 2, 2, 2}, {4, 2, 2, 2, 4, 2}};
    for (auto [a, b, e, c, d, f] : cols) {
        QFraction ref = tet_fraction(a, b, e, c, d, f);
        // column swaps of the symbol [[a,b,e],[c,d,f]]
        CHECK(fraction_equal(ref, tet_fraction(b, a, e, d, c, f)));
        CHECK(fraction_equal(ref, tet_fraction(a, e, b, c, f, d)));
        // row exchanges in two columns at once
        CHECK(fraction_equal(ref, tet_fraction(c, d, e, a, b, f)));
        CHECK(fraction_equal(ref, tet_fraction(a, d, f, c, b, e)));
    }
}

TEST_CASE("tet rational value") {
    // tet(1,1,2,1,1,2) = [3]/[2]: genuinely non-polynomial
    QFraction t = tet_fraction(1, 1, 2, 1, 1, 2);
    QFraction expect{qbracket(3), {{2, 1}}};
    CHECK(fraction_equal(t, expect));
    CHECK_THROWS_AS(tet(1, 1, 2, 1, 1, 2), NonExactDivision);
    CHECK_THROWS_AS(tet(2, 2, 2, 2, 2, 2), NonExactDivision);
    // f = 0 instance collapses to theta(1,1,2) = [3]: polynomial path works
    CHECK(tet(1, 1, 2, 1, 1, 0) == qbracket(3));
}

TEST_CASE("tet classical limit") {
    struct Six {
        int a, b, e, c, d, f;
    } cols[] = {{1, 1, 2, 1, 1, 2}, {2, 2, 2, 2, 2, 2}, {3, 3, 2, 3, 3, 2}};
    for (auto [a, b, e, c, d, f] : cols) {
        mpq_class expect = plain_tet(a, b, e, c, d, f);
        CHECK(classical_tet(a, b, e, c, d, f) == expect);
        CHECK(fraction_eval_one(tet_fraction(a, b, e, c, d, f)) == expect);
    }
}

TEST_CASE("fraction arithmetic") {
    QFraction a{qbracket(3), {{2, 2}}};
    QFraction b{qbracket(2) * qbracket(2), {{3, 1}}};
    QFraction ab = fraction_mul(a, b);
    CHECK(fraction_eval_one(a) == mpq_class(3, 4));
    CHECK(fraction_eval_one(ab) == 1);
    QFraction r = ab;
    fraction_reduce(r);
    CHECK(fraction_equal(r, ab));
    CHECK(r.den.empty());  // everything cancels: [3][2]^2 / ([2]^2[3])
    CHECK(fraction_expand(ab) == LaurentPoly::one());
    CHECK(den_expand(a.den) == qbracket(2) * qbracket(2));
}

TEST_CASE("max q degree") {
    // {1} = A^2 - A^-2: top q-power is 1/2... the grid is A^4 = q^-1 measured
    // from the A side, so check against directly constructed monomials
    QFraction m{LaurentPoly::monomial(1, -8), {}};
    CHECK(max_q_degree(m) == 2);
    QFraction frac{LaurentPoly::monomial(1, -8), {{3, 1}}};  // dividing by [3] costs one q
    CHECK(max_q_degree(frac) == 2 - 1);
    // agrees with the expanded value whenever the quotient clears
    QFraction t = tet_fraction(1, 1, 2, 1, 1, 0);
    LaurentPoly v = fraction_expand(t);
    CHECK(max_q_degree(t) == -v.min_exp() / 4);
}
