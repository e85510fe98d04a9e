#include "pjones/qcalc.hpp"

#include <algorithm>
#include <cstdlib>

namespace pjones {

const LaurentPoly& qbracket(int n) {
    thread_local std::vector<LaurentPoly> cache;
    if (n < 0) throw std::invalid_argument("qbracket of negative index");
    while (static_cast<int>(cache.size()) <= n) {
        int k = static_cast<int>(cache.size());
        LaurentPoly b;
        for (int t = 0; t < k; ++t) b.add_term(1, 2 * k - 2 - 4 * t);
        cache.push_back(std::move(b));
    }
    return cache[n];
}

LaurentPoly qbrace(long n) {
    LaurentPoly p;
    p.add_term(1, 2 * n);
    p.add_term(-1, -2 * n);
    return p;  // {0} = 0 falls out of add_term cancellation
}

LaurentPoly delta(int n) {
    LaurentPoly d = qbracket(n + 1);
    if (n % 2) d = -d;
    return d;
}

bool admissible(int a, int b, int c) {
    return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && std::abs(a - b) <= c &&
           c <= a + b;
}

AdmissibleTriple::AdmissibleTriple(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {
    if (!admissible(a, b, c))
        throw InadmissibleTriple("inadmissible triple (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) + ")");
    i = (b + c - a) / 2;
    j = (a + c - b) / 2;
    k = (a + b - c) / 2;
}

FactoredScalar qfact(int n, FactKind kind) {
    FactoredScalar f;
    switch (kind) {
        case FactKind::bracket:
            f.mul_bracket_fact(n, 1);
            break;
        case FactKind::brace:  // {n}! = [n]! {1}^n
            f.mul_bracket_fact(n, 1);
            f.one_power = n;
            break;
        case FactKind::delta:  // Delta_n! = (-1)^(n(n+1)/2) [n+1]!/[1]!
            f.mul_bracket_fact(n + 1, 1);
            if ((n * (n + 1) / 2) % 2) f.sign = -1;
            break;
    }
    return f;
}

FactoredScalar theta(const AdmissibleTriple& t) {
    FactoredScalar f;
    f.sign = ((t.i + t.j + t.k) % 2) ? -1 : 1;
    f.mul_bracket_fact(t.i + t.j + t.k + 1, 1);
    f.mul_bracket_fact(t.i, 1);
    f.mul_bracket_fact(t.j, 1);
    f.mul_bracket_fact(t.k, 1);
    f.mul_bracket_fact(t.i + t.j, -1);
    f.mul_bracket_fact(t.j + t.k, -1);
    f.mul_bracket_fact(t.i + t.k, -1);
    return f;
}

FactoredScalar theta(int a, int b, int c) { return theta(AdmissibleTriple(a, b, c)); }

LaurentPoly gamma_twist(int a, int b, int c) {
    AdmissibleTriple t(a, b, c);
    long num = 2L * (a + b - c) + (1L * a * a + 1L * b * b - 1L * c * c);
    if (num % 2 != 0) throw std::logic_error("non-integer gamma exponent");
    return LaurentPoly::monomial((t.k % 2) ? -1 : 1, num / 2);
}

LaurentPoly den_expand(const std::map<int, int>& den) {
    LaurentPoly r = LaurentPoly::one();
    for (auto& [k, m] : den) r = r * pow(qbracket(k), m);
    return r;
}

void fraction_reduce(QFraction& f) {
    for (auto it = f.den.begin(); it != f.den.end();) {
        while (it->second > 0) {
            try {
                f.num = exact_div(f.num, qbracket(it->first));
            } catch (const NonExactDivision&) {
                break;
            }
            --it->second;
        }
        it = it->second == 0 ? f.den.erase(it) : std::next(it);
    }
}

QFraction fraction_mul(const QFraction& a, const QFraction& b) {
    QFraction r{a.num * b.num, a.den};
    for (auto& [k, m] : b.den) r.den[k] += m;
    return r;
}

LaurentPoly fraction_expand(const QFraction& f) {
    LaurentPoly r = f.num;
    for (auto& [k, m] : f.den) r = exact_div(r, pow(qbracket(k), m));
    return r;
}

bool fraction_equal(const QFraction& a, const QFraction& b) {
    return a.num * den_expand(b.den) == b.num * den_expand(a.den);
}

long max_q_degree(const QFraction& f) {
    long e = f.num.min_exp();
    for (auto& [k, m] : f.den) e += static_cast<long>(m) * (2 * k - 2);
    return -e / 4;
}

namespace {

// Bracket-multiplicity bookkeeping for factorial ratios.
using BMap = std::map<int, int>;

void bm_fact(BMap& b, int n, int m) {
    for (int k = 2; k <= n; ++k) {
        b[k] += m;
        if (b[k] == 0) b.erase(k);
    }
}

LaurentPoly bm_expand(const BMap& b) {
    LaurentPoly r = LaurentPoly::one();
    for (auto& [k, m] : b) r = r * pow(qbracket(k), m);
    return r;
}

}  // namespace

QFraction tet_fraction(int a, int b, int e, int c, int d, int f) {
    for (auto [x, y, z] : {std::array{a, d, e}, {b, c, e}, {a, b, f}, {c, d, f}})
        if (!admissible(x, y, z))
            throw InadmissibleTriple("tet vertex (" + std::to_string(x) + "," +
                                     std::to_string(y) + "," + std::to_string(z) + ")");
    const int av[4] = {(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2};
    const int bv[3] = {(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2};
    const int lo = *std::max_element(av, av + 4);
    const int hi = *std::min_element(bv, bv + 3);

    BMap pref;
    for (int ai : av)
        for (int bj : bv) bm_fact(pref, bj - ai, 1);
    for (int edge : {a, b, c, d, e, f}) bm_fact(pref, edge, -1);

    std::vector<BMap> terms;
    for (int s = lo; s <= hi; ++s) {
        BMap t = pref;
        bm_fact(t, s + 1, 1);
        for (int ai : av) bm_fact(t, s - ai, -1);
        for (int bj : bv) bm_fact(t, bj - s, -1);
        terms.push_back(std::move(t));
    }

    // Factor out the per-bracket minimum multiplicity, expand the (all
    // positive) remainders, and alternate-sum them.
    BMap common;
    for (auto& t : terms)
        for (auto& [k, m] : t) common.try_emplace(k, 0);
    for (auto& [k, mn] : common) {
        int m = 0;
        bool first = true;
        for (auto& t : terms) {
            auto it = t.find(k);
            int v = it == t.end() ? 0 : it->second;
            m = first ? v : std::min(m, v);
            first = false;
        }
        mn = m;
    }
    for (auto it = common.begin(); it != common.end();)
        it = it->second == 0 ? common.erase(it) : std::next(it);

    LaurentPoly total;
    for (std::size_t idx = 0; idx < terms.size(); ++idx) {
        BMap rest = terms[idx];
        for (auto& [k, cm] : common) {
            rest[k] -= cm;
            if (rest[k] == 0) rest.erase(k);
        }
        LaurentPoly t = bm_expand(rest);
        if ((lo + static_cast<int>(idx)) % 2) t = -t;
        total += t;
    }

    QFraction out;
    out.num = std::move(total);
    for (auto& [k, m] : common) {
        if (m > 0)
            out.num = out.num * pow(qbracket(k), m);
        else
            out.den[k] = -m;
    }
    fraction_reduce(out);
    return out;
}

LaurentPoly tet(int a, int b, int e, int c, int d, int f) {
    return fraction_expand(tet_fraction(a, b, e, c, d, f));
}

mpq_class classical_tet(int a, int b, int e, int c, int d, int f) {
    auto fact = [](int n) {
        mpz_class r = 1;
        for (int k = 2; k <= n; ++k) r *= k;
        return r;
    };
    const int av[4] = {(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2};
    const int bv[3] = {(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2};
    const int lo = *std::max_element(av, av + 4);
    const int hi = *std::min_element(bv, bv + 3);
    mpq_class pref = 1;
    for (int ai : av)
        for (int bj : bv) pref *= mpq_class(fact(bj - ai));
    for (int edge : {a, b, c, d, e, f}) pref /= mpq_class(fact(edge));
    mpq_class sum = 0;
    for (int s = lo; s <= hi; ++s) {
        mpq_class t(fact(s + 1));
        for (int ai : av) t /= mpq_class(fact(s - ai));
        for (int bj : bv) t /= mpq_class(fact(bj - s));
        sum += (s % 2) ? -t : t;
    }
    mpq_class r = pref * sum;
    r.canonicalize();
    return r;
}

mpq_class fraction_eval_one(const QFraction& f) {
    mpq_class r(f.num.eval_one());
    for (auto& [k, m] : f.den)
        for (int i = 0; i < m; ++i) r /= k;
    r.canonicalize();
    return r;
}

}  // namespace pjones
