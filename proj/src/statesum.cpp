#include "pjones/statesum.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pjones {

int PretzelSpec::count_exactly_two() const {
    return (m1 == 2) + (m2 == 2) + (m3 == 2);
}
int PretzelSpec::count_at_least_three() const {
    return (m1 >= 3) + (m2 >= 3) + (m3 >= 3);
}
int PretzelSpec::count_ones() const { return (m1 == 1) + (m2 == 1) + (m3 == 1); }

PretzelSpec PretzelSpec::parse(const std::string& text) {
    PretzelSpec s;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> s.m1 >> c1 >> s.m2 >> c2 >> s.m3) || c1 != ',' || c2 != ',' ||
        !is.eof() || s.m1 < 1 || s.m2 < 1 || s.m3 < 1)
        throw std::invalid_argument("pretzel spec must be m1,m2,m3 with each mi >= 1");
    return s;
}

std::string PretzelSpec::str() const {
    return std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(m3);
}

namespace {

// Gamma_j * prod_i Delta_{2ji}/theta(N,N,2ji), the spec-independent part of a
// summand.  Symmetric in (j1,j2,j3), so keyed on the sorted triple; nullopt
// marks inadmissible triples.
std::optional<QFraction> gamma_ratio_compute(int N, int j1, int j2, int j3) {
    if (!admissible(2 * j1, 2 * j2, 2 * j3)) return std::nullopt;
    QFraction tf = tet_fraction(2 * j1, 2 * j2, N, N, N, 2 * j3);
    QFraction g;
    g.num = tf.num * tf.num;
    for (auto& [k, m] : tf.den) g.den[k] = 2 * m;

    int sign = 1;
    std::map<int, int> extra;  // net numerator bracket multiplicities
    auto divide_theta = [&](int a, int b, int c) {
        FactoredScalar th = theta(a, b, c);
        sign *= th.sign;
        for (auto& [k, m] : th.brackets) {
            extra[k] -= m;
            if (extra[k] == 0) extra.erase(k);
        }
    };
    divide_theta(2 * j1, 2 * j2, 2 * j3);
    for (int j : {j1, j2, j3}) {
        extra[2 * j + 1] += 1;  // Delta_{2j} = [2j+1]
        if (extra[2 * j + 1] == 0) extra.erase(2 * j + 1);
        divide_theta(N, N, 2 * j);
    }
    for (auto& [k, m] : g.den) extra[k] -= m;
    g.den.clear();
    for (auto& [k, m] : extra) {
        if (m > 0)
            g.num = g.num * pow(qbracket(k), m);
        else if (m < 0)
            g.den[k] = -m;
    }
    fraction_reduce(g);
    if (sign < 0) g.num = -g.num;
    return g;
}

using GKey = std::tuple<int, int, int, int>;  // N, sorted j-triple

std::map<GKey, std::optional<QFraction>> g_gamma_cache;
std::mutex g_gamma_mutex;

GKey make_key(int N, int j1, int j2, int j3) {
    std::array<int, 3> js{j1, j2, j3};
    std::sort(js.begin(), js.end());
    return {N, js[0], js[1], js[2]};
}

// Compute-and-insert all sorted triples for this N that are not cached yet.
void fill_gamma_cache(int N, int jobs) {
    std::vector<GKey> missing;
    {
        std::lock_guard lock(g_gamma_mutex);
        for (int j1 = 0; j1 <= N; ++j1)
            for (int j2 = j1; j2 <= N; ++j2)
                for (int j3 = j2; j3 <= N; ++j3)
                    if (!g_gamma_cache.count({N, j1, j2, j3}))
                        missing.push_back({N, j1, j2, j3});
    }
    if (missing.empty()) return;
    std::vector<std::optional<QFraction>> results(missing.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
    for (long i = 0; i < static_cast<long>(missing.size()); ++i) {
        auto [n, a, b, c] = missing[i];
        results[i] = gamma_ratio_compute(n, a, b, c);
    }
    std::lock_guard lock(g_gamma_mutex);
    for (std::size_t i = 0; i < missing.size(); ++i)
        g_gamma_cache.emplace(missing[i], std::move(results[i]));
}

std::optional<QFraction> gamma_ratio_cached(int N, int j1, int j2, int j3) {
    GKey key = make_key(N, j1, j2, j3);
    {
        std::lock_guard lock(g_gamma_mutex);
        auto it = g_gamma_cache.find(key);
        if (it != g_gamma_cache.end()) return it->second;
    }
    auto [n, a, b, c] = key;
    auto r = gamma_ratio_compute(n, a, b, c);
    std::lock_guard lock(g_gamma_mutex);
    return g_gamma_cache.emplace(key, std::move(r)).first->second;
}

// Twist monomials: each region contributes the A -> 1/A conjugate of
// gamma_twist(N,N,2j) per half-twist (convention frozen against the golden
// tables and the Temperley-Lieb oracle).
std::optional<QFraction> assemble_summand(const std::optional<QFraction>& gr,
                                          const SummandIndex& idx,
                                          const PretzelSpec& spec) {
    if (!gr) return std::nullopt;
    QFraction s = *gr;
    long shift = 0;
    int sign = 1;
    const int js[3] = {idx.j1, idx.j2, idx.j3};
    const auto ms = spec.ms();
    for (int i = 0; i < 3; ++i) {
        LaurentPoly g = gamma_twist(idx.N, idx.N, 2 * js[i]);
        long e = g.max_exp();
        bool neg = g.coeff(e) < 0;
        shift += -e * ms[i];  // conjugated exponent
        if (neg && (ms[i] & 1)) sign = -sign;
    }
    s.num.mul_monomial(sign, shift);
    return s;
}

void check_index(const SummandIndex& idx) {
    for (int j : {idx.j1, idx.j2, idx.j3})
        if (j < 0 || j > idx.N) throw std::invalid_argument("fusion index out of range");
}

// Sum of the conjugated twist monomials over the distinct assignments of the
// fusion triple to the three twist regions.  Folding the permutations into one
// small weight lets each sorted triple cost a single big multiply.
LaurentPoly twist_weight(int N, std::array<int, 3> js, const PretzelSpec& spec) {
    struct TW {
        int j;
        long e;
        int c0;
    };
    std::array<TW, 3> tw;
    for (int i = 0; i < 3; ++i) {
        LaurentPoly g = gamma_twist(N, N, 2 * js[i]);
        long e = g.max_exp();
        tw[i] = {js[i], e, g.coeff(e) < 0 ? -1 : 1};
    }
    auto data = [&](int j) -> const TW& {
        for (auto& t : tw)
            if (t.j == j) return t;
        return tw[0];  // unreachable
    };
    const auto ms = spec.ms();
    LaurentPoly w;
    std::array<int, 3> perm = js;  // js sorted ascending by the caller
    do {
        long shift = 0;
        int sign = 1;
        for (int i = 0; i < 3; ++i) {
            const TW& t = data(perm[i]);
            shift += -t.e * ms[i];  // conjugated exponent
            if (t.c0 < 0 && (ms[i] & 1)) sign = -sign;
        }
        w.add_term(sign, shift);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return w;
}

LaurentPoly sum_fractions(std::vector<QFraction>& fracs) {
    std::map<int, int> common;
    for (auto& f : fracs)
        for (auto& [k, m] : f.den)
            common[k] = std::max(common[k], m);
    // Group by denominator signature so each distinct signature costs one
    // complement multiply, not one per fraction.
    std::map<std::map<int, int>, LaurentPoly> groups;
    for (auto& f : fracs) groups[std::move(f.den)] += f.num;
    LaurentPoly total;
    for (auto& [den, num] : groups) {
        if (num.is_zero()) continue;
        LaurentPoly comp;
        for (auto& [k, m] : common) {
            auto it = den.find(k);
            int extra = m - (it == den.end() ? 0 : it->second);
            if (extra > 0) {
                LaurentPoly p = pow(qbracket(k), static_cast<unsigned>(extra));
                comp = comp.is_zero() ? std::move(p) : comp * p;
            }
        }
        total += comp.is_zero() ? num : num * comp;
    }
    for (auto& [k, m] : common)
        for (int i = 0; i < m; ++i) total = exact_div(total, qbracket(k));
    return total;
}

}  // namespace

QFraction prism_gamma_fraction(int N, int j1, int j2, int j3) {
    if (!admissible(2 * j1, 2 * j2, 2 * j3))
        throw InadmissibleTriple("prism rungs (" + std::to_string(2 * j1) + "," +
                                 std::to_string(2 * j2) + "," + std::to_string(2 * j3) +
                                 ")");
    QFraction tf = tet_fraction(2 * j1, 2 * j2, N, N, N, 2 * j3);
    QFraction g;
    g.num = tf.num * tf.num;
    for (auto& [k, m] : tf.den) g.den[k] = 2 * m;
    FactoredScalar th = theta(2 * j1, 2 * j2, 2 * j3);
    if (th.sign < 0) g.num = -g.num;
    for (auto& [k, m] : th.brackets) {
        if (m > 0)
            g.den[k] += m;
        else
            g.num = g.num * pow(qbracket(k), -m);
    }
    fraction_reduce(g);
    return g;
}

LaurentPoly prism_gamma(int N, int j1, int j2, int j3) {
    return fraction_expand(prism_gamma_fraction(N, j1, j2, j3));
}

std::optional<QFraction> summand_fraction(const SummandIndex& idx, const PretzelSpec& spec) {
    check_index(idx);
    if (!admissible(2 * idx.j1, 2 * idx.j2, 2 * idx.j3)) return std::nullopt;
    auto gr = gamma_ratio_compute(idx.N, idx.j1, idx.j2, idx.j3);
    return assemble_summand(gr, idx, spec);
}

LaurentPoly summand(const SummandIndex& idx, const PretzelSpec& spec) {
    auto f = summand_fraction(idx, spec);
    if (!f) return {};
    return fraction_expand(*f);
}

std::optional<QFraction> normalized_summand_fraction(const SummandIndex& idx,
                                                     const PretzelSpec& spec) {
    auto f = summand_fraction(idx, spec);
    if (!f) return std::nullopt;
    if (idx.N % 2) f->num = -f->num;
    f->den[idx.N + 1] += 1;  // {1}/{N+1} = 1/[N+1]
    fraction_reduce(*f);
    return f;
}

LaurentPoly normalized_summand(const SummandIndex& idx, const PretzelSpec& spec) {
    auto f = normalized_summand_fraction(idx, spec);
    if (!f) return {};
    return fraction_expand(*f);
}

int default_jobs() {
    if (const char* env = std::getenv("PJONES_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
#endif
}

void clear_gamma_cache() {
    std::lock_guard lock(g_gamma_mutex);
    g_gamma_cache.clear();
}

LaurentPoly colored_jones(int color, const PretzelSpec& spec, int jobs) {
    if (color < 1) throw std::invalid_argument("color must be >= 1");
    const int N = color - 1;
    if (jobs <= 0) jobs = default_jobs();
    fill_gamma_cache(N, jobs);
    // Permutations of a triple share the spec-independent fraction, so walk
    // sorted triples and fold the permutation twists into one weight.
    std::vector<QFraction> fracs;
    for (int j1 = 0; j1 <= N; ++j1)
        for (int j2 = j1; j2 <= N; ++j2)
            for (int j3 = j2; j3 <= N; ++j3) {
                auto gr = gamma_ratio_cached(N, j1, j2, j3);
                if (!gr) continue;
                QFraction f = *gr;
                f.num = f.num * twist_weight(N, {j1, j2, j3}, spec);
                if (f.num.is_zero()) continue;
                fracs.push_back(std::move(f));
            }
    return sum_fractions(fracs);
}

LaurentPoly colored_jones_serial(int color, const PretzelSpec& spec) {
    if (color < 1) throw std::invalid_argument("color must be >= 1");
    const int N = color - 1;
    std::map<GKey, std::optional<QFraction>> local;
    std::vector<QFraction> fracs;
    for (int j1 = 0; j1 <= N; ++j1)
        for (int j2 = 0; j2 <= N; ++j2)
            for (int j3 = 0; j3 <= N; ++j3) {
                GKey key = make_key(N, j1, j2, j3);
                auto it = local.find(key);
                if (it == local.end()) {
                    auto [n, a, b, c] = key;
                    it = local.emplace(key, gamma_ratio_compute(n, a, b, c)).first;
                }
                SummandIndex idx{N, j1, j2, j3};
                auto s = assemble_summand(it->second, idx, spec);
                if (s) fracs.push_back(std::move(*s));
            }
    return sum_fractions(fracs);
}

LaurentPoly normalized_colored_jones(int color, const PretzelSpec& spec, int jobs) {
    const int N = color - 1;
    LaurentPoly j = colored_jones(color, spec, jobs);
    j = j * qbrace(1);
    if (N % 2) j = -j;
    return exact_div(j, qbrace(N + 1));
}

}  // namespace pjones
