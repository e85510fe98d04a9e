#include "pjones/stability.hpp"

#include <algorithm>
#include <string>

namespace pjones {

Series series_add(const Series& a, const Series& b) {
    Series r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return r;
}

Series series_sub(const Series& a, const Series& b) {
    Series r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    return r;
}

Series series_shift(const Series& a, long s) {
    if (s < 0) throw std::invalid_argument("series_shift needs s >= 0");
    Series r(a.size() + static_cast<std::size_t>(s));
    std::copy(a.begin(), a.end(), r.begin() + s);
    return r;
}

Series series_trunc(Series a, std::size_t depth) {
    a.resize(depth);
    return a;
}

Series series_mul(const Series& a, const Series& b, std::size_t depth) {
    Series r(depth);
    for (std::size_t i = 0; i < a.size() && i < depth; ++i) {
        if (a[i] == 0) continue;
        const mpz_srcptr ai = a[i].get_mpz_t();
        for (std::size_t j = 0; j < b.size() && i + j < depth; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(r[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
        }
    }
    return r;
}

Series series_invert(const Series& a, std::size_t depth) {
    if (a.empty() || (a[0] != 1 && a[0] != -1))
        throw NonUnitLeading("series inversion needs leading coefficient +-1");
    Series r(depth);
    if (depth == 0) return r;
    r[0] = a[0];
    for (std::size_t n = 1; n < depth; ++n) {
        Int s = 0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k)
            if (a[k] != 0) s += a[k] * r[n - k];
        r[n] = -a[0] * s;
    }
    return r;
}

bool series_eq(const Series& a, const Series& b, std::size_t depth) {
    for (std::size_t i = 0; i < depth; ++i) {
        const Int& x = i < a.size() ? a[i] : Int(0);
        const Int& y = i < b.size() ? b[i] : Int(0);
        if (x != y) return false;
    }
    return true;
}

Justified left_justify(const Series& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) return {Series(s.begin() + static_cast<long>(i), s.end()),
                               static_cast<long>(i)};
    throw AllZero("series has no nonzero entry to justify to");
}

CanonicalSeries canonical_series(const LaurentPoly& p, std::size_t depth) {
    Canonical c = canonicalize(p);
    if (c.step % 4 != 0)
        throw std::logic_error("polynomial is not supported on a q-power lattice");
    const long st = c.step / 4;
    CanonicalSeries out;
    out.coefficients.assign(depth, Int(0));
    for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
        long t = static_cast<long>(i) * st;
        if (t < static_cast<long>(depth)) out.coefficients[static_cast<std::size_t>(t)] = c.coefficients[i];
    }
    return out;
}

bool approx_eq(const LaurentPoly& f, const LaurentPoly& g, std::size_t n) {
    return canonical_series(f, n).coefficients == canonical_series(g, n).coefficients;
}

namespace {

// prod_{i >= 1} (1 - q^{-i}) truncated: the order-0 head
Series euler_series(std::size_t depth) {
    Series e(depth);
    if (depth == 0) return e;
    e[0] = 1;
    for (std::size_t i = 1; i < depth; ++i)
        for (std::size_t t = depth; t-- > i;) e[t] -= e[t - i];
    return e;
}

struct Row {
    int c = 0;
    Series s;
    long shift = 0;        // cumulative left-justification offset
    long window = 0;       // certified-stable prefix length
    std::size_t valid = 0;  // entries of s that carry meaningful data
};

Series consensus(const std::vector<Row>& rows, std::size_t depth, int color_hi) {
    Series h(depth);
    for (std::size_t i = 0; i < depth; ++i) {
        const Row* a = nullptr;
        const Row* b = nullptr;  // b = largest covering color, a = second largest
        for (auto& r : rows)
            if (static_cast<long>(i) < r.window) {
                a = b;
                b = &r;
            }
        if (!a)
            throw NotStabilized("fewer than two rows certify head index " + std::to_string(i) +
                                    "; extend the color range",
                                color_hi);
        if (a->s[i] != b->s[i])
            throw NotStabilized("rows at colors " + std::to_string(a->c) + " and " +
                                    std::to_string(b->c) + " disagree at head index " +
                                    std::to_string(i),
                                b->c);
        h[i] = b->s[i];
    }
    return h;
}

}  // namespace

HeadReport extract_khead(const PretzelSpec& spec, int order, const ExtractOptions& opt) {
    if (order < 0 || order > 2) throw std::invalid_argument("head order must be 0, 1, or 2");
    if (opt.color_lo < 2 || opt.color_hi < opt.color_lo)
        throw std::invalid_argument("color range must satisfy 2 <= lo <= hi");
    if (opt.depth < 1) throw std::invalid_argument("depth must be >= 1");
    const std::size_t L =
        2 * static_cast<std::size_t>(opt.color_hi) + std::max(opt.depth, opt.row_depth) + 8;

    std::vector<Row> rows;
    for (int c = opt.color_lo; c <= opt.color_hi; ++c) {
        Row r;
        r.c = c;
        r.s = canonical_series(normalized_colored_jones(c, spec, opt.jobs), L).coefficients;
        r.valid = L;
        r.window = c;
        rows.push_back(std::move(r));
    }

    if (order >= 1) {
        // subtract the known Euler-product head before justifying
        const Series E = euler_series(L);
        for (auto& r : rows) {
            Justified j = left_justify(series_sub(r.s, E));
            r.s = std::move(j.series);
            r.shift = j.shift;
            r.window = r.c - 1;
            r.valid = L - static_cast<std::size_t>(j.shift);
        }
    }

    if (order == 2) {
        Series h1;
        if (opt.head1) {
            h1 = *opt.head1;
        } else {
            long d1 = rows.size() >= 2 ? rows[rows.size() - 2].window : 0;
            if (d1 < 1)
                throw NotStabilized("color range too short to extract a 1-head", opt.color_hi);
            h1 = consensus(rows, static_cast<std::size_t>(d1), opt.color_hi);
        }
        for (auto& r : rows) {
            // entries past the 1-head's length carry no information; cut before
            // justifying so stray data can never masquerade as a leading term
            std::size_t cut = std::min(r.valid, h1.size());
            Series diff = series_trunc(series_sub(r.s, h1), cut);
            if (std::all_of(diff.begin(), diff.end(), [](const Int& x) { return x == 0; })) {
                // residual starts beyond the trustworthy window (high colors
                // against a short 1-head): the row certifies nothing
                r.s.clear();
                r.valid = 0;
                r.window = 0;
                continue;
            }
            Justified j = left_justify(std::move(diff));
            r.s = std::move(j.series);
            r.valid = cut - static_cast<std::size_t>(j.shift);
            r.window = std::min<long>(r.c - 1, static_cast<long>(r.valid));
            r.shift += j.shift;
        }
    }

    HeadReport rep;
    rep.spec = spec;
    rep.order = order;
    rep.color_lo = opt.color_lo;
    rep.color_hi = opt.color_hi;
    rep.head = consensus(rows, opt.depth, opt.color_hi);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        long agree = 0;
        if (i) {
            const Row& p = rows[i - 1];
            std::size_t cap = std::min({p.valid, r.valid, p.s.size(), r.s.size()});
            while (static_cast<std::size_t>(agree) < cap &&
                   p.s[static_cast<std::size_t>(agree)] == r.s[static_cast<std::size_t>(agree)])
                ++agree;
        }
        rep.certificate.push_back({r.c, r.shift, r.window, agree});
        std::size_t w = std::min({opt.row_depth, r.valid, r.s.size()});
        rep.rows.emplace_back(r.s.begin(), r.s.begin() + static_cast<long>(w));
    }
    return rep;
}

nlohmann::json to_json(const HeadReport& r) {
    nlohmann::json coeffs = nlohmann::json::array(), shifts = nlohmann::json::array(),
                   windows = nlohmann::json::array(), agreements = nlohmann::json::array(),
                   rows = nlohmann::json::array();
    for (auto& c : r.head) coeffs.push_back(c.get_str());
    for (std::size_t i = 0; i < r.certificate.size(); ++i) {
        const CertEntry& e = r.certificate[i];
        shifts.push_back(e.shift);
        windows.push_back(e.window);
        agreements.push_back(e.agreement);
        nlohmann::json row = nlohmann::json::array();
        for (auto& c : r.rows[i]) row.push_back(c.get_str());
        rows.push_back({{"color", e.color}, {"series", row}});
    }
    return {{"spec", r.spec.str()},
            {"order", r.order},
            {"colors", {r.color_lo, r.color_hi}},
            {"coefficients", coeffs},
            {"shifts", shifts},
            {"windows", windows},
            {"agreements", agreements},
            {"rows", rows}};
}

}  // namespace pjones
