#include "pjones/tloracle.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "pjones/qcalc.hpp"

namespace pjones {

namespace {

// delta = -A^2 - A^-2, the closed-loop value
const LaurentPoly& loop_delta() {
    static const LaurentPoly d = [] {
        LaurentPoly p;
        p.add_term(-1, 2);
        p.add_term(-1, -2);
        return p;
    }();
    return d;
}

const LaurentPoly& delta_pow(int n) {
    static std::vector<LaurentPoly> cache{LaurentPoly::one()};
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * loop_delta());
    return cache[static_cast<std::size_t>(n)];
}

struct Glued {
    PlanarMatching pm;
    int loops = 0;
};

// Union the point sets of two diagrams (b's points offset by a's size) along
// the given arcs; count closed loops and pair up the kept boundary points.
Glued glue(const PlanarMatching& a, const PlanarMatching& b,
           const std::vector<std::array<int, 2>>& arcs, const std::vector<int>& keep) {
    const int na = static_cast<int>(a.partner.size());
    const int n = na + static_cast<int>(b.partner.size());
    std::vector<std::array<int, 2>> edges;
    edges.reserve(static_cast<std::size_t>(n / 2) + arcs.size());
    for (int i = 0; i < na; ++i)
        if (i < a.partner[i]) edges.push_back({i, a.partner[i]});
    for (int i = 0; i < n - na; ++i)
        if (i < b.partner[i]) edges.push_back({na + i, na + b.partner[i]});
    edges.insert(edges.end(), arcs.begin(), arcs.end());

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    Glued out;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto& [x, y] : edges) {
        int rx = find(x), ry = find(y);
        if (rx == ry)
            ++out.loops;  // second path between the same endpoints closes a loop
        else
            parent[rx] = ry;
        adj[x].push_back(y);
        adj[y].push_back(x);
    }

    std::vector<int> newidx(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) newidx[keep[i]] = static_cast<int>(i);
    out.pm.partner.assign(keep.size(), -1);
    for (int g : keep) {
        if (out.pm.partner[newidx[g]] >= 0) continue;
        int prev = -1, cur = g;
        for (;;) {
            int nxt;
            if (prev < 0)
                nxt = adj[cur][0];
            else if (adj[cur].size() == 2)
                nxt = adj[cur][1] == prev ? adj[cur][0] : adj[cur][1];
            else
                throw std::logic_error("dangling point in glued diagram");
            if (nxt != g && newidx[nxt] >= 0) {
                out.pm.partner[newidx[g]] = newidx[nxt];
                out.pm.partner[newidx[nxt]] = newidx[g];
                break;
            }
            prev = cur;
            cur = nxt;
        }
    }
    return out;
}

Glued diag_compose(int k, const PlanarMatching& d1, const PlanarMatching& d2) {
    std::vector<std::array<int, 2>> arcs;
    std::vector<int> keep;
    for (int i = 0; i < k; ++i) arcs.push_back({k + i, 2 * k + i});
    for (int i = 0; i < k; ++i) keep.push_back(i);
    for (int i = 0; i < k; ++i) keep.push_back(3 * k + i);
    return glue(d1, d2, arcs, keep);
}

void accumulate(std::map<PlanarMatching, LaurentPoly>& out, Glued&& g, LaurentPoly&& c) {
    if (g.loops) c = c * delta_pow(g.loops);
    auto [it, fresh] = out.try_emplace(std::move(g.pm), std::move(c));
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

std::size_t element_bytes(const TLElement& e) {
    std::size_t b = e.den.grid().size() * 16 + 64;
    for (auto& [d, c] : e.terms) b += c.grid().size() * 16 + d.partner.size() * 4 + 64;
    return b;
}

struct Budget {
    std::size_t limit;
    std::size_t used = 0;
    void charge(const TLElement& e) {
        used += element_bytes(e);
        if (used > limit)
            throw ResourceLimit("oracle evaluation exceeded its size budget (" +
                                std::to_string(limit) + " bytes)");
    }
};

// JW_n embedded in TL_k with identity strands padded on the right.
TLElement pad_right(const TLElement& e, int k) {
    const int m = e.strands, pad = k - m;
    TLElement out;
    out.strands = k;
    out.den = e.den;
    auto remap = [&](int i) { return i < m ? i : k + (i - m); };
    for (auto& [d, c] : e.terms) {
        PlanarMatching nd;
        nd.partner.assign(static_cast<std::size_t>(2 * k), -1);
        for (int i = 0; i < 2 * m; ++i) nd.partner[remap(i)] = remap(d.partner[i]);
        for (int j = 0; j < pad; ++j) {
            nd.partner[m + j] = k + m + j;
            nd.partner[k + m + j] = m + j;
        }
        out.terms.emplace(std::move(nd), c);
    }
    return out;
}

// One full negative crossing of two n-strand cables in TL_2n.
TLElement cabled_neg_crossing(int n) {
    const int k = 2 * n;
    TLElement e = tl_identity(k);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) e = tl_compose(e, tl_generator_crossing(k, n - 1 - r + s));
    return e;
}

// (JW_n tensor JW_n) followed by m cabled negative crossings.
TLElement twist_region(int n, int m, Budget& budget) {
    TLElement p = tl_tensor(jw_idempotent(n), jw_idempotent(n));
    TLElement c = cabled_neg_crossing(n);
    for (int i = 0; i < m; ++i) {
        p = tl_compose(p, c);
        budget.charge(p);
    }
    tl_reduce(p);
    return p;
}

// Join the right cable of e1 to the left cable of e2 with nested arcs; the new
// boundary (left of e1, right of e2) is TL_2n-shaped again.
TLElement star_join(int n, const TLElement& e1, const TLElement& e2, Budget& budget) {
    const int k = 2 * n;
    std::vector<std::array<int, 2>> arcs;
    std::vector<int> keep;
    for (int j = 0; j < n; ++j) {
        arcs.push_back({k - 1 - j, 2 * k + j});          // bottom: e1 col 2n-1-j to e2 col j
        arcs.push_back({2 * k - 1 - j, 2 * k + k + j});  // top
    }
    for (int j = 0; j < n; ++j) keep.push_back(j);              // e1 bottom left
    for (int j = 0; j < n; ++j) keep.push_back(2 * k + n + j);  // e2 bottom right
    for (int j = 0; j < n; ++j) keep.push_back(k + j);          // e1 top left
    for (int j = 0; j < n; ++j) keep.push_back(3 * k + n + j);  // e2 top right
    TLElement out;
    out.strands = k;
    out.den = e1.den * e2.den;
    for (auto& [d1, c1] : e1.terms)
        for (auto& [d2, c2] : e2.terms) accumulate(out.terms, glue(d1, d2, arcs, keep), c1 * c2);
    budget.charge(out);
    tl_reduce(out);
    return out;
}

// Close the right cable onto the left; exact scalar after clearing the common
// denominator.
LaurentPoly close_wrap(int n, const TLElement& e) {
    const int k = 2 * n;
    std::vector<std::array<int, 2>> arcs;
    for (int j = 0; j < n; ++j) {
        arcs.push_back({k - 1 - j, j});
        arcs.push_back({2 * k - 1 - j, k + j});
    }
    LaurentPoly total;
    for (auto& [d, c] : e.terms) {
        Glued g = glue(d, {}, arcs, {});
        total += g.loops ? c * delta_pow(g.loops) : c;
    }
    return exact_div(total, e.den);
}

}  // namespace

TLElement tl_identity(int k) {
    TLElement e;
    e.strands = k;
    PlanarMatching d;
    d.partner.resize(static_cast<std::size_t>(2 * k));
    for (int i = 0; i < k; ++i) {
        d.partner[i] = k + i;
        d.partner[k + i] = i;
    }
    e.terms.emplace(std::move(d), LaurentPoly::one());
    return e;
}

TLElement tl_generator(int k, int i) {
    if (i < 0 || i + 1 >= k) throw std::invalid_argument("generator index out of range");
    TLElement e = tl_identity(k);
    PlanarMatching d = e.terms.begin()->first;
    auto set = [&](int a, int b) {
        d.partner[a] = b;
        d.partner[b] = a;
    };
    set(i, i + 1);
    set(k + i, k + i + 1);
    e.terms.clear();
    e.terms.emplace(std::move(d), LaurentPoly::one());
    return e;
}

TLElement tl_generator_crossing(int k, int i) {
    // negative crossing resolved by the bracket relation:
    // A * identity + A^-1 * e_i (convention frozen against the state sum)
    TLElement id = tl_identity(k), ei = tl_generator(k, i);
    TLElement out;
    out.strands = k;
    out.terms.emplace(id.terms.begin()->first, LaurentPoly::monomial(1, 1));
    out.terms.emplace(ei.terms.begin()->first, LaurentPoly::monomial(1, -1));
    return out;
}

TLElement tl_compose(const TLElement& x, const TLElement& y) {
    if (x.strands != y.strands) throw ArityMismatch("composing TL elements of different arity");
    TLElement out;
    out.strands = x.strands;
    out.den = x.den * y.den;
    for (auto& [d1, c1] : x.terms)
        for (auto& [d2, c2] : y.terms)
            accumulate(out.terms, diag_compose(x.strands, d1, d2), c1 * c2);
    return out;
}

TLElement tl_add(const TLElement& x, const TLElement& y) {
    if (x.strands != y.strands) throw ArityMismatch("adding TL elements of different arity");
    TLElement out;
    out.strands = x.strands;
    if (x.den == y.den) {
        out.den = x.den;
        out.terms = x.terms;
        for (auto& [d, c] : y.terms) {
            auto [it, fresh] = out.terms.try_emplace(d, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
        return out;
    }
    out.den = x.den * y.den;
    for (auto& [d, c] : x.terms) out.terms.emplace(d, c * y.den);
    for (auto& [d, c] : y.terms) {
        LaurentPoly t = c * x.den;
        auto [it, fresh] = out.terms.try_emplace(d, std::move(t));
        if (!fresh) {
            it->second += t;
            if (it->second.is_zero()) out.terms.erase(it);
        }
    }
    return out;
}

void tl_scale(TLElement& x, const LaurentPoly& c) {
    if (c.is_zero()) {
        x.terms.clear();
        return;
    }
    for (auto& [d, v] : x.terms) v = v * c;
}

void tl_reduce(TLElement& x) {
    for (int k = x.strands + 1; k >= 2; --k) {
        const LaurentPoly& bk = qbracket(k);
        for (;;) {
            try {
                LaurentPoly nden = exact_div(x.den, bk);
                std::map<PlanarMatching, LaurentPoly> nt;
                for (auto& [d, c] : x.terms) nt.emplace(d, exact_div(c, bk));
                x.den = std::move(nden);
                x.terms = std::move(nt);
            } catch (const NonExactDivision&) {
                break;
            }
        }
    }
}

TLElement tl_tensor(const TLElement& a, const TLElement& b) {
    const int ka = a.strands, kb = b.strands, k = ka + kb;
    TLElement out;
    out.strands = k;
    out.den = a.den * b.den;
    auto ra = [&](int i) { return i < ka ? i : k + (i - ka); };
    auto rb = [&](int i) { return i < kb ? ka + i : k + ka + (i - kb); };
    for (auto& [da, ca] : a.terms)
        for (auto& [db, cb] : b.terms) {
            PlanarMatching nd;
            nd.partner.assign(static_cast<std::size_t>(2 * k), -1);
            for (int i = 0; i < 2 * ka; ++i) nd.partner[ra(i)] = ra(da.partner[i]);
            for (int i = 0; i < 2 * kb; ++i) nd.partner[rb(i)] = rb(db.partner[i]);
            auto [it, fresh] = out.terms.try_emplace(std::move(nd), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    return out;
}

TLElement jw_idempotent(int n) {
    if (n < 1) throw std::invalid_argument("jw_idempotent needs n >= 1");
    static std::map<int, TLElement> cache;
    static std::mutex mtx;
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    TLElement e;
    if (n == 1) {
        e = tl_identity(1);
    } else {
        // Wenzl: P_n = P_{n-1} + ([n-1]/[n]) P e_{n-1} P (with delta = -[2] the
        // usual -Delta_{n-2}/Delta_{n-1} ratio becomes +[n-1]/[n])
        TLElement p = pad_right(jw_idempotent(n - 1), n);
        TLElement en = tl_compose(tl_compose(p, tl_generator(n, n - 2)), p);
        tl_scale(en, qbracket(n - 1));
        en.den = en.den * qbracket(n);
        e = tl_add(p, en);
        tl_reduce(e);
    }
    std::lock_guard lock(mtx);
    return cache.emplace(n, std::move(e)).first->second;
}

LaurentPoly trace_closure(const TLElement& x) {
    const int k = x.strands;
    std::vector<std::array<int, 2>> arcs;
    for (int i = 0; i < k; ++i) arcs.push_back({i, k + i});
    LaurentPoly total;
    for (auto& [d, c] : x.terms) {
        Glued g = glue(d, {}, arcs, {});
        total += g.loops ? c * delta_pow(g.loops) : c;
    }
    return exact_div(total, x.den);
}

LaurentPoly bracket_eval(const PretzelSpec& spec, int color, std::size_t budget_bytes) {
    if (color < 2) throw std::invalid_argument("bracket_eval needs color >= 2");
    const int n = color - 1;
    Budget budget{budget_bytes};
    TLElement r1 = twist_region(n, spec.m1, budget);
    TLElement r2 = twist_region(n, spec.m2, budget);
    TLElement r3 = twist_region(n, spec.m3, budget);
    TLElement e = star_join(n, star_join(n, r1, r2, budget), r3, budget);
    LaurentPoly raw = close_wrap(n, e);
    // divide out the quantum dimension to reach the reduced invariant
    return exact_div(raw, qbracket(color));
}

}  // namespace pjones
