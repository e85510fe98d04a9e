#include "pjones/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pjones {

namespace {
long gcd3(long a, long b, long c) { return std::gcd(std::gcd(a, b), c); }
}  // namespace

void LaurentPoly::trim() {
    std::size_t lo = 0, hi = c_.size();
    while (lo < hi && c_[lo] == 0) ++lo;
    while (hi > lo && c_[hi - 1] == 0) --hi;
    if (lo == hi) {
        c_.clear();
        off_ = 0;
        stride_ = 4;
        return;
    }
    if (hi != c_.size()) c_.resize(hi);
    if (lo != 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lo));
        off_ += stride_ * static_cast<long>(lo);
    }
}

void LaurentPoly::regrid(long off, long stride, long len) {
    std::vector<Int> nv(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long e = off_ + stride_ * static_cast<long>(i);
        nv[static_cast<std::size_t>((e - off) / stride)] = std::move(c_[i]);
    }
    c_ = std::move(nv);
    off_ = off;
    stride_ = stride;
}

LaurentPoly LaurentPoly::monomial(Int c, long e) {
    LaurentPoly p;
    if (c != 0) {
        p.off_ = e;
        p.c_.push_back(std::move(c));
    }
    return p;
}

long LaurentPoly::min_exp() const {
    if (c_.empty()) throw ZeroPolynomial("min_exp of zero polynomial");
    return off_;
}

long LaurentPoly::max_exp() const {
    if (c_.empty()) throw ZeroPolynomial("max_exp of zero polynomial");
    return off_ + stride_ * static_cast<long>(c_.size() - 1);
}

Int LaurentPoly::coeff(long e) const {
    if (c_.empty() || e < off_) return 0;
    long d = e - off_;
    if (d % stride_ != 0) return 0;
    std::size_t i = static_cast<std::size_t>(d / stride_);
    return i < c_.size() ? c_[i] : Int(0);
}

std::size_t LaurentPoly::size() const {
    std::size_t n = 0;
    for (auto& c : c_)
        if (c != 0) ++n;
    return n;
}

std::map<long, Int> LaurentPoly::terms() const {
    std::map<long, Int> t;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) t.emplace(off_ + stride_ * static_cast<long>(i), c_[i]);
    return t;
}

void LaurentPoly::add_term(const Int& c, long e) {
    if (c == 0) return;
    if (c_.empty()) {
        off_ = e;
        stride_ = 4;
        c_.push_back(c);
        return;
    }
    long d = e - off_;
    if (d % stride_ == 0 && d >= 0 && d / stride_ < static_cast<long>(c_.size())) {
        c_[static_cast<std::size_t>(d / stride_)] += c;
        trim();
        return;
    }
    long g = std::gcd(stride_, std::abs(d));
    long lo = std::min(off_, e), hi = std::max(max_exp(), e);
    regrid(lo, g, (hi - lo) / g + 1);
    c_[static_cast<std::size_t>((e - off_) / g)] += c;
    trim();
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    long otop = o.max_exp();
    if (o.off_ >= off_ && (o.off_ - off_) % stride_ == 0 && o.stride_ % stride_ == 0 &&
        otop <= max_exp()) {
        std::size_t base = static_cast<std::size_t>((o.off_ - off_) / stride_);
        std::size_t step = static_cast<std::size_t>(o.stride_ / stride_);
        for (std::size_t j = 0; j < o.c_.size(); ++j) c_[base + j * step] += o.c_[j];
        trim();
        return *this;
    }
    long g = gcd3(stride_, o.stride_, std::abs(off_ - o.off_));
    long lo = std::min(off_, o.off_), hi = std::max(max_exp(), otop);
    regrid(lo, g, (hi - lo) / g + 1);
    std::size_t base = static_cast<std::size_t>((o.off_ - off_) / g);
    std::size_t step = static_cast<std::size_t>(o.stride_ / g);
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[base + j * step] += o.c_[j];
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = -o;
    long otop = o.max_exp();
    if (!(o.off_ >= off_ && (o.off_ - off_) % stride_ == 0 && o.stride_ % stride_ == 0 &&
          otop <= max_exp())) {
        long g = gcd3(stride_, o.stride_, std::abs(off_ - o.off_));
        long lo = std::min(off_, o.off_), hi = std::max(max_exp(), otop);
        regrid(lo, g, (hi - lo) / g + 1);
    }
    std::size_t base = static_cast<std::size_t>((o.off_ - off_) / stride_);
    std::size_t step = static_cast<std::size_t>(o.stride_ / stride_);
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[base + j * step] -= o.c_[j];
    trim();
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    long g = std::gcd(a.stride_, b.stride_);
    LaurentPoly r;
    r.off_ = a.off_ + b.off_;
    r.stride_ = g;
    long alen = static_cast<long>(a.c_.size()), blen = static_cast<long>(b.c_.size());
    long as = a.stride_ / g, bs = b.stride_ / g;
    r.c_.assign(static_cast<std::size_t>((alen - 1) * as + (blen - 1) * bs + 1), Int(0));
    // Iterate the shorter factor outside; the inner walk is contiguous when the
    // strides agree (the common case: everything lives on a step-4 grid).
    const LaurentPoly& u = alen <= blen ? a : b;
    const LaurentPoly& v = alen <= blen ? b : a;
    long us = (alen <= blen ? as : bs), vs = (alen <= blen ? bs : as);
    for (std::size_t i = 0; i < u.c_.size(); ++i) {
        if (u.c_[i] == 0) continue;
        const mpz_srcptr ui = u.c_[i].get_mpz_t();
        std::size_t base = i * static_cast<std::size_t>(us);
        for (std::size_t j = 0; j < v.c_.size(); ++j) {
            if (v.c_[j] == 0) continue;
            mpz_addmul(r.c_[base + j * static_cast<std::size_t>(vs)].get_mpz_t(), ui,
                       v.c_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

LaurentPoly& LaurentPoly::mul_monomial(const Int& c, long e) {
    if (c == 0) {
        c_.clear();
        off_ = 0;
        stride_ = 4;
        return *this;
    }
    off_ += e;
    if (c != 1)
        for (auto& x : c_) x *= c;
    return *this;
}

LaurentPoly LaurentPoly::conjugate() const {
    if (c_.empty()) return {};
    LaurentPoly r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.off_ = -max_exp();
    return r;
}

Int LaurentPoly::eval_one() const {
    Int s = 0;
    for (auto& c : c_) s += c;
    return s;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (c_.empty() || o.c_.empty()) return c_.empty() && o.c_.empty();
    if (off_ != o.off_ || max_exp() != o.max_exp()) return false;
    if (stride_ == o.stride_) return c_ == o.c_;
    return terms() == o.terms();
}

LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.c_.empty()) throw NonExactDivision("division by zero polynomial");
    if (num.c_.empty()) return {};
    long g = gcd3(num.stride_, den.stride_, std::abs(num.off_ - den.off_));
    LaurentPoly r = num;
    r.regrid(num.off_, g, (num.max_exp() - num.off_) / g + 1);
    std::vector<Int> d(static_cast<std::size_t>((den.max_exp() - den.off_) / g + 1));
    for (std::size_t j = 0; j < den.c_.size(); ++j)
        d[static_cast<std::size_t>(j * (den.stride_ / g))] = den.c_[j];
    const long dlen = static_cast<long>(d.size());
    const Int& dlead = d.back();
    // Any exact quotient q satisfies min_exp(q) = min_exp(num) - min_exp(den);
    // needing a term below that bound proves the division is not exact.
    const long qlen = static_cast<long>(r.c_.size()) - dlen + 1;
    if (qlen <= 0) throw NonExactDivision("denominator degree span exceeds numerator");
    LaurentPoly q;
    q.off_ = num.off_ - den.off_;
    q.stride_ = g;
    q.c_.assign(static_cast<std::size_t>(qlen), Int(0));
    for (long i = static_cast<long>(r.c_.size()) - 1; i >= 0; --i) {
        Int& ci = r.c_[static_cast<std::size_t>(i)];
        if (ci == 0) continue;
        long qi = i - (dlen - 1);
        if (qi < 0) throw NonExactDivision("non-exact polynomial division");
        if (!mpz_divisible_p(ci.get_mpz_t(), dlead.get_mpz_t()))
            throw NonExactDivision("non-exact leading coefficient");
        Int c = ci / dlead;
        for (long j = 0; j < dlen; ++j) {
            if (d[static_cast<std::size_t>(j)] == 0) continue;
            mpz_submul(r.c_[static_cast<std::size_t>(qi + j)].get_mpz_t(), c.get_mpz_t(),
                       d[static_cast<std::size_t>(j)].get_mpz_t());
        }
        q.c_[static_cast<std::size_t>(qi)] = std::move(c);
    }
    q.trim();
    return q;
}

LaurentPoly pow(const LaurentPoly& p, unsigned e) {
    LaurentPoly r = LaurentPoly::one(), base = p;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (a != 1 || e == 0) os << a.get_str();
        if (e != 0) {
            if (a != 1) os << "*";
            os << "A^" << e;
        }
        first = false;
    }
    return os.str();
}

Canonical canonicalize(const LaurentPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("canonicalize of zero polynomial");
    auto t = p.terms();
    const long emax = t.rbegin()->first, emin = t.begin()->first;
    long g = 0;
    for (auto& [e, c] : t) g = std::gcd(g, emax - e);
    Canonical out;
    out.step = g == 0 ? 4 : g;  // a lone monomial sits on the one-q-unit grid
    out.shift = emax;
    out.sign = t.rbegin()->second < 0 ? -1 : 1;
    out.coefficients.assign(static_cast<std::size_t>((emax - emin) / out.step + 1), Int(0));
    for (auto& [e, c] : t)
        out.coefficients[static_cast<std::size_t>((emax - e) / out.step)] = out.sign * c;
    return out;
}

LaurentPoly from_canonical(const Canonical& c) {
    LaurentPoly p;
    for (std::size_t t = 0; t < c.coefficients.size(); ++t)
        p.add_term(c.sign * c.coefficients[t], c.shift - c.step * static_cast<long>(t));
    return p;
}

namespace {

// [k] = A^(2k-2) + A^(2k-6) + ... + A^-(2k-2); thread-local so tet evaluation
// can run under OpenMP without locking.
const LaurentPoly& bracket_poly(int k) {
    thread_local std::vector<LaurentPoly> cache;
    if (k < 0) throw std::invalid_argument("bracket of negative index");
    while (static_cast<int>(cache.size()) <= k) {
        int n = static_cast<int>(cache.size());
        LaurentPoly b;
        for (int t = 0; t < n; ++t) b.add_term(1, 2 * n - 2 - 4 * t);
        cache.push_back(std::move(b));
    }
    return cache[k];
}

const LaurentPoly& brace_one() {
    thread_local LaurentPoly b = [] {
        LaurentPoly p;
        p.add_term(1, 2);
        p.add_term(-1, -2);
        return p;
    }();
    return b;
}

}  // namespace

void FactoredScalar::mul_bracket(int k, int m) {
    if (k <= 1 || m == 0) return;  // [1] = 1
    auto [it, fresh] = brackets.try_emplace(k, m);
    if (!fresh) {
        it->second += m;
        if (it->second == 0) brackets.erase(it);
    }
}

void FactoredScalar::mul_bracket_fact(int n, int m) {
    for (int k = 2; k <= n; ++k) mul_bracket(k, m);
}

FactoredScalar& FactoredScalar::operator*=(const FactoredScalar& o) {
    sign *= o.sign;
    mono += o.mono;
    one_power += o.one_power;
    for (auto& [k, m] : o.brackets) mul_bracket(k, m);
    return *this;
}

FactoredScalar FactoredScalar::inv() const {
    FactoredScalar r;
    r.sign = sign;
    r.mono = -mono;
    r.one_power = -one_power;
    for (auto& [k, m] : brackets) r.brackets[k] = -m;
    return r;
}

FactoredScalar FactoredScalar::pow(int e) const {
    FactoredScalar r;
    if (e == 0) return r;
    r.sign = (sign < 0 && (e & 1)) ? -1 : 1;
    r.mono = mono * e;
    r.one_power = one_power * e;
    for (auto& [k, m] : brackets) r.brackets[k] = m * e;
    return r;
}

LaurentPoly FactoredScalar::expand() const {
    LaurentPoly res = LaurentPoly::monomial(sign, mono);
    for (auto& [k, m] : brackets)
        if (m > 0) res = res * pjones::pow(bracket_poly(k), static_cast<unsigned>(m));
    if (one_power > 0) res = res * pjones::pow(brace_one(), static_cast<unsigned>(one_power));
    for (auto& [k, m] : brackets)
        if (m < 0) res = exact_div(res, pjones::pow(bracket_poly(k), static_cast<unsigned>(-m)));
    if (one_power < 0)
        res = exact_div(res, pjones::pow(brace_one(), static_cast<unsigned>(-one_power)));
    return res;
}

std::string to_string(const FactoredScalar& s) {
    std::ostringstream os;
    os << (s.sign < 0 ? "-" : "+") << "A^" << s.mono;
    for (auto& [k, m] : s.brackets) os << " [" << k << "]^" << m;
    if (s.one_power) os << " {1}^" << s.one_power;
    return os.str();
}

nlohmann::json to_json(const LaurentPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [e, c] : p.terms()) terms.push_back({e, c.get_str()});
    return {{"variable", "A"}, {"terms", terms}};
}

namespace {
Int int_from_json(const nlohmann::json& v) {
    if (v.is_string()) return Int(v.get<std::string>());
    return Int(v.get<long>());
}
}  // namespace

LaurentPoly poly_from_json(const nlohmann::json& j) {
    LaurentPoly p;
    for (auto& t : j.at("terms")) p.add_term(int_from_json(t.at(1)), t.at(0).get<long>());
    return p;
}

nlohmann::json to_json(const Canonical& c) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (auto& x : c.coefficients) coeffs.push_back(x.get_str());
    return {{"coefficients", coeffs}, {"shift", c.shift}, {"sign", c.sign}, {"step", c.step}};
}

Canonical canonical_from_json(const nlohmann::json& j) {
    Canonical c;
    for (auto& v : j.at("coefficients")) c.coefficients.push_back(int_from_json(v));
    c.shift = j.at("shift").get<long>();
    c.sign = j.at("sign").get<int>();
    c.step = j.at("step").get<long>();
    return c;
}

}  // namespace pjones
