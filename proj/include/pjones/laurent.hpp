#pragma once

// Exact Laurent polynomials in the skein variable A (A^-4 = q) with
// arbitrary-precision integer coefficients, plus factored quantum scalars
// +-A^e * prod [k]^m_k * {1}^p and the canonical (sign/shift/step) form used
// for all "top n coefficients" comparisons.
//
// Storage is a dense coefficient vector on an exponent grid off + stride*i.
// Every quantity in this artifact lives on a step-4 (one-q-unit) grid after
// monomial shifts, so dense vectors waste nothing and keep the inner products
// in contiguous mpz_addmul loops; the logical view is still the sparse
// exponent -> coefficient association exposed by terms().

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace pjones {

using Int = mpz_class;

struct NonExactDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroPolynomial : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(Int c, long e);
    static LaurentPoly one() { return monomial(1, 0); }

    bool is_zero() const { return c_.empty(); }
    long min_exp() const;  // throws ZeroPolynomial on 0
    long max_exp() const;
    Int coeff(long e) const;
    std::size_t size() const;  // number of nonzero terms

    // Sorted exponent -> coefficient view (materialized; for IO and tests).
    std::map<long, Int> terms() const;

    void add_term(const Int& c, long e);  // accumulate, dropping zeros

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);

    LaurentPoly& mul_monomial(const Int& c, long e);  // *= c*A^e in place
    LaurentPoly conjugate() const;                    // A <-> A^-1
    Int eval_one() const;                             // value at A = 1

    bool operator==(const LaurentPoly& o) const;

    // Grid accessors (valid when nonzero); coefficient i sits at off + stride*i
    // and the first/last entries are nonzero.
    long grid_off() const { return off_; }
    long grid_stride() const { return stride_; }
    const std::vector<Int>& grid() const { return c_; }

private:
    void trim();
    void regrid(long off, long stride, long len);  // re-express on coarser grid

    long off_ = 0;
    long stride_ = 4;
    std::vector<Int> c_;
};

// Exact quotient; throws NonExactDivision when den does not divide num.
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);
LaurentPoly pow(const LaurentPoly& p, unsigned e);
std::string to_string(const LaurentPoly& p);

// p = sign * A^shift * sum_t coefficients[t] * A^(-step*t), coefficients[0] > 0.
struct Canonical {
    std::vector<Int> coefficients;
    long shift = 0;
    int sign = 1;
    long step = 4;
};

Canonical canonicalize(const LaurentPoly& p);  // throws ZeroPolynomial
LaurentPoly from_canonical(const Canonical& c);

// sign * A^mono * prod_k [k]^brackets[k] * {1}^one_power, with [1] dropped.
struct FactoredScalar {
    int sign = 1;
    long mono = 0;
    std::map<int, int> brackets;  // k >= 2 -> nonzero multiplicity
    int one_power = 0;            // multiplicity of {1} = A^2 - A^-2

    void mul_bracket(int k, int m = 1);       // *= [k]^m
    void mul_bracket_fact(int n, int m = 1);  // *= ([n]!)^m
    FactoredScalar& operator*=(const FactoredScalar& o);
    FactoredScalar inv() const;
    FactoredScalar pow(int e) const;
    LaurentPoly expand() const;  // throws NonExactDivision if not polynomial
};

std::string to_string(const FactoredScalar& s);

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Canonical& c);
Canonical canonical_from_json(const nlohmann::json& j);

}  // namespace pjones
