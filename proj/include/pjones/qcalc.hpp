#pragma once

// Quantum combinatorial quantities: [n], {n}, factorials, Delta_n, the theta
// network, the negative-half-twist coefficient gamma, and the tetrahedral
// network.  theta/tet are genuinely rational at small colors (e.g.
// tet(1,1,2,1,1,2) = [3]/[2]), so the tetrahedral evaluation exposes a
// QFraction core; the LaurentPoly entry points throw when the value is not
// polynomial.

#include <map>

#include "pjones/laurent.hpp"

namespace pjones {

struct InadmissibleTriple : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const LaurentPoly& qbracket(int n);  // [n], cached per thread
LaurentPoly qbrace(long n);          // {n} = A^2n - A^-2n
LaurentPoly delta(int n);            // (-1)^n [n+1]

bool admissible(int a, int b, int c);

struct AdmissibleTriple {
    int a, b, c;
    int i, j, k;  // i=(b+c-a)/2, j=(a+c-b)/2, k=(a+b-c)/2
    AdmissibleTriple(int a, int b, int c);  // throws InadmissibleTriple
};

enum class FactKind { bracket, brace, delta };
FactoredScalar qfact(int n, FactKind kind);

FactoredScalar theta(int a, int b, int c);  // throws InadmissibleTriple
FactoredScalar theta(const AdmissibleTriple& t);

// Signed monomial (-1)^((a+b-c)/2) A^(a+b-c+(a^2+b^2-c^2)/2).
LaurentPoly gamma_twist(int a, int b, int c);

// num / prod_k [k]^den[k] with all multiplicities > 0; the overall sign lives
// in num.
struct QFraction {
    LaurentPoly num;
    std::map<int, int> den;
};

LaurentPoly den_expand(const std::map<int, int>& den);
void fraction_reduce(QFraction& f);  // cancel brackets that divide num exactly
QFraction fraction_mul(const QFraction& a, const QFraction& b);
LaurentPoly fraction_expand(const QFraction& f);  // throws NonExactDivision
bool fraction_equal(const QFraction& a, const QFraction& b);  // cross-multiplied
// Highest power of q present in the value (q = A^-4, so this is
// -min_A_exponent/4 measured on the fraction).
long max_q_degree(const QFraction& f);

// Tetrahedral network tet(a,b,e,c,d,f): vertices (a,d,e),(b,c,e),(a,b,f),
// (c,d,f); invariant under the tetrahedral symmetries.  Evaluated by the
// alternating sum over the admissible range; correctness is pinned by the
// oracle tests, not assumed.
QFraction tet_fraction(int a, int b, int e, int c, int d, int f);
LaurentPoly tet(int a, int b, int e, int c, int d, int f);
mpq_class classical_tet(int a, int b, int e, int c, int d, int f);  // [n] -> n
mpq_class fraction_eval_one(const QFraction& f);

}  // namespace pjones
