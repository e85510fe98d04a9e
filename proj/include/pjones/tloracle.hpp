#pragma once

// Brute-force Temperley-Lieb / Kauffman bracket evaluator for cabled pretzel
// closures: the independent cross-check for the fusion state sum at small
// colors.  Diagrams in TL_k live on 2k points, bottom 0..k-1 (left to right),
// top k..2k-1, stored as a partner involution.

#include <map>
#include <stdexcept>
#include <vector>

#include "pjones/laurent.hpp"
#include "pjones/statesum.hpp"

namespace pjones {

struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlanarMatching {
    std::vector<int> partner;  // partner[i] = j <=> an arc joins points i and j

    auto operator<=>(const PlanarMatching&) const = default;
};

// Formal linear combination of matchings; all coefficients sit over the one
// common denominator (a product of qbracket values, kept expanded).
struct TLElement {
    int strands = 0;
    LaurentPoly den = LaurentPoly::one();
    std::map<PlanarMatching, LaurentPoly> terms;  // zero coefficients dropped
};

TLElement tl_identity(int k);
TLElement tl_generator(int k, int i);  // cup-cap e_i at columns i, i+1
// One negative crossing at columns i, i+1 resolved by the bracket relation.
TLElement tl_generator_crossing(int k, int i);
TLElement tl_compose(const TLElement& x, const TLElement& y);  // y stacked on x
TLElement tl_add(const TLElement& x, const TLElement& y);
void tl_scale(TLElement& x, const LaurentPoly& c);
// Cancel denominator factors [k] that divide every coefficient.
void tl_reduce(TLElement& x);
TLElement tl_tensor(const TLElement& a, const TLElement& b);  // a left, b right

// Jones-Wenzl projector via the Wenzl recursion; cached per n.
TLElement jw_idempotent(int n);

// Markov trace closure (top i joined to bottom i); exact polynomial, throws
// NonExactDivision if the denominator fails to clear.
LaurentPoly trace_closure(const TLElement& x);

// Sized so colors 2 and 3 always fit and color 4 always needs an explicit
// budget (measured cumulative estimates: color 3 peaks near 56 KiB, color 4
// starts near 264 KiB).
inline constexpr std::size_t kDefaultBracketBudget = std::size_t(128) << 10;

// Kauffman bracket of the (color-1)-cabled 3-pretzel closure with one
// Jones-Wenzl idempotent per cable, divided by [color] to reach the reduced
// invariant.  No framing correction: compare via canonicalize (up to +-A^s).
// Throws ResourceLimit once the cumulative coefficient-storage estimate
// exceeds budget_bytes.
LaurentPoly bracket_eval(const PretzelSpec& spec, int color,
                         std::size_t budget_bytes = kDefaultBracketBudget);

}  // namespace pjones
