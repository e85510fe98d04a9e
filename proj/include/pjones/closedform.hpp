#pragma once

// Closed-form series generators and the verification suites: the Euler-product
// head, the 935-family 1-head, the two-head formula with its four-branch
// correction polynomial, and the truncated factorial/summand identities.

#include <stdexcept>
#include <string>
#include <vector>

#include "pjones/qcalc.hpp"
#include "pjones/stability.hpp"
#include "pjones/statesum.hpp"

namespace pjones {

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// n: twist regions with exactly two half-twists; m: with at least three.
struct TwoHeadCase {
    int n = 0;
    int m = 0;
};
TwoHeadCase classify(const PretzelSpec& spec);

// prod_{i>=1} (1 - q^{-i}); factors i <= depth suffice at this truncation.
Series euler_product(std::size_t depth);

// euler_product * (1 + 3/(1-q^{-1})): the 1-head of the (3,3,3) family.
Series one_head_935(std::size_t depth);

// Four-branch correction polynomial keyed on n+m.
Series f_poly(const TwoHeadCase& c);

// euler_product * (q^{-1} + n/(1-q^{-1}) - f_{n,m}/((1-q^{-1})(1-q^{-2}))).
Series two_head(const PretzelSpec& spec, std::size_t depth);

enum class LemmaId {
    L21,        // full state sum vs {3N+1}!{N}!^3 / ({2N}!^3 {1}) at depth 3N+1
    L23a,       // {2N}! expansion at depth 3N+1
    L23b,       // {2N}!^2 expansion at depth 3N+1
    L24a,       // {3N+1}! vs {2N}! at depth 3N+1
    L24b,       // {3N}! vs {2N}! at depth 3N+1
    L31,        // normalized summand (N-1,N,N) at depth 2N
    L32,        // normalized summand (N-2,N,N) at depth N
    L33,        // normalized summand (N-3,N,N) at depth N, N >= 4
    L34,        // normalized summand (N,N-1,N-1) at depth N
    Eq32chain,  // {N}!^3 (1 - q^{-2N-1}/(1-q^{-1})) / ({2N}!^2 (1-q^{-N-1}))
};
LemmaId lemma_id(const std::string& name);  // "L2.1", "L2.3a", ..., "Eq3.2chain"
std::string lemma_name(LemmaId id);

// Right-hand side of the identity as a truncated series (not sign-normalized).
Series lemma_rhs(LemmaId which, int N, std::size_t depth);

// q-series of num / prod [k]^m on the q-lattice, sign-normalized positive.
Series fraction_qseries(const QFraction& f, std::size_t depth);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // first failure, empty when pass
};

// All truncated-identity families at once; max_n caps the factorial-identity
// range (the summand identities run N = 5..min(10, max_n), the state-sum
// identity N = 2..min(8, max_n)).
std::vector<CheckResult> lemma_suite(int max_n, int jobs = 0);

struct TheoremCheck {
    PretzelSpec spec;
    bool pass = false;
    std::size_t depth = 0;
    HeadReport report;
    std::string detail;
};

// Extract the order-2 head empirically (colors 2..2*depth+3 unless overridden)
// and compare with two_head at the given depth.  Propagates NotStabilized.
TheoremCheck verify_two_head(const PretzelSpec& spec, std::size_t depth, int color_hi = 0,
                             int jobs = 0);

// The eleven family representatives, one per case of the two-head formula.
const std::vector<PretzelSpec>& family_representatives();

}  // namespace pjones
