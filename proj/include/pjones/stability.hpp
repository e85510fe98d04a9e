#pragma once

// Head-extraction machinery: truncated q^{-1}-series arithmetic, the depth-n
// comparison, and the subtract/left-justify stabilization pipeline over rows
// of normalized colored Jones polynomials.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pjones/laurent.hpp"
#include "pjones/statesum.hpp"

namespace pjones {

struct AllZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonUnitLeading : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotStabilized : std::runtime_error {
    int color;
    NotStabilized(const std::string& what, int color_) : std::runtime_error(what), color(color_) {}
};

// Dense truncated series; index t holds the coefficient of q^{-t}.
using Series = std::vector<Int>;

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_shift(const Series& a, long s);  // multiply by q^{-s}
Series series_trunc(Series a, std::size_t depth);  // cut or zero-pad to depth
Series series_mul(const Series& a, const Series& b, std::size_t depth);
// Reciprocal to the given depth; leading coefficient must be +-1.
Series series_invert(const Series& a, std::size_t depth);
// Prefix equality to the given depth, missing entries reading as zero.
bool series_eq(const Series& a, const Series& b, std::size_t depth);

struct Justified {
    Series series;
    long shift;
};
// Strip leading zeros; AllZero when there is no nonzero entry (the caller's
// working depth was too shallow).
Justified left_justify(const Series& s);

// Top coefficients of a nonzero Laurent polynomial on the q = A^4 lattice,
// highest power first, sign-normalized so coefficients[0] > 0.
struct CanonicalSeries {
    Series coefficients;
    std::size_t depth() const { return coefficients.size(); }
};
CanonicalSeries canonical_series(const LaurentPoly& p, std::size_t depth);

// f and g agree in their n highest-degree coefficients up to a common sign
// change and power shift.
bool approx_eq(const LaurentPoly& f, const LaurentPoly& g, std::size_t n);

struct CertEntry {
    int color;
    long shift;      // left-justification shift of this row
    long window;     // number of leading entries certified stable
    long agreement;  // common-prefix length with the previous row (0 for first)
};

struct HeadReport {
    PretzelSpec spec;
    int order = 0;
    Series head;
    std::vector<CertEntry> certificate;
    std::vector<Series> rows;  // display rows, aligned with certificate
    int color_lo = 0, color_hi = 0;
};

struct ExtractOptions {
    int color_lo = 2;
    int color_hi = 9;
    std::size_t depth = 8;       // certified length of the extracted head
    std::size_t row_depth = 16;  // display width of the emitted rows
    // Closed 1-head to subtract at order 2 (exact to its length); when absent
    // the order-2 pipeline subtracts the consensus 1-head it extracts itself.
    std::optional<Series> head1;
    int jobs = 0;
};

// Order 0 reads the stable prefix of the rows directly; order 1 subtracts the
// Euler-product head and left-justifies; order 2 repeats with the 1-head.
// Throws NotStabilized if covering rows disagree or run out before `depth`.
HeadReport extract_khead(const PretzelSpec& spec, int order, const ExtractOptions& opt);

nlohmann::json to_json(const HeadReport& r);

}  // namespace pjones
