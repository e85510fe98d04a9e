#pragma once

// The fusion state sum J_{N+1,K} = sum_{j1,j2,j3=0}^N S_j for pretzel knots
// with three negative twist regions, its normalization J' = J*(-1)^N{1}/{N+1},
// and the prism-graph factor Gamma shared by all summands.
//
// Individual summands are rational (bracket-denominator) quantities; only the
// full sum is a Laurent polynomial.  The sum therefore accumulates numerators
// over a common bracket denominator and performs a single exact division at
// the end.

#include <array>
#include <optional>
#include <string>

#include "pjones/qcalc.hpp"

namespace pjones {

struct PretzelSpec {
    int m1 = 1, m2 = 1, m3 = 1;  // negative half-twist counts, each >= 1

    std::array<int, 3> ms() const { return {m1, m2, m3}; }
    int count_exactly_two() const;   // Theorem-style n
    int count_at_least_three() const;  // Theorem-style m
    int count_ones() const;
    bool operator==(const PretzelSpec&) const = default;
    static PretzelSpec parse(const std::string& text);  // "m1,m2,m3"
    std::string str() const;
};

struct SummandIndex {
    int N;           // color - 1
    int j1, j2, j3;  // fusion indices in [0, N]
};

// Gamma_{N,(j)} = tet(2j1,2j2,N,N,N,2j3)^2 / theta(2j1,2j2,2j3); symmetric in
// (j1,j2,j3).  Throws InadmissibleTriple when (2j1,2j2,2j3) is inadmissible
// (the fused network vanishes; colored_jones skips those indices).
QFraction prism_gamma_fraction(int N, int j1, int j2, int j3);
LaurentPoly prism_gamma(int N, int j1, int j2, int j3);

// S_j as a signed fraction; nullopt for inadmissible (vanishing) indices.
std::optional<QFraction> summand_fraction(const SummandIndex& idx, const PretzelSpec& spec);
LaurentPoly summand(const SummandIndex& idx, const PretzelSpec& spec);
// S_j * (-1)^N {1}/{N+1} = S_j * (-1)^N / [N+1].
std::optional<QFraction> normalized_summand_fraction(const SummandIndex& idx,
                                                     const PretzelSpec& spec);
LaurentPoly normalized_summand(const SummandIndex& idx, const PretzelSpec& spec);

// jobs = 0 picks PJONES_JOBS (or all hardware threads).  Results are
// bit-identical for every jobs value; the parallel path shares a process-wide
// Gamma-ratio memo keyed on (N, sorted j-triple).
LaurentPoly colored_jones(int color, const PretzelSpec& spec, int jobs = 0);
LaurentPoly normalized_colored_jones(int color, const PretzelSpec& spec, int jobs = 0);

// Single-threaded reference that touches no shared caches; used by tests and
// the benchmark to pin the parallel path.
LaurentPoly colored_jones_serial(int color, const PretzelSpec& spec);

int default_jobs();
void clear_gamma_cache();  // benchmarking hook

}  // namespace pjones
