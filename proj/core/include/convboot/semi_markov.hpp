#pragma once

#include <span>
#include <vector>

#include "convboot/bounded.hpp"
#include "convboot/grid.hpp"
#include "convboot/spectral.hpp"

namespace convboot {

/// One observed sojourn: time spent in `from_state` before moving to
/// `to_state`. States 1 and 2 are transient, 3 is absorbing.
struct TransitionRecord {
    int from_state;
    int to_state;
    double sojourn;
};

/*!
 * Empirical ingredients of the three-state process.
 *
 * p1 = P(1 -> 3 | leaving 1), p2 = P(2 -> 1 | leaving 2), both sample
 * proportions; the time vectors hold the observed sojourns per transition.
 */
struct SemiMarkovData {
    std::vector<double> times_12;
    std::vector<double> times_13;
    std::vector<double> times_21;
    std::vector<double> times_23;
    double p1 = 0.0;
    double p2 = 0.0;
};

SemiMarkovData extract_transitions(std::span<const TransitionRecord> records);

/// Probability-weighted transition spectra on one grid.
struct TransitionSpectra {
    SpectralSeq f12; // (1 - p1) * pmf_12
    SpectralSeq f13; // p1 * pmf_13
    SpectralSeq f21; // p2 * pmf_21
    SpectralSeq f23; // (1 - p2) * pmf_23
};

TransitionSpectra transition_spectra(const SemiMarkovData& data,
                                     const SupportGrid& grid,
                                     Rounding mode);

/// Spectrum of the 1 -> 3 first passage time:
/// f13 + f12 (f23 + f13 f21) / (1 - f12 f21).
SpectralSeq first_passage_spectrum(const TransitionSpectra& s);

inline constexpr double kDefaultTailEpsilon = 1e-4;

/*!
 * CDF of the first passage time from state 1 to state 3 on `grid`.
 *
 * The spectral quotient sums the renewal series over every number of 1 -> 2
 * -> 1 loops. Passage times beyond the grid end fold back onto it, so the
 * tail mass past the horizon is estimated on a grid of twice the length and
 * must not exceed `tail_epsilon`.
 */
CdfVector first_passage_cdf(const SemiMarkovData& data,
                            const SupportGrid& grid,
                            Rounding mode,
                            double tail_epsilon = kDefaultTailEpsilon);

/// Round-down and round-up legs. Never flagged as guaranteed: the spectral
/// division does not preserve the ordering argument behind the bounds.
BoundedCdf first_passage_bounded(const SemiMarkovData& data,
                                 const SupportGrid& grid,
                                 double tail_epsilon = kDefaultTailEpsilon);

} // namespace convboot
