#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "convboot/degradation.hpp"
#include "convboot/semi_markov.hpp"
#include "convboot/statistics.hpp"

namespace convboot {

/// Monte Carlo budget. Identical configs and inputs give bit-identical
/// results: every outer repetition draws from its own engine seeded from
/// (seed, rep), so reps are independent of each other and of scheduling.
struct McConfig {
    std::uint64_t seed = 1;
    std::size_t inner_samples = 100'000; // B
    std::size_t outer_reps = 1;          // R
    std::size_t max_draws = 200'000'000; // cap on B * R
};

std::mt19937_64 rep_engine(std::uint64_t seed, std::size_t rep);

struct Atom {
    double value;
    double probability;
};

/*!
 * Exact bootstrap distribution of the mean by enumerating resamples.
 *
 * All n^n equally likely resamples are covered through their count vectors:
 * each multiset of indices carries multinomial weight n! / prod(c_i!) / n^n,
 * which keeps the probabilities exact and merges resamples that differ only
 * in order. Atoms whose values agree to 1e-12 relative are merged.
 */
std::vector<Atom> enumerate_bootstrap_mean(const Sample& sample, std::size_t max_n = 8);

/// Exact sign-flip mean distribution over all 2^n sign vectors.
std::vector<Atom> enumerate_signflip_mean(const Sample& sample, std::size_t max_n = 24);

/// P(X <= value) for an enumerated distribution, counting atoms within
/// `slack` of `value`.
double atoms_cdf(std::span<const Atom> atoms, double value, double slack = 0.0);

/// Per-point Monte Carlo estimates.
///
/// `reps[r][i]` is repetition r's estimate at point i; `estimate` is their
/// mean and [lo, hi] their 2.5% / 97.5% percentiles (equal to the estimate
/// when R = 1).
struct McEstimate {
    std::vector<double> at;
    std::vector<double> estimate;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<std::vector<double>> reps;
};

/// Left-continuous empirical quantile: the ceil(p B)-th smallest draw.
/// Reorders `draws`.
double empirical_quantile(std::vector<double>& draws, double p);

/// Quantiles of resampled means at `probs`.
McEstimate mc_mean(const Sample& sample, std::span<const double> probs, const McConfig& cfg);

/// Empirical P(Ybar <= v) of the resampled mean at each of `values`.
McEstimate mc_mean_cdf(const Sample& sample, std::span<const double> values, const McConfig& cfg);

/// Empirical P(Ybar <= v) of the sign-flip mean at each of `values`.
McEstimate mc_signflip(const Sample& sample, std::span<const double> values, const McConfig& cfg);

/*!
 * Bootstrap failure times drawn the resampling way: pick a unit (uniformly,
 * unless the model is pooled), draw its increments with replacement until
 * the running total reaches the threshold, interpolate linearly inside the
 * last period. Returns the p-quantile of each repetition's draws.
 */
McEstimate mc_degradation_quantile(const DegradationModel& model, double p, const McConfig& cfg);

/// Single bootstrap failure time (exposed for testing).
double draw_failure_time(const DegradationModel& model, std::mt19937_64& rng);

/// First passage 1 -> 3 by simulating the chain from state 1; quantiles at
/// `probs`.
McEstimate mc_first_passage(const SemiMarkovData& data,
                            std::span<const double> probs,
                            const McConfig& cfg);

double mean_absolute_error(std::span<const double> a, std::span<const double> b);

} // namespace convboot
