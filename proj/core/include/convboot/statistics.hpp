#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "convboot/bounded.hpp"
#include "convboot/grid.hpp"

namespace convboot {

/// Observed data x_1..x_n: nonempty, all finite.
class Sample {
  public:
    explicit Sample(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double min() const;
    double max() const;
    double mean() const;

  private:
    std::vector<double> values_;
};

//---------------------------------------------------------------------------//
// Grid choices for the sum statistics. Every grid is expressed in the
// statistic's working space: w-space for the bootstrap mean, where
// w_i = (x_i - min x) / n and the n-fold sum lives on [0, n * max w], and the
// shifted space for the sign-flip mean, where the sum lives on
// [0, 2 * shift].

/// Fully specified working-space grid. The origin must be 0: index sums
/// only equal value sums on a grid anchored at zero.
struct ExplicitGrid {
    double origin;
    double endpoint;
    std::size_t count;
};

/// `count` points spanning the support of the sum, with n spare steps at
/// the top so that round-up placement cannot push the sum off the grid.
struct AutoGrid {
    std::size_t count;
};

/// Fixed spacing from 0, as many points as the support (plus n spare steps)
/// requires.
struct StepGrid {
    double step;
};

using GridSpec = std::variant<ExplicitGrid, AutoGrid, StepGrid>;

/// Largest grid a StepGrid may resolve to.
inline constexpr std::size_t kMaxStepGridPoints = std::size_t{1} << 26;

/// Working-space step at which every transformed value lands on the grid
/// when the sample is recorded to a fixed number of decimals:
/// decimal_resolution(x) / n. Serves both the mean and the sign-flip mean.
double exact_step(const Sample& sample);

/// Working-space grid `spec` resolves to for the bootstrap mean of `sample`.
SupportGrid mean_working_grid(const Sample& sample, const GridSpec& spec);

/*!
 * Bootstrap distribution of the sample mean, Ybar = (Y_1 + ... + Y_n) / n with
 * Y_i iid from the empirical measure of the sample.
 *
 * Mass 1/n is placed at every w_i under `mode`, self-convolved n times and
 * shifted back by min(x). With `Rounding::exact` the result is the exact
 * bootstrap pmf; `down` and `up` give the two legs of the bound (upper and
 * lower CDF respectively). The returned grid is in the units of x.
 */
GriddedPmf bootstrap_mean(const Sample& sample, const GridSpec& spec, Rounding mode);

/// Both placement legs of bootstrap_mean as a guaranteed CDF sandwich.
BoundedCdf bootstrap_mean_bounded(const Sample& sample, const GridSpec& spec);

//---------------------------------------------------------------------------//
/*!
 * Sign-flip (matched pairs) bootstrap mean: Ybar = (Y_1 + ... + Y_n) / n where
 * Y_i = +x_i or -x_i with probability 1/2 each, independently.
 *
 * Each term is moved onto a nonnegative grid by a shift. With `total_shift`
 * C every term is shifted by C / n (C >= max |x_i| required); by default term
 * i is shifted by |x_i| / n, so the sum lives on [0, 2 sum|x_i| / n]. The
 * returned grid is in the units of x (working grid moved by -C).
 */
struct SignFlipOptions {
    GridSpec grid = AutoGrid{4096};
    std::optional<double> total_shift;
};

/// Total shift C the options resolve to for `sample`.
double signflip_shift(const Sample& sample, const SignFlipOptions& opts);

/// Working-space grid the options resolve to for `sample`.
SupportGrid signflip_working_grid(const Sample& sample, const SignFlipOptions& opts);

GriddedPmf signflip_mean(const Sample& sample, const SignFlipOptions& opts, Rounding mode);
BoundedCdf signflip_mean_bounded(const Sample& sample, const SignFlipOptions& opts);

} // namespace convboot
