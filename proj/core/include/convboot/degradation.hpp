#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convboot/bounded.hpp"
#include "convboot/grid.hpp"
#include "convboot/spectral.hpp"

namespace convboot {

/*!
 * Degradation increments observed once per inspection period.
 *
 * Every unit contributes the increments seen between consecutive
 * inspections. A unit fails once its cumulative degradation meets or exceeds
 * `threshold`; inside the final period degradation is interpolated linearly.
 * With `pooled` the increments of all units form one empirical measure,
 * otherwise each unit keeps its own and the failure-time CDFs are mixed with
 * equal weight.
 */
class DegradationModel {
  public:
    DegradationModel(std::vector<std::vector<double>> units,
                     double period,
                     double threshold,
                     bool pooled);

    const std::vector<std::vector<double>>& units() const { return units_; }
    double period() const { return period_; }
    double threshold() const { return threshold_; }
    bool pooled() const { return pooled_; }

    DegradationModel with_threshold(double threshold) const;
    DegradationModel with_pooling(bool pooled) const;

    std::vector<double> all_increments() const;
    double max_increment() const;

  private:
    std::vector<std::vector<double>> units_;
    double period_;
    double threshold_;
    bool pooled_;
};

/// Degradation-space discretization.
struct DegradationGrid {
    /// Grid spacing; 0 picks the decimal resolution of the increments.
    double step = 0.0;
    /// Fixed number of points; 0 picks the smallest power of two that holds
    /// the support of the degradation sum at the latest time evaluated.
    std::size_t points = 0;
    /// Upper limit for automatically sized grids.
    std::size_t max_points = std::size_t{1} << 22;
};

/*!
 * P(Z <= t) for the bootstrap failure time Z, evaluated by convolution.
 *
 * For t in ((k-1) d, k d] and a = t/d - (k-1), failure by t is
 * S = Y_1 + ... + Y_{k-1} + a Y_k >= T, whose spectrum is
 * forward(aY) * forward(Y)^(k-1). The grid is sized once for the latest
 * time `t_max`, and the increment spectra are computed once.
 *
 * Placement `down` moves degradation down, so failures come later and the
 * result is a lower bound on the CDF; `up` gives the upper bound; `exact`
 * only accepts times that are whole multiples of the period.
 */
class FailureTimeCdf {
  public:
    FailureTimeCdf(const DegradationModel& model,
                   Rounding placement,
                   const DegradationGrid& grid,
                   double t_max);

    double operator()(double t) const;

    const SupportGrid& grid() const { return grid_; }
    Rounding placement() const { return placement_; }
    double t_max() const { return t_max_; }

  private:
    struct Component {
        std::vector<double> increments;
        std::size_t top_index;
        SpectralSeq spectrum;
    };

    double failure_probability(const Component& c, unsigned full_periods, double fraction) const;

    DegradationModel model_;
    Rounding placement_;
    double t_max_;
    SupportGrid grid_;
    std::vector<Component> components_;
};

/// Pooled-increment failure-time CDF at t (delegates to the mixture when the
/// model is not pooled).
double degradation_fpt_cdf(const DegradationModel& model,
                           double t,
                           const DegradationGrid& grid,
                           Rounding placement);

/// Equal-weight mixture of per-unit failure-time CDFs at t.
double mixture_fpt_cdf(const DegradationModel& model,
                       double t,
                       const DegradationGrid& grid,
                       Rounding placement);

struct TimeBracket {
    double lo;
    double hi;
};

/// Default bisection tolerance, in time units.
inline constexpr double kDefaultTimeTolerance = 1e-3;

/*!
 * p-quantile of the failure time, bracketed by both placement legs.
 *
 * `low` is the root of the upper (round-up) CDF leg, `high` the root of the
 * lower (round-down) leg, each found by bisection to `tol`.
 */
QuantileBounds fpt_quantile(const DegradationModel& model,
                            double p,
                            const DegradationGrid& grid,
                            TimeBracket bracket,
                            double tol = kDefaultTimeTolerance);

/// As above; the bracket starts at one period and doubles until it holds
/// the quantile.
QuantileBounds fpt_quantile(const DegradationModel& model,
                            double p,
                            const DegradationGrid& grid,
                            double tol = kDefaultTimeTolerance);

} // namespace convboot
