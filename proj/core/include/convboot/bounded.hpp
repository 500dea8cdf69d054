#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convboot/grid.hpp"

namespace convboot {

/// Cumulative probabilities on a support grid; cum[j] = P(X <= s_j).
class CdfVector {
  public:
    // Validates: nondecreasing, within [0, 1 + 1e-9]
    CdfVector(SupportGrid grid, std::vector<double> cum);

    const SupportGrid& grid() const { return grid_; }
    std::span<const double> cum() const { return cum_; }
    double operator[](std::size_t j) const { return cum_[j]; }
    std::size_t size() const { return cum_.size(); }
    double total() const { return cum_.back(); }

  private:
    SupportGrid grid_;
    std::vector<double> cum_;
};

CdfVector cdf_from_pmf(const GriddedPmf& pmf);

/// Left-continuous generalized inverse: the grid value of the smallest index
/// j with cum[j] >= p - 1e-12.
double quantile(const CdfVector& cdf, double p);

/// P(X <= value): cum at the greatest grid point <= value (grid points within
/// the snap tolerance of `value` count as <= value). Zero below the grid.
double cdf_at(const CdfVector& cdf, double value);

/// Lower/upper CDF pair on one grid. When `guaranteed`, lower <= upper holds
/// pointwise (to 1e-9) and the pair brackets the true CDF.
struct BoundedCdf {
    CdfVector lower;
    CdfVector upper;
    bool guaranteed;
};

BoundedCdf make_bounded(CdfVector lower, CdfVector upper, bool guaranteed);

struct WidthStats {
    double mean_width;
    double max_width;
};

/// Mean and max of upper - lower over every grid point.
WidthStats width_stats(const BoundedCdf& b);

struct QuantileBounds {
    double low;
    double high;
    double mid;
};

/// The upper CDF reaches p first, so it yields `low`; the lower CDF yields
/// `high`.
QuantileBounds bounded_quantile(const BoundedCdf& b, double p);

} // namespace convboot
