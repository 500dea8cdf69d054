#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace convboot {

/// How a value that is not on the grid is mapped to a grid index.
///
/// Values within `kSnapTolerance` steps of a grid point snap to it under every
/// mode. Otherwise `exact` rejects the value, `down` takes the greatest grid
/// point below it and `up` the least grid point above it.
enum class Rounding { exact, down, up };

inline constexpr double kSnapTolerance = 1e-6;

const char* to_string(Rounding mode);

//---------------------------------------------------------------------------//
/*!
 * Equally spaced support grid s_j = origin + j * step, j in [0, size).
 *
 * Values are computed on demand from (origin, step, size) so long grids carry
 * no cumulative summation drift.
 */
class SupportGrid {
  public:
    SupportGrid(double origin, double step, std::size_t count);

    /// Grid with `count` points from `origin` to `endpoint` inclusive.
    static SupportGrid spanning(double origin, double endpoint, std::size_t count);

    double origin() const { return origin_; }
    double step() const { return step_; }
    std::size_t size() const { return count_; }
    double front() const { return origin_; }
    double back() const { return value_at(count_ - 1); }

    double value_at(std::size_t j) const { return origin_ + static_cast<double>(j) * step_; }
    double operator[](std::size_t j) const { return value_at(j); }

    // Index of `value` under the rounding contract of `mode`
    std::size_t index_of(double value, Rounding mode) const;

    /// Same spacing and size, origin moved by `offset`.
    SupportGrid shifted(double offset) const { return {origin_ + offset, step_, count_}; }

    /// Equal when origin, step and size agree to 1e-12 relative.
    friend bool operator==(const SupportGrid& a, const SupportGrid& b);

  private:
    double origin_;
    double step_;
    std::size_t count_;
};

//---------------------------------------------------------------------------//
/*!
 * Probability masses attached to the points of a support grid.
 *
 * Sub-probability vectors (total < 1) are legal; the semi-Markov pipeline
 * folds branch probabilities into its pmfs before transforming them.
 */
class GriddedPmf {
  public:
    // Validates: masses >= 0 and total <= 1 + 1e-9
    GriddedPmf(SupportGrid grid, std::vector<double> mass);

    /// Unit mass at index 0.
    static GriddedPmf delta(const SupportGrid& grid, std::size_t index = 0);

    const SupportGrid& grid() const { return grid_; }
    std::span<const double> mass() const { return mass_; }
    double operator[](std::size_t j) const { return mass_[j]; }
    std::size_t size() const { return mass_.size(); }

    double total() const;

    /// Highest index carrying nonzero mass (0 for an all-zero vector).
    std::size_t highest_occupied() const;

    /// Mass-weighted mean of the grid values.
    double mean() const;

    /// Nonzero (value, mass) pairs in grid order.
    std::vector<std::pair<double, double>> atoms() const;

    /// The same masses attached to `grid.shifted(offset)`.
    GriddedPmf shifted(double offset) const;

    GriddedPmf scaled(double factor) const;

  private:
    SupportGrid grid_;
    std::vector<double> mass_;
};

/// Accumulates `weights[i]` at `grid.index_of(values[i], mode)`; ties add up.
GriddedPmf place_pmf(std::span<const double> values,
                     std::span<const double> weights,
                     const SupportGrid& grid,
                     Rounding mode);

/// Smallest power of ten 10^-d (d <= max_decimals) of which every value is an
/// integer multiple, to within 1e-9 of that power. Returns 10^-max_decimals
/// when the values carry more precision.
double decimal_resolution(std::span<const double> values, int max_decimals = 10);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

} // namespace convboot
