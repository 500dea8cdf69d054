#include "convboot/degradation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "convboot/bisect.hpp"
#include "convboot/error.hpp"

namespace convboot {

DegradationModel::DegradationModel(std::vector<std::vector<double>> units,
                                   double period,
                                   double threshold,
                                   bool pooled)
    : units_(std::move(units)), period_(period), threshold_(threshold), pooled_(pooled) {
    if (units_.empty()) {
        throw PreconditionError("degradation model needs at least one unit");
    }
    for (std::size_t u = 0; u < units_.size(); ++u) {
        const auto& inc = units_[u];
        if (inc.empty()) {
            throw PreconditionError("every unit needs at least one increment");
        }
        bool any_positive = false;
        for (double x : inc) {
            if (!std::isfinite(x) || x < 0.0) {
                throw PreconditionError("degradation increments must be finite and nonnegative");
            }
            any_positive = any_positive || x > 0.0;
        }
        if (!any_positive) {
            std::ostringstream msg;
            msg << "unit " << u << " never degrades, so it can never fail";
            throw PreconditionError(msg.str());
        }
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw PreconditionError("inspection period must be positive and finite");
    }
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw PreconditionError("failure threshold must be positive and finite");
    }
}

DegradationModel DegradationModel::with_threshold(double threshold) const {
    return {units_, period_, threshold, pooled_};
}

DegradationModel DegradationModel::with_pooling(bool pooled) const {
    return {units_, period_, threshold_, pooled};
}

std::vector<double> DegradationModel::all_increments() const {
    std::vector<double> all;
    for (const auto& u : units_) {
        all.insert(all.end(), u.begin(), u.end());
    }
    return all;
}

double DegradationModel::max_increment() const {
    double m = 0.0;
    for (const auto& u : units_) {
        m = std::max(m, *std::max_element(u.begin(), u.end()));
    }
    return m;
}

namespace {

struct PeriodSplit {
    unsigned full_periods; // k - 1
    double fraction;       // a in (0, 1]
};

// t in ((k-1) d, k d]  ->  (k-1, a = t/d - (k-1))
PeriodSplit split_time(double t, double period) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw PreconditionError("failure time must be positive and finite");
    }
    const double q = t / period;
    const double r = std::round(q);
    if (r >= 1.0 && std::abs(q - r) <= 1e-12 * std::max(1.0, q)) {
        return {static_cast<unsigned>(r) - 1U, 1.0};
    }
    const double k = std::ceil(q);
    return {static_cast<unsigned>(k) - 1U, q - (k - 1.0)};
}

// Index `value` would take on an unbounded grid of spacing `step`
std::size_t virtual_index(double value, double step, Rounding mode) {
    const double pos = value / step;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) <= kSnapTolerance) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(mode == Rounding::down ? std::floor(pos) : std::ceil(pos));
}

GriddedPmf empirical_pmf(std::span<const double> values, const SupportGrid& grid, Rounding mode) {
    const std::vector<double> weights(values.size(), 1.0 / static_cast<double>(values.size()));
    return place_pmf(values, weights, grid, mode);
}

} // namespace

FailureTimeCdf::FailureTimeCdf(const DegradationModel& model,
                               Rounding placement,
                               const DegradationGrid& grid,
                               double t_max)
    : model_(model), placement_(placement), t_max_(t_max), grid_(0.0, 1.0, 2) {
    const PeriodSplit last = split_time(t_max, model.period());
    const std::vector<double> all = model.all_increments();
    const double step = grid.step > 0.0 ? grid.step : decimal_resolution(all);

    const std::size_t top = virtual_index(model.max_increment(), step, placement);
    std::size_t points = grid.points;
    if (points == 0) {
        const double needed = static_cast<double>(last.full_periods + 1) * static_cast<double>(top) + 1.0;
        if (needed > static_cast<double>(grid.max_points)) {
            std::ostringstream msg;
            msg << "degradation grid with step " << step << " would need " << needed
                << " points up to t = " << t_max << " (cap " << grid.max_points
                << "); use a coarser step or raise the cap";
            throw PreconditionError(msg.str());
        }
        points = std::max<std::size_t>(2, next_pow2(static_cast<std::size_t>(needed)));
    }
    grid_ = SupportGrid(0.0, step, points);

    auto add_component = [&](std::vector<double> inc) {
        GriddedPmf pmf = empirical_pmf(inc, grid_, placement_);
        const std::size_t hi = pmf.highest_occupied();
        components_.push_back({std::move(inc), hi, forward(pmf)});
    };
    if (model.pooled()) {
        add_component(all);
    } else {
        for (const auto& u : model.units()) {
            add_component(u);
        }
    }
}

double FailureTimeCdf::failure_probability(const Component& c,
                                           unsigned full_periods,
                                           double fraction) const {
    std::vector<double> partial(c.increments);
    for (double& x : partial) {
        x *= fraction;
    }
    const GriddedPmf last_period = empirical_pmf(partial, grid_, placement_);
    const double reach = static_cast<double>(full_periods) * static_cast<double>(c.top_index) +
                         static_cast<double>(last_period.highest_occupied());
    if (reach > static_cast<double>(grid_.size() - 1)) {
        std::ostringstream msg;
        msg << "degradation sum after " << full_periods + 1 << " periods reaches index " << reach
            << " beyond the grid end " << grid_.size() - 1 << " (would wrap around)";
        throw PreconditionError(msg.str());
    }
    SpectralSeq spec = forward(last_period);
    if (full_periods > 0) {
        spec *= pow(c.spectrum, full_periods);
    }
    const GriddedPmf sum = inverse(spec);

    // Mass strictly below the threshold survives; mass at T counts as failed.
    const double cut = std::ceil(model_.threshold() / grid_.step() - kSnapTolerance);
    const auto below = static_cast<std::size_t>(std::clamp(cut, 0.0, static_cast<double>(sum.size())));
    double survive = 0.0;
    for (std::size_t j = 0; j < below; ++j) {
        survive += sum[j];
    }
    return std::clamp(1.0 - survive, 0.0, 1.0);
}

double FailureTimeCdf::operator()(double t) const {
    const PeriodSplit split = split_time(t, model_.period());
    if (placement_ == Rounding::exact && split.fraction != 1.0) {
        throw PreconditionError(
            "exact placement only handles whole inspection periods; use bound legs");
    }
    double total = 0.0;
    for (const auto& c : components_) {
        total += failure_probability(c, split.full_periods, split.fraction);
    }
    return total / static_cast<double>(components_.size());
}

double degradation_fpt_cdf(const DegradationModel& model,
                           double t,
                           const DegradationGrid& grid,
                           Rounding placement) {
    return FailureTimeCdf(model, placement, grid, t)(t);
}

double mixture_fpt_cdf(const DegradationModel& model,
                       double t,
                       const DegradationGrid& grid,
                       Rounding placement) {
    return FailureTimeCdf(model.with_pooling(false), placement, grid, t)(t);
}

QuantileBounds fpt_quantile(const DegradationModel& model,
                            double p,
                            const DegradationGrid& grid,
                            TimeBracket bracket,
                            double tol) {
    if (!(p > 0.0 && p < 1.0)) {
        throw PreconditionError("quantile probability must lie in (0, 1)");
    }
    const FailureTimeCdf upper(model, Rounding::up, grid, bracket.hi);
    const FailureTimeCdf lower(model, Rounding::down, grid, bracket.hi);
    double low = bisect_monotone(upper, p, bracket.lo, bracket.hi, tol);
    double high = bisect_monotone(lower, p, bracket.lo, bracket.hi, tol);
    if (low > high) {
        // legs agree to within the tolerance
        std::swap(low, high);
    }
    return {low, high, 0.5 * (low + high)};
}

QuantileBounds fpt_quantile(const DegradationModel& model,
                            double p,
                            const DegradationGrid& grid,
                            double tol) {
    const double lo = model.period() * 1e-6;
    double hi = model.period();
    for (int i = 0; i < 40; ++i) {
        if (FailureTimeCdf(model, Rounding::down, grid, hi)(hi) >= p) {
            return fpt_quantile(model, p, grid, {lo, hi}, tol);
        }
        hi *= 2.0;
    }
    throw NumericalError("could not find a time by which the failure probability reaches p");
}

} // namespace convboot
