#include "convboot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "convboot/error.hpp"

namespace convboot {

const char* to_string(Rounding mode) {
    switch (mode) {
    case Rounding::exact: return "exact";
    case Rounding::down: return "down";
    case Rounding::up: return "up";
    }
    return "?";
}

SupportGrid::SupportGrid(double origin, double step, std::size_t count)
    : origin_(origin), step_(step), count_(count) {
    if (!std::isfinite(origin) || !std::isfinite(step)) {
        throw PreconditionError("grid origin and step must be finite");
    }
    if (!(step > 0.0)) {
        throw PreconditionError("grid step must be positive");
    }
    if (count < 2) {
        throw PreconditionError("grid needs at least 2 points");
    }
}

SupportGrid SupportGrid::spanning(double origin, double endpoint, std::size_t count) {
    if (!std::isfinite(origin) || !std::isfinite(endpoint)) {
        throw PreconditionError("grid endpoints must be finite");
    }
    if (count < 2) {
        throw PreconditionError("grid needs at least 2 points");
    }
    if (!(endpoint > origin)) {
        throw PreconditionError("grid endpoint must exceed its origin");
    }
    return {origin, (endpoint - origin) / static_cast<double>(count - 1), count};
}

std::size_t SupportGrid::index_of(double value, Rounding mode) const {
    if (!std::isfinite(value)) {
        throw PreconditionError("cannot place a non-finite value on the grid");
    }
    const double pos = (value - origin_) / step_;
    const double last = static_cast<double>(count_ - 1);
    if (pos < -kSnapTolerance || pos > last + kSnapTolerance) {
        std::ostringstream msg;
        msg << "value " << value << " lies outside the grid span [" << front() << ", "
            << back() << "]";
        throw PreconditionError(msg.str());
    }
    const double nearest = std::round(pos);
    double idx = nearest;
    if (std::abs(pos - nearest) > kSnapTolerance) {
        switch (mode) {
        case Rounding::exact: {
            std::ostringstream msg;
            msg.precision(17);
            msg << "value " << value << " is not on the grid (step " << step_
                << "); use bounded placement";
            throw PreconditionError(msg.str());
        }
        case Rounding::down: idx = std::floor(pos); break;
        case Rounding::up: idx = std::ceil(pos); break;
        }
    }
    return static_cast<std::size_t>(std::clamp(idx, 0.0, last));
}

bool operator==(const SupportGrid& a, const SupportGrid& b) {
    if (a.count_ != b.count_) {
        return false;
    }
    constexpr double rel = 1e-12;
    const double step_scale = std::max(a.step_, b.step_);
    if (std::abs(a.step_ - b.step_) > rel * step_scale) {
        return false;
    }
    const double span = step_scale * static_cast<double>(a.count_ - 1);
    const double origin_scale = std::max({std::abs(a.origin_), std::abs(b.origin_), span});
    return std::abs(a.origin_ - b.origin_) <= rel * origin_scale;
}

//---------------------------------------------------------------------------//

GriddedPmf::GriddedPmf(SupportGrid grid, std::vector<double> mass)
    : grid_(grid), mass_(std::move(mass)) {
    if (mass_.size() != grid_.size()) {
        throw PreconditionError("mass vector length differs from grid size");
    }
    double total = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw PreconditionError("probability masses must be finite and nonnegative");
        }
        total += m;
    }
    if (total > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "total mass " << total << " exceeds 1";
        throw PreconditionError(msg.str());
    }
}

GriddedPmf GriddedPmf::delta(const SupportGrid& grid, std::size_t index) {
    if (index >= grid.size()) {
        throw PreconditionError("delta index outside grid");
    }
    std::vector<double> mass(grid.size(), 0.0);
    mass[index] = 1.0;
    return {grid, std::move(mass)};
}

double GriddedPmf::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

std::size_t GriddedPmf::highest_occupied() const {
    for (std::size_t j = mass_.size(); j-- > 0;) {
        if (mass_[j] != 0.0) {
            return j;
        }
    }
    return 0;
}

double GriddedPmf::mean() const {
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < mass_.size(); ++j) {
        weighted += mass_[j] * grid_.value_at(j);
        total += mass_[j];
    }
    return total > 0.0 ? weighted / total : 0.0;
}

std::vector<std::pair<double, double>> GriddedPmf::atoms() const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j < mass_.size(); ++j) {
        if (mass_[j] != 0.0) {
            out.emplace_back(grid_.value_at(j), mass_[j]);
        }
    }
    return out;
}

GriddedPmf GriddedPmf::shifted(double offset) const { return {grid_.shifted(offset), mass_}; }

GriddedPmf GriddedPmf::scaled(double factor) const {
    if (!(factor >= 0.0)) {
        throw PreconditionError("pmf scale factor must be nonnegative");
    }
    std::vector<double> mass(mass_);
    for (double& m : mass) {
        m *= factor;
    }
    return {grid_, std::move(mass)};
}

GriddedPmf place_pmf(std::span<const double> values,
                     std::span<const double> weights,
                     const SupportGrid& grid,
                     Rounding mode) {
    if (values.size() != weights.size()) {
        throw PreconditionError("values and weights differ in length");
    }
    std::vector<double> mass(grid.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] >= 0.0)) {
            throw PreconditionError("weights must be nonnegative");
        }
        mass[grid.index_of(values[i], mode)] += weights[i];
    }
    return {grid, std::move(mass)};
}

double decimal_resolution(std::span<const double> values, int max_decimals) {
    double resolution = 1.0;
    for (int d = 0; d <= max_decimals; ++d) {
        resolution = std::pow(10.0, -d);
        const bool all_integral = std::all_of(values.begin(), values.end(), [&](double v) {
            const double scaled = v / resolution;
            return std::abs(scaled - std::round(scaled)) <= kSnapTolerance;
        });
        if (all_integral) {
            return resolution;
        }
    }
    return resolution;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace convboot
