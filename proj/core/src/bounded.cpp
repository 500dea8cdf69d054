#include "convboot/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "convboot/error.hpp"

namespace convboot {

CdfVector::CdfVector(SupportGrid grid, std::vector<double> cum)
    : grid_(grid), cum_(std::move(cum)) {
    if (cum_.size() != grid_.size()) {
        throw PreconditionError("cdf length differs from grid size");
    }
    double prev = 0.0;
    for (double c : cum_) {
        if (!std::isfinite(c) || c < -1e-12 || c > 1.0 + 1e-9) {
            throw PreconditionError("cdf values must lie in [0, 1]");
        }
        if (c < prev - 1e-12) {
            throw PreconditionError("cdf must be nondecreasing");
        }
        prev = std::max(prev, c);
    }
}

CdfVector cdf_from_pmf(const GriddedPmf& pmf) {
    std::vector<double> cum(pmf.size());
    double running = 0.0;
    for (std::size_t j = 0; j < cum.size(); ++j) {
        running += pmf[j];
        cum[j] = running;
    }
    return {pmf.grid(), std::move(cum)};
}

double quantile(const CdfVector& cdf, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw PreconditionError("quantile probability must lie in (0, 1)");
    }
    const auto cum = cdf.cum();
    const double target = p - 1e-12;
    auto it = std::lower_bound(cum.begin(), cum.end(), target);
    if (it == cum.end()) {
        std::ostringstream msg;
        msg << "distribution carries total mass " << cdf.total() << " < p = " << p;
        throw PreconditionError(msg.str());
    }
    return cdf.grid().value_at(static_cast<std::size_t>(it - cum.begin()));
}

double cdf_at(const CdfVector& cdf, double value) {
    const SupportGrid& g = cdf.grid();
    const double pos = (value - g.origin()) / g.step();
    if (pos < -kSnapTolerance) {
        return 0.0;
    }
    const double last = static_cast<double>(g.size() - 1);
    if (pos >= last) {
        return cdf.total();
    }
    const double idx = std::floor(pos + kSnapTolerance);
    return cdf[static_cast<std::size_t>(std::min(idx, last))];
}

BoundedCdf make_bounded(CdfVector lower, CdfVector upper, bool guaranteed) {
    if (!(lower.grid() == upper.grid())) {
        throw PreconditionError("bound legs live on different grids");
    }
    if (guaranteed) {
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (lower[j] > upper[j] + 1e-9) {
                std::ostringstream msg;
                msg << "lower bound exceeds upper bound at grid index " << j;
                throw PreconditionError(msg.str());
            }
        }
    }
    return {std::move(lower), std::move(upper), guaranteed};
}

WidthStats width_stats(const BoundedCdf& b) {
    double sum = 0.0;
    double max = 0.0;
    for (std::size_t j = 0; j < b.lower.size(); ++j) {
        const double w = b.upper[j] - b.lower[j];
        sum += w;
        max = std::max(max, w);
    }
    return {sum / static_cast<double>(b.lower.size()), max};
}

QuantileBounds bounded_quantile(const BoundedCdf& b, double p) {
    double low = quantile(b.upper, p);
    double high = quantile(b.lower, p);
    if (low > high) {
        // Only reachable for unguaranteed pairs whose legs cross.
        std::swap(low, high);
    }
    return {low, high, 0.5 * (low + high)};
}

} // namespace convboot
