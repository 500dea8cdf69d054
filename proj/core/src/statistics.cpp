#include "convboot/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "convboot/error.hpp"
#include "convboot/spectral.hpp"

namespace convboot {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw PreconditionError("sample must contain at least one value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw PreconditionError("sample values must be finite");
        }
    }
}

double Sample::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Sample::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Sample::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

double exact_step(const Sample& sample) {
    return decimal_resolution(sample.values()) / static_cast<double>(sample.size());
}

namespace {

// Resolves a grid spec for a sum of n terms whose top lands at `support_top`.
SupportGrid working_grid(const GridSpec& spec, double support_top, std::size_t n) {
    const auto margin = static_cast<double>(n);
    if (const auto* g = std::get_if<ExplicitGrid>(&spec)) {
        const double span = std::abs(g->endpoint - g->origin);
        if (std::abs(g->origin) > 1e-12 * std::max(span, 1.0)) {
            throw PreconditionError("working grids for sum statistics must start at 0");
        }
        return SupportGrid::spanning(0.0, g->endpoint, g->count);
    }
    if (const auto* g = std::get_if<AutoGrid>(&spec)) {
        if (g->count < n + 3) {
            std::ostringstream msg;
            msg << "automatic grid needs more than n + 2 = " << n + 2 << " points";
            throw PreconditionError(msg.str());
        }
        if (support_top <= 0.0) {
            return {0.0, 1.0, g->count};
        }
        return {0.0, support_top / (static_cast<double>(g->count - 1) - margin), g->count};
    }
    const double step = std::get<StepGrid>(spec).step;
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw PreconditionError("grid step must be positive");
    }
    const double top_index = std::floor(support_top / step + kSnapTolerance);
    if (top_index + 1.0 + margin > static_cast<double>(kMaxStepGridPoints)) {
        std::ostringstream msg;
        msg << "grid step " << step << " needs " << top_index + 1.0 + margin << " points (cap "
            << kMaxStepGridPoints << "); use a coarser step or a bounds grid";
        throw PreconditionError(msg.str());
    }
    return {0.0, step, static_cast<std::size_t>(top_index) + 1 + n};
}

std::vector<double> mean_terms(const Sample& sample) {
    const double lo = sample.min();
    const auto n = static_cast<double>(sample.size());
    std::vector<double> w;
    w.reserve(sample.size());
    for (double x : sample.values()) {
        w.push_back((x - lo) / n);
    }
    return w;
}

} // namespace

SupportGrid mean_working_grid(const Sample& sample, const GridSpec& spec) {
    return working_grid(spec, sample.max() - sample.min(), sample.size());
}

GriddedPmf bootstrap_mean(const Sample& sample, const GridSpec& spec, Rounding mode) {
    const SupportGrid grid = mean_working_grid(sample, spec);
    const std::vector<double> w = mean_terms(sample);
    const std::vector<double> weights(w.size(), 1.0 / static_cast<double>(w.size()));
    const GriddedPmf single = place_pmf(w, weights, grid, mode);
    return self_convolve(single, static_cast<unsigned>(sample.size())).shifted(sample.min());
}

BoundedCdf bootstrap_mean_bounded(const Sample& sample, const GridSpec& spec) {
    // Round-down placement can only move mass left, so it yields the upper CDF.
    CdfVector upper = cdf_from_pmf(bootstrap_mean(sample, spec, Rounding::down));
    CdfVector lower = cdf_from_pmf(bootstrap_mean(sample, spec, Rounding::up));
    return make_bounded(std::move(lower), std::move(upper), true);
}

//---------------------------------------------------------------------------//

namespace {

struct SignFlipTerms {
    std::vector<double> neg;
    std::vector<double> pos;
    double shift;
};

SignFlipTerms signflip_terms(const Sample& sample, const SignFlipOptions& opts) {
    const auto n = static_cast<double>(sample.size());
    SignFlipTerms t;
    if (opts.total_shift) {
        const double c = *opts.total_shift;
        double largest = 0.0;
        for (double x : sample.values()) {
            largest = std::max(largest, std::abs(x));
        }
        if (!std::isfinite(c) || c < largest) {
            std::ostringstream msg;
            msg << "sign-flip shift " << c << " is below max |x| = " << largest;
            throw PreconditionError(msg.str());
        }
        for (double x : sample.values()) {
            t.neg.push_back((-std::abs(x) + c) / n);
            t.pos.push_back((std::abs(x) + c) / n);
        }
        t.shift = c;
    } else {
        double total = 0.0;
        for (double x : sample.values()) {
            t.neg.push_back(0.0);
            t.pos.push_back(2.0 * std::abs(x) / n);
            total += std::abs(x);
        }
        t.shift = total / n;
    }
    return t;
}

} // namespace

double signflip_shift(const Sample& sample, const SignFlipOptions& opts) {
    return signflip_terms(sample, opts).shift;
}

SupportGrid signflip_working_grid(const Sample& sample, const SignFlipOptions& opts) {
    const SignFlipTerms t = signflip_terms(sample, opts);
    const double top = std::accumulate(t.pos.begin(), t.pos.end(), 0.0);
    return working_grid(opts.grid, top, sample.size());
}

GriddedPmf signflip_mean(const Sample& sample, const SignFlipOptions& opts, Rounding mode) {
    const SignFlipTerms t = signflip_terms(sample, opts);
    const double top = std::accumulate(t.pos.begin(), t.pos.end(), 0.0);
    const SupportGrid grid = working_grid(opts.grid, top, sample.size());

    std::vector<GriddedPmf> terms;
    terms.reserve(sample.size());
    const double half[2] = {0.5, 0.5};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double atoms[2] = {t.neg[i], t.pos[i]};
        terms.push_back(place_pmf(atoms, half, grid, mode));
    }
    return convolve(terms).shifted(-t.shift);
}

BoundedCdf signflip_mean_bounded(const Sample& sample, const SignFlipOptions& opts) {
    CdfVector upper = cdf_from_pmf(signflip_mean(sample, opts, Rounding::down));
    CdfVector lower = cdf_from_pmf(signflip_mean(sample, opts, Rounding::up));
    return make_bounded(std::move(lower), std::move(upper), true);
}

} // namespace convboot
