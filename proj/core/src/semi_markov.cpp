#include "convboot/semi_markov.hpp"

#include <cmath>
#include <sstream>

#include "convboot/error.hpp"

namespace convboot {

SemiMarkovData extract_transitions(std::span<const TransitionRecord> records) {
    SemiMarkovData d;
    for (const auto& r : records) {
        if (!(r.sojourn > 0.0) || !std::isfinite(r.sojourn)) {
            throw PreconditionError("sojourn times must be positive and finite");
        }
        const int code = 10 * r.from_state + r.to_state;
        switch (code) {
        case 12: d.times_12.push_back(r.sojourn); break;
        case 13: d.times_13.push_back(r.sojourn); break;
        case 21: d.times_21.push_back(r.sojourn); break;
        case 23: d.times_23.push_back(r.sojourn); break;
        default: {
            std::ostringstream msg;
            msg << "unsupported transition " << r.from_state << " -> " << r.to_state;
            throw PreconditionError(msg.str());
        }
        }
    }
    const std::size_t leave1 = d.times_12.size() + d.times_13.size();
    const std::size_t leave2 = d.times_21.size() + d.times_23.size();
    if (leave1 == 0) {
        throw PreconditionError("no transitions out of state 1");
    }
    if (leave2 == 0) {
        throw PreconditionError("no transitions out of state 2");
    }
    d.p1 = static_cast<double>(d.times_13.size()) / static_cast<double>(leave1);
    d.p2 = static_cast<double>(d.times_21.size()) / static_cast<double>(leave2);
    return d;
}

namespace {

SpectralSeq weighted_spectrum(const std::vector<double>& times,
                              double weight,
                              const SupportGrid& grid,
                              Rounding mode) {
    if (times.empty()) {
        return {grid, std::vector<Complex>(grid.size())};
    }
    const std::vector<double> w(times.size(), weight / static_cast<double>(times.size()));
    return forward(place_pmf(times, w, grid, mode));
}

} // namespace

TransitionSpectra transition_spectra(const SemiMarkovData& data,
                                     const SupportGrid& grid,
                                     Rounding mode) {
    if (!(data.p1 >= 0.0 && data.p1 <= 1.0 && data.p2 >= 0.0 && data.p2 <= 1.0)) {
        throw PreconditionError("transition probabilities must lie in [0, 1]");
    }
    return {weighted_spectrum(data.times_12, 1.0 - data.p1, grid, mode),
            weighted_spectrum(data.times_13, data.p1, grid, mode),
            weighted_spectrum(data.times_21, data.p2, grid, mode),
            weighted_spectrum(data.times_23, 1.0 - data.p2, grid, mode)};
}

SpectralSeq first_passage_spectrum(const TransitionSpectra& s) {
    const SpectralSeq loop = s.f12 * s.f21;
    return s.f13 + s.f12 * (s.f23 + s.f13 * s.f21) / (SpectralSeq::identity(loop.grid()) - loop);
}

CdfVector first_passage_cdf(const SemiMarkovData& data,
                            const SupportGrid& grid,
                            Rounding mode,
                            double tail_epsilon) {
    if (std::abs(grid.origin()) > 1e-12 * grid.back()) {
        throw PreconditionError("first passage grids must start at time 0");
    }
    const GriddedPmf fpt = inverse(first_passage_spectrum(transition_spectra(data, grid, mode)));

    if (tail_epsilon < 1.0) {
        // Same spacing, twice the horizon: whatever lands past the original
        // end is mass the original grid folded back.
        const SupportGrid wide(grid.origin(), grid.step(), 2 * grid.size());
        const GriddedPmf wide_fpt =
            inverse(first_passage_spectrum(transition_spectra(data, wide, mode)));
        double tail = 0.0;
        for (std::size_t j = grid.size(); j < wide_fpt.size(); ++j) {
            tail += wide_fpt[j];
        }
        if (tail > tail_epsilon) {
            std::ostringstream msg;
            msg << "first passage mass beyond the horizon " << grid.back() << " is about " << tail
                << " (> " << tail_epsilon << "); extend the grid";
            throw NumericalError(msg.str());
        }
    }
    return cdf_from_pmf(fpt);
}

BoundedCdf first_passage_bounded(const SemiMarkovData& data,
                                 const SupportGrid& grid,
                                 double tail_epsilon) {
    CdfVector upper = first_passage_cdf(data, grid, Rounding::down, tail_epsilon);
    CdfVector lower = first_passage_cdf(data, grid, Rounding::up, tail_epsilon);
    return make_bounded(std::move(lower), std::move(upper), false);
}

} // namespace convboot
