#include "convboot/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "convboot/error.hpp"

namespace convboot {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_budget(const McConfig& cfg) {
    if (cfg.inner_samples == 0 || cfg.outer_reps == 0) {
        throw PreconditionError("Monte Carlo needs at least one sample and one repetition");
    }
    const double draws = static_cast<double>(cfg.inner_samples) * static_cast<double>(cfg.outer_reps);
    if (draws > static_cast<double>(cfg.max_draws)) {
        std::ostringstream msg;
        msg << "Monte Carlo budget exceeded: " << cfg.inner_samples << " x " << cfg.outer_reps
            << " draws > " << cfg.max_draws;
        throw PreconditionError(msg.str());
    }
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() &&
            std::abs(a.value - merged.back().value) <= 1e-12 * std::max(1.0, std::abs(a.value))) {
            merged.back().probability += a.probability;
        } else {
            merged.push_back(a);
        }
    }
    return merged;
}

// Type-7 percentile of a small set of repetition values
double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] + frac * (v[i + 1] - v[i]) : v[i];
}

McEstimate summarize(std::vector<double> at, std::vector<std::vector<double>> reps) {
    McEstimate out;
    out.at = std::move(at);
    const std::size_t m = out.at.size();
    out.estimate.assign(m, 0.0);
    out.lo.assign(m, 0.0);
    out.hi.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> col;
        col.reserve(reps.size());
        for (const auto& r : reps) {
            col.push_back(r[i]);
        }
        out.estimate[i] = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
        out.lo[i] = percentile(col, 0.025);
        out.hi[i] = percentile(col, 0.975);
    }
    out.reps = std::move(reps);
    return out;
}

template<class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> idx(0, v.size() - 1);
    return v[idx(rng)];
}

} // namespace

std::mt19937_64 rep_engine(std::uint64_t seed, std::size_t rep) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(rep)));
}

std::vector<Atom> enumerate_bootstrap_mean(const Sample& sample, std::size_t max_n) {
    const std::size_t n = sample.size();
    if (n > max_n) {
        std::ostringstream msg;
        msg << "enumeration limited to n <= " << max_n << " (got " << n << ")";
        throw PreconditionError(msg.str());
    }
    const auto x = sample.values();
    const double dn = static_cast<double>(n);
    double n_fact = 1.0;
    for (std::size_t i = 2; i <= n; ++i) {
        n_fact *= static_cast<double>(i);
    }
    const double total = std::pow(dn, dn);

    std::vector<Atom> atoms;
    std::vector<std::size_t> counts(n, 0);
    // Depth-first over count vectors c_0..c_{n-1} with sum n.
    auto visit = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == n) {
            counts[i] = left;
            double weight = n_fact;
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t c = 2; c <= counts[j]; ++c) {
                    weight /= static_cast<double>(c);
                }
                sum += static_cast<double>(counts[j]) * x[j];
            }
            atoms.push_back({sum / dn, weight / total});
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[i] = c;
            self(self, i + 1, left - c);
        }
    };
    visit(visit, 0, n);
    return merge_atoms(std::move(atoms));
}

std::vector<Atom> enumerate_signflip_mean(const Sample& sample, std::size_t max_n) {
    const std::size_t n = sample.size();
    if (n > max_n) {
        std::ostringstream msg;
        msg << "sign enumeration limited to n <= " << max_n << " (got " << n << ")";
        throw PreconditionError(msg.str());
    }
    const auto x = sample.values();
    const std::uint64_t outcomes = std::uint64_t{1} << n;
    const double p = 1.0 / static_cast<double>(outcomes);
    std::vector<Atom> atoms;
    atoms.reserve(outcomes);
    for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += (mask >> i & 1U) ? x[i] : -x[i];
        }
        atoms.push_back({sum / static_cast<double>(n), p});
    }
    return merge_atoms(std::move(atoms));
}

double atoms_cdf(std::span<const Atom> atoms, double value, double slack) {
    double c = 0.0;
    for (const auto& a : atoms) {
        if (a.value <= value + slack) {
            c += a.probability;
        }
    }
    return c;
}

double empirical_quantile(std::vector<double>& draws, double p) {
    if (draws.empty()) {
        throw PreconditionError("no draws to take a quantile of");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw PreconditionError("quantile probability must lie in (0, 1)");
    }
    const double rank = std::ceil(p * static_cast<double>(draws.size()) - 1e-9);
    const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(draws.size()))) - 1;
    std::nth_element(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(k), draws.end());
    return draws[k];
}

McEstimate mc_mean(const Sample& sample, std::span<const double> probs, const McConfig& cfg) {
    check_budget(cfg);
    const auto x = sample.values();
    const double n = static_cast<double>(sample.size());
    std::vector<std::vector<double>> reps;
    std::vector<double> draws(cfg.inner_samples);
    for (std::size_t r = 0; r < cfg.outer_reps; ++r) {
        auto rng = rep_engine(cfg.seed, r);
        std::uniform_int_distribution<std::size_t> idx(0, x.size() - 1);
        for (auto& d : draws) {
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sum += x[idx(rng)];
            }
            d = sum / n;
        }
        std::vector<double> q;
        for (double p : probs) {
            q.push_back(empirical_quantile(draws, p));
        }
        reps.push_back(std::move(q));
    }
    return summarize({probs.begin(), probs.end()}, std::move(reps));
}

namespace {

std::vector<double> empirical_cdf(std::vector<double>& draws, std::span<const double> values) {
    std::sort(draws.begin(), draws.end());
    std::vector<double> cdf;
    for (double v : values) {
        // Sums of the same terms can differ in the last bits; a relative
        // slack keeps atoms sitting exactly on v counted.
        const double cut = v + 1e-9 * std::max(1.0, std::abs(v));
        const auto below = std::upper_bound(draws.begin(), draws.end(), cut) - draws.begin();
        cdf.push_back(static_cast<double>(below) / static_cast<double>(draws.size()));
    }
    return cdf;
}

} // namespace

McEstimate mc_mean_cdf(const Sample& sample, std::span<const double> values, const McConfig& cfg) {
    check_budget(cfg);
    const auto x = sample.values();
    const double n = static_cast<double>(sample.size());
    std::vector<std::vector<double>> reps;
    std::vector<double> draws(cfg.inner_samples);
    for (std::size_t r = 0; r < cfg.outer_reps; ++r) {
        auto rng = rep_engine(cfg.seed, r);
        std::uniform_int_distribution<std::size_t> idx(0, x.size() - 1);
        for (auto& d : draws) {
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sum += x[idx(rng)];
            }
            d = sum / n;
        }
        reps.push_back(empirical_cdf(draws, values));
    }
    return summarize({values.begin(), values.end()}, std::move(reps));
}

McEstimate mc_signflip(const Sample& sample, std::span<const double> values, const McConfig& cfg) {
    check_budget(cfg);
    const auto x = sample.values();
    const double n = static_cast<double>(sample.size());
    std::vector<std::vector<double>> reps;
    std::vector<double> draws(cfg.inner_samples);
    for (std::size_t r = 0; r < cfg.outer_reps; ++r) {
        auto rng = rep_engine(cfg.seed, r);
        std::bernoulli_distribution coin(0.5);
        for (auto& d : draws) {
            double sum = 0.0;
            for (double xi : x) {
                sum += coin(rng) ? xi : -xi;
            }
            d = sum / n;
        }
        reps.push_back(empirical_cdf(draws, values));
    }
    return summarize({values.begin(), values.end()}, std::move(reps));
}

double draw_failure_time(const DegradationModel& model, std::mt19937_64& rng) {
    const std::vector<double>* pool = nullptr;
    std::vector<double> pooled;
    if (model.pooled()) {
        pooled = model.all_increments();
        pool = &pooled;
    } else {
        pool = &pick(model.units(), rng);
    }
    std::uniform_int_distribution<std::size_t> idx(0, pool->size() - 1);
    const double threshold = model.threshold();
    double sum = 0.0;
    for (std::size_t steps = 0; steps < 100'000'000; ++steps) {
        const double y = (*pool)[idx(rng)];
        if (sum + y >= threshold) {
            return model.period() * (static_cast<double>(steps) + (threshold - sum) / y);
        }
        sum += y;
    }
    throw NumericalError("simulated unit did not reach the threshold");
}

McEstimate mc_degradation_quantile(const DegradationModel& model, double p, const McConfig& cfg) {
    check_budget(cfg);
    // Pooled draws index a flattened copy once rather than per draw.
    const DegradationModel flat =
        model.pooled() ? DegradationModel({model.all_increments()}, model.period(), model.threshold(), false)
                       : model;
    std::vector<std::vector<double>> reps;
    std::vector<double> draws(cfg.inner_samples);
    for (std::size_t r = 0; r < cfg.outer_reps; ++r) {
        auto rng = rep_engine(cfg.seed, r);
        for (auto& d : draws) {
            d = draw_failure_time(flat, rng);
        }
        reps.push_back({empirical_quantile(draws, p)});
    }
    return summarize({p}, std::move(reps));
}

McEstimate mc_first_passage(const SemiMarkovData& data,
                            std::span<const double> probs,
                            const McConfig& cfg) {
    check_budget(cfg);
    if ((1.0 - data.p1) * data.p2 >= 1.0) {
        throw PreconditionError("state 3 is unreachable from state 1");
    }
    auto require = [](const std::vector<double>& v, double prob, const char* name) {
        if (prob > 0.0 && v.empty()) {
            throw PreconditionError(std::string("no observed sojourns for transition ") + name);
        }
    };
    require(data.times_13, data.p1, "1->3");
    require(data.times_12, 1.0 - data.p1, "1->2");
    require(data.times_21, data.p2, "2->1");
    require(data.times_23, 1.0 - data.p2, "2->3");

    std::vector<std::vector<double>> reps;
    std::vector<double> draws(cfg.inner_samples);
    for (std::size_t r = 0; r < cfg.outer_reps; ++r) {
        auto rng = rep_engine(cfg.seed, r);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& d : draws) {
            double t = 0.0;
            int state = 1;
            std::size_t steps = 0;
            while (state != 3) {
                if (++steps > 10'000'000) {
                    throw NumericalError("simulated path did not reach state 3");
                }
                if (state == 1) {
                    if (u(rng) < data.p1) {
                        t += pick(data.times_13, rng);
                        state = 3;
                    } else {
                        t += pick(data.times_12, rng);
                        state = 2;
                    }
                } else {
                    if (u(rng) < data.p2) {
                        t += pick(data.times_21, rng);
                        state = 1;
                    } else {
                        t += pick(data.times_23, rng);
                        state = 3;
                    }
                }
            }
            d = t;
        }
        std::vector<double> q;
        for (double p : probs) {
            q.push_back(empirical_quantile(draws, p));
        }
        reps.push_back(std::move(q));
    }
    return summarize({probs.begin(), probs.end()}, std::move(reps));
}

double mean_absolute_error(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw PreconditionError("MAE needs two nonempty sequences of equal length");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::abs(a[i] - b[i]);
    }
    return s / static_cast<double>(a.size());
}

} // namespace convboot
