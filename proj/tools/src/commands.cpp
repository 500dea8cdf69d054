#include <cmath>
#include <sstream>

#include "convboot/degradation.hpp"
#include "convboot/error.hpp"
#include "convboot/mc_oracle.hpp"
#include "convboot/semi_markov.hpp"
#include "convboot/statistics.hpp"
#include "convboot_app/app.hpp"
#include "convboot_app/io.hpp"
#include "report.hpp"

namespace convboot::app {

using detail::json;

namespace {

const std::vector<double> kDefaultMeanProbs{0.025, 0.05, 0.5, 0.95, 0.975};
const std::vector<double> kDefaultPassageProbs{0.1, 0.25, 0.5, 0.75, 0.9};

Sample read_sample(const detail::Loaded& in) {
    std::istringstream s(in.text);
    return Sample(parse_samples(s));
}

BoundedCdf as_bounds(const GriddedPmf& pmf) {
    CdfVector c = cdf_from_pmf(pmf);
    return make_bounded(c, c, true);
}

BoundedCdf mean_pipeline(const Sample& s, const Options& opt, const std::string& mode) {
    if (mode == "exact") {
        return as_bounds(bootstrap_mean(s, detail::grid_spec(opt, StepGrid{exact_step(s)}), Rounding::exact));
    }
    return bootstrap_mean_bounded(s, detail::grid_spec(opt, AutoGrid{4096}));
}

SignFlipOptions signflip_options(const Sample& s, const Options& opt, const std::string& mode) {
    SignFlipOptions so;
    so.total_shift = opt.shift;
    so.grid = detail::grid_spec(opt, mode == "exact" ? GridSpec{StepGrid{exact_step(s)}} : GridSpec{AutoGrid{4096}});
    return so;
}

BoundedCdf signflip_pipeline(const Sample& s, const Options& opt, const std::string& mode) {
    const SignFlipOptions so = signflip_options(s, opt, mode);
    if (mode == "exact") {
        return as_bounds(signflip_mean(s, so, Rounding::exact));
    }
    return signflip_mean_bounded(s, so);
}

SemiMarkovData read_transitions(const detail::Loaded& in) {
    std::istringstream s(in.text);
    const auto records = parse_transitions(s);
    return extract_transitions(records);
}

SupportGrid passage_grid(const Options& opt) {
    if (opt.grid_min && *opt.grid_min != 0.0) {
        throw PreconditionError("first passage grids must start at time 0");
    }
    if (!(opt.horizon > 0.0) || !std::isfinite(opt.horizon)) {
        throw PreconditionError("--horizon must be positive");
    }
    if (opt.grid_step) {
        const double count = std::floor(opt.horizon / *opt.grid_step + 1e-9) + 1.0;
        return {0.0, *opt.grid_step, static_cast<std::size_t>(count)};
    }
    return SupportGrid::spanning(0.0, opt.horizon, opt.grid_points.value_or(4096));
}

BoundedCdf passage_pipeline(const SemiMarkovData& d, const Options& opt, const std::string& mode) {
    const SupportGrid g = passage_grid(opt);
    if (mode == "exact") {
        CdfVector c = first_passage_cdf(d, g, Rounding::exact, opt.tail_eps);
        return make_bounded(c, c, false);
    }
    return first_passage_bounded(d, g, opt.tail_eps);
}

DegradationModel read_degradation(const detail::Loaded& in, const Options& opt) {
    std::istringstream s(in.text);
    UnitIncrements u = parse_degradation(s);
    if (!opt.period) {
        throw ParseError("--period is required");
    }
    if (opt.thresholds.empty()) {
        throw ParseError("--threshold is required");
    }
    return {std::move(u.increments), *opt.period, opt.thresholds.front(), opt.pooled};
}

DegradationGrid degradation_grid(const Options& opt) {
    DegradationGrid g;
    if (opt.grid_max || opt.grid_min) {
        throw ParseError("degradation grids take --grid-step and --grid-points only");
    }
    g.step = opt.grid_step.value_or(0.0);
    g.points = opt.grid_points.value_or(0);
    return g;
}

QuantileBounds degradation_quantile(const DegradationModel& m, const Options& opt) {
    const DegradationGrid g = degradation_grid(opt);
    if (opt.bracket) {
        if (opt.bracket->size() != 2) {
            throw ParseError("--bracket takes two times: lo,hi");
        }
        return fpt_quantile(m, opt.p, g, TimeBracket{(*opt.bracket)[0], (*opt.bracket)[1]}, opt.quantile_tol);
    }
    return fpt_quantile(m, opt.p, g, opt.quantile_tol);
}

const std::vector<double>& or_default(const std::vector<double>& v, const std::vector<double>& fallback) {
    return v.empty() ? fallback : v;
}

void finish(json& r, const detail::Stopwatch& clock) {
    r["wall_time_seconds"] = clock.seconds();
}

} // namespace

json cmd_mean(const Options& opt) {
    const auto in = detail::load_input(opt);
    const Sample s = read_sample(in);
    const std::string mode = detail::resolve_mode(opt, "exact");
    const detail::Stopwatch clock;
    const BoundedCdf b = mean_pipeline(s, opt, mode);
    json r = detail::report_header("mean", "convolutional", "bootstrap-mean", mode, opt, in);
    r["grid"] = detail::grid_json(b.lower.grid());
    r["quantiles"] = detail::quantile_rows(b, or_default(opt.probs, kDefaultMeanProbs));
    r["probabilities"] = detail::probability_rows(b, opt.at);
    r["width"] = detail::width_json(b);
    r["guaranteed"] = b.guaranteed;
    detail::dump_bounded(opt.cdf_dump, b, mode == "exact");
    finish(r, clock);
    return r;
}

json cmd_signflip(const Options& opt) {
    const auto in = detail::load_input(opt);
    const Sample s = read_sample(in);
    const std::string mode = detail::resolve_mode(opt, "exact");
    const detail::Stopwatch clock;
    const BoundedCdf b = signflip_pipeline(s, opt, mode);
    json r = detail::report_header("signflip", "convolutional", "signflip-mean", mode, opt, in);
    r["grid"] = detail::grid_json(b.lower.grid());
    r["shift"] = signflip_shift(s, signflip_options(s, opt, mode));
    r["quantiles"] = detail::quantile_rows(b, opt.probs);
    r["probabilities"] = detail::probability_rows(b, opt.at.empty() ? std::vector<double>{0.0} : opt.at);
    r["width"] = detail::width_json(b);
    r["guaranteed"] = b.guaranteed;
    detail::dump_bounded(opt.cdf_dump, b, mode == "exact");
    finish(r, clock);
    return r;
}

json cmd_degradation(const Options& opt) {
    const auto in = detail::load_input(opt);
    const DegradationModel base = read_degradation(in, opt);
    const std::string mode = detail::resolve_mode(opt, "bounds");
    if (mode != "bounds") {
        throw PreconditionError("failure-time quantiles are only available as bounds");
    }
    const detail::Stopwatch clock;
    json r = detail::report_header("degradation", "convolutional",
                                   base.pooled() ? "failure-time-pooled" : "failure-time-per-unit", mode,
                                   opt, in);
    json rows = json::array();
    for (double t : opt.thresholds) {
        const QuantileBounds q = degradation_quantile(base.with_threshold(t), opt);
        rows.push_back({{"threshold", t}, {"p", opt.p}, {"low", q.low}, {"high", q.high}, {"mid", q.mid}});
    }
    const DegradationGrid g = degradation_grid(opt);
    const double step = g.step > 0.0 ? g.step : decimal_resolution(base.all_increments());
    r["grid"] = {{"origin", 0.0}, {"step", step}, {"count", g.points}};
    r["period"] = base.period();
    r["quantiles"] = rows;
    r["guaranteed"] = true;
    finish(r, clock);
    return r;
}

json cmd_first_passage(const Options& opt) {
    const auto in = detail::load_input(opt);
    const SemiMarkovData d = read_transitions(in);
    const std::string mode = detail::resolve_mode(opt, "bounds");
    const detail::Stopwatch clock;
    const BoundedCdf b = passage_pipeline(d, opt, mode);
    json r = detail::report_header("first-passage", "convolutional", "first-passage-1-3", mode, opt, in);
    r["grid"] = detail::grid_json(b.lower.grid());
    r["p1"] = d.p1;
    r["p2"] = d.p2;
    r["quantiles"] = detail::quantile_rows(b, or_default(opt.probs, kDefaultPassageProbs));
    r["probabilities"] = detail::probability_rows(b, opt.at);
    r["width"] = detail::width_json(b);
    r["guaranteed"] = false;
    detail::dump_bounded(opt.cdf_dump, b, mode == "exact");
    finish(r, clock);
    return r;
}

json cmd_mc(const Options& opt) {
    const auto in = detail::load_input(opt);
    McConfig cfg;
    cfg.seed = opt.seed;
    cfg.inner_samples = opt.samples;
    cfg.outer_reps = opt.reps;

    const detail::Stopwatch clock;
    std::vector<double> estimate;
    std::vector<double> companion;
    json rows = json::array();
    auto add_rows = [&](const char* key, const McEstimate& e, const std::vector<double>& conv) {
        for (std::size_t i = 0; i < e.at.size(); ++i) {
            rows.push_back({{key, e.at[i]},
                            {"estimate", e.estimate[i]},
                            {"lo", e.lo[i]},
                            {"hi", e.hi[i]},
                            {"convolution", conv[i]}});
        }
        estimate.insert(estimate.end(), e.estimate.begin(), e.estimate.end());
        companion.insert(companion.end(), conv.begin(), conv.end());
    };

    std::string statistic;
    std::string table = "quantiles";
    if (opt.statistic == "mean") {
        statistic = "bootstrap-mean";
        const Sample s = read_sample(in);
        const auto& probs = or_default(opt.probs, kDefaultMeanProbs);
        const BoundedCdf b = mean_pipeline(s, opt, detail::resolve_mode(opt, "exact"));
        std::vector<double> conv;
        for (double p : probs) {
            conv.push_back(bounded_quantile(b, p).mid);
        }
        add_rows("p", mc_mean(s, probs, cfg), conv);
    } else if (opt.statistic == "signflip") {
        statistic = "signflip-mean";
        table = "probabilities";
        const Sample s = read_sample(in);
        const std::vector<double> at = opt.at.empty() ? std::vector<double>{0.0} : opt.at;
        const BoundedCdf b = signflip_pipeline(s, opt, detail::resolve_mode(opt, "exact"));
        std::vector<double> conv;
        for (double v : at) {
            conv.push_back(0.5 * (cdf_at(b.lower, v) + cdf_at(b.upper, v)));
        }
        add_rows("at", mc_signflip(s, at, cfg), conv);
    } else if (opt.statistic == "degradation") {
        const DegradationModel base = read_degradation(in, opt);
        statistic = base.pooled() ? "failure-time-pooled" : "failure-time-per-unit";
        for (double t : opt.thresholds) {
            const DegradationModel m = base.with_threshold(t);
            const McEstimate e = mc_degradation_quantile(m, opt.p, cfg);
            add_rows("p", e, {degradation_quantile(m, opt).mid});
            rows.back()["threshold"] = t;
        }
    } else if (opt.statistic == "first-passage") {
        statistic = "first-passage-1-3";
        const SemiMarkovData d = read_transitions(in);
        const auto& probs = or_default(opt.probs, kDefaultPassageProbs);
        const BoundedCdf b = passage_pipeline(d, opt, detail::resolve_mode(opt, "bounds"));
        std::vector<double> conv;
        for (double p : probs) {
            conv.push_back(bounded_quantile(b, p).mid);
        }
        add_rows("p", mc_first_passage(d, probs, cfg), conv);
    } else {
        throw ParseError("--statistic must be one of mean, signflip, degradation, first-passage");
    }

    json r = detail::report_header("mc", "monte-carlo", statistic, "sampling", opt, in);
    r["samples"] = opt.samples;
    r["reps"] = opt.reps;
    r["seed"] = opt.seed;
    r[table] = rows;
    r["mae"] = mean_absolute_error(estimate, companion);
    r["guaranteed"] = false;
    finish(r, clock);
    return r;
}

} // namespace convboot::app
