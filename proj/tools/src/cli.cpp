#include <fstream>
#include <functional>

#include <CLI11.hpp>

#include "convboot/error.hpp"
#include "convboot_app/app.hpp"
#include "convboot_app/io.hpp"

namespace convboot::app {
namespace {

void add_io(CLI::App* c, Options& o) {
    c->add_option("--input,-i", o.input, "Input file");
    c->add_option("--output,-o", o.output, "Write the JSON report here instead of stdout");
}

void add_grid(CLI::App* c, Options& o) {
    c->add_option("--grid-min", o.grid_min, "Working grid origin (must be 0)");
    c->add_option("--grid-max", o.grid_max, "Working grid end point");
    c->add_option("--grid-points", o.grid_points, "Number of grid points");
    c->add_option("--grid-step", o.grid_step, "Grid spacing");
    c->add_option("--mode", o.mode, "exact or bounds")->check(CLI::IsMember({"exact", "bounds"}));
}

void add_probs(CLI::App* c, Options& o) {
    c->add_option("--probs", o.probs, "Quantile probabilities")->delimiter(',');
    c->add_option("--at", o.at, "Values at which to report P(X <= v)")->delimiter(',');
}

void add_dump(CLI::App* c, Options& o) {
    c->add_option("--cdf-dump", o.cdf_dump, "Two-column CDF dump (bounds: PATH.lower, PATH.upper)");
}

void add_degradation(CLI::App* c, Options& o) {
    c->add_option("--threshold", o.thresholds, "Failure thresholds")->delimiter(',');
    c->add_option("--period", o.period, "Inspection period");
    auto* per_unit = c->add_flag("--per-unit", "Mix per-unit failure-time CDFs (default)");
    auto* pooled = c->add_flag("--pooled", o.pooled, "Pool all increments");
    per_unit->excludes(pooled);
    c->add_option("--p", o.p, "Failure-time quantile probability");
    c->add_option("--bracket", o.bracket, "Bisection bracket lo,hi")->delimiter(',')->expected(2);
    c->add_option("--quantile-tol", o.quantile_tol, "Bisection tolerance in time units");
}

void add_passage(CLI::App* c, Options& o) {
    c->add_option("--horizon", o.horizon, "Time grid end point");
    c->add_option("--tail-eps", o.tail_eps, "Largest tolerated mass beyond the horizon");
}

void write_report(const nlohmann::json& report, const Options& o, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output);
    if (!f) {
        throw PreconditionError("cannot write report '" + o.output + "'");
    }
    f << text;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bootstrap distributions by FFT convolution", "convboot"};
    app.require_subcommand(1);
    Options o;

    auto* mean = app.add_subcommand("mean", "Bootstrap distribution of the sample mean");
    add_io(mean, o);
    add_grid(mean, o);
    add_probs(mean, o);
    add_dump(mean, o);

    auto* flip = app.add_subcommand("signflip", "Sign-flip bootstrap distribution of the mean");
    add_io(flip, o);
    add_grid(flip, o);
    add_probs(flip, o);
    add_dump(flip, o);
    flip->add_option("--shift", o.shift, "Total shift C >= max |x|");

    auto* deg = app.add_subcommand("degradation", "Failure-time quantiles from degradation increments");
    add_io(deg, o);
    deg->add_option("--grid-step", o.grid_step, "Degradation grid spacing");
    deg->add_option("--grid-points", o.grid_points, "Degradation grid length");
    deg->add_option("--mode", o.mode, "bounds")->check(CLI::IsMember({"exact", "bounds"}));
    add_degradation(deg, o);

    auto* fpt = app.add_subcommand("first-passage", "First passage time 1 -> 3 of a three-state process");
    add_io(fpt, o);
    add_grid(fpt, o);
    add_probs(fpt, o);
    add_dump(fpt, o);
    add_passage(fpt, o);

    auto* mc = app.add_subcommand("mc", "Monte Carlo bootstrap with a convolutional companion run");
    add_io(mc, o);
    add_grid(mc, o);
    add_probs(mc, o);
    add_degradation(mc, o);
    add_passage(mc, o);
    mc->add_option("--shift", o.shift, "Total shift for the sign-flip statistic");
    mc->add_option("--statistic", o.statistic, "mean, signflip, degradation or first-passage");
    mc->add_option("--samples,-B", o.samples, "Resamples per repetition");
    mc->add_option("--reps,-R", o.reps, "Outer repetitions");
    mc->add_option("--seed", o.seed, "Seed");

    auto* bench = app.add_subcommand("bench", "Time and width ladders for convolution and Monte Carlo");
    add_io(bench, o);
    bench->add_option("--statistic", o.statistic, "Statistic to benchmark (mean)");
    bench->add_option("--n-min", o.n_min, "Smallest grid exponent");
    bench->add_option("--n-max", o.n_max, "Largest grid exponent");
    bench->add_option("--repeats", o.repeats, "Repeats per cell");
    bench->add_option("--mc-samples", o.mc_samples, "Monte Carlo sample ladder")->delimiter(',');
    bench->add_option("--seed", o.seed, "First Monte Carlo seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::vector<std::pair<CLI::App*, std::function<nlohmann::json(const Options&)>>> table{
        {mean, cmd_mean}, {flip, cmd_signflip}, {deg, cmd_degradation},
        {fpt, cmd_first_passage}, {mc, cmd_mc}, {bench, cmd_bench}};
    try {
        for (const auto& [sub, fn] : table) {
            if (sub->parsed()) {
                write_report(fn(o), o, out);
            }
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

} // namespace convboot::app
