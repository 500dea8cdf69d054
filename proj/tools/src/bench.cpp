#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "convboot/error.hpp"
#include "convboot/mc_oracle.hpp"
#include "convboot/statistics.hpp"
#include "convboot_app/app.hpp"
#include "convboot_app/io.hpp"
#include "report.hpp"

namespace convboot::app {

using detail::json;

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw PreconditionError("slope fit needs at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Mean 95% binomial interval width of the empirical CDF over the probes.
double mc_width(const McEstimate& e, std::size_t draws) {
    double w = 0.0;
    for (double f : e.estimate) {
        w += 2.0 * 1.96 * std::sqrt(f * (1.0 - f) / static_cast<double>(draws));
    }
    return w / static_cast<double>(e.estimate.size());
}

} // namespace

json cmd_bench(const Options& opt) {
    detail::Loaded in;
    std::vector<double> values{1.0, std::numbers::pi, 6.0, 8.0};
    if (!opt.input.empty()) {
        in = detail::load_input(opt);
        std::istringstream s(in.text);
        values = parse_samples(s);
    } else {
        in.digest = "fnv1a64:" + fnv1a64_hex(serialize_samples(values));
    }
    if (opt.statistic != "mean") {
        throw ParseError("bench supports --statistic mean only");
    }
    if (opt.n_min > opt.n_max || opt.n_max > 26 || opt.repeats == 0) {
        throw PreconditionError("bench needs n-min <= n-max <= 26 and at least one repeat");
    }
    const Sample sample(values);
    const detail::Stopwatch clock;

    json conv = json::array();
    std::vector<double> ns;
    std::vector<double> times;
    for (unsigned e = opt.n_min; e <= opt.n_max; ++e) {
        const std::size_t n = std::size_t{1} << e;
        double width = 0.0;
        double total = 0.0;
        for (unsigned r = 0; r < opt.repeats; ++r) {
            const detail::Stopwatch t;
            const BoundedCdf b = bootstrap_mean_bounded(sample, AutoGrid{n});
            total += t.seconds();
            width = width_stats(b).mean_width;
        }
        const double mean_time = total / opt.repeats;
        conv.push_back({{"N", n}, {"mean_seconds", mean_time}, {"width", width}});
        ns.push_back(static_cast<double>(n));
        times.push_back(std::max(mean_time, 1e-9));
    }

    std::vector<double> probes;
    for (int i = 1; i <= 64; ++i) {
        probes.push_back(sample.min() + (sample.max() - sample.min()) * i / 65.0);
    }
    json mc = json::array();
    for (std::size_t b : opt.mc_samples) {
        std::vector<double> widths;
        double total = 0.0;
        for (unsigned r = 0; r < opt.repeats; ++r) {
            McConfig cfg;
            cfg.seed = opt.seed + r;
            cfg.inner_samples = b;
            const detail::Stopwatch t;
            const McEstimate e = mc_mean_cdf(sample, probes, cfg);
            total += t.seconds();
            widths.push_back(mc_width(e, b));
        }
        mc.push_back({{"B", b},
                      {"mean_seconds", total / opt.repeats},
                      {"width", median(widths)},
                      {"widths", widths}});
    }

    json r = detail::report_header("bench", "convolutional", "bootstrap-mean", "bounds", opt, in);
    r["repeats"] = opt.repeats;
    r["convolution"] = conv;
    r["monte_carlo"] = mc;
    r["time_slope"] = ns.size() >= 2 ? json(log_log_slope(ns, times)) : json(nullptr);
    r["wall_time_seconds"] = clock.seconds();
    return r;
}

} // namespace convboot::app
