#include "report.hpp"

#include <cstdio>
#include <fstream>

#include "convboot/error.hpp"
#include "convboot_app/io.hpp"

namespace convboot::app::detail {

Loaded load_input(const Options& opt) {
    if (opt.input.empty()) {
        throw ParseError("--input is required");
    }
    Loaded l;
    l.text = read_file(opt.input);
    l.digest = "fnv1a64:" + fnv1a64_hex(l.text);
    return l;
}

json report_header(const std::string& command,
                   const std::string& method,
                   const std::string& statistic,
                   const std::string& mode,
                   const Options& opt,
                   const Loaded& in) {
    json r;
    r["schema"] = kReportSchema;
    r["command"] = command;
    r["method"] = method;
    r["statistic"] = statistic;
    r["mode"] = mode;
    r["input"] = {{"path", opt.input}, {"digest", in.digest}};
    return r;
}

json grid_json(const SupportGrid& g) {
    return {{"origin", g.origin()}, {"step", g.step()}, {"count", g.size()}};
}

GridSpec grid_spec(const Options& opt, const GridSpec& fallback) {
    if (opt.grid_step) {
        if (opt.grid_points || opt.grid_max) {
            throw ParseError("--grid-step cannot be combined with --grid-points/--grid-max");
        }
        return StepGrid{*opt.grid_step};
    }
    if (opt.grid_max) {
        if (!opt.grid_points) {
            throw ParseError("--grid-max needs --grid-points");
        }
        return ExplicitGrid{opt.grid_min.value_or(0.0), *opt.grid_max, *opt.grid_points};
    }
    if (opt.grid_min) {
        throw ParseError("--grid-min needs --grid-max and --grid-points");
    }
    if (opt.grid_points) {
        return AutoGrid{*opt.grid_points};
    }
    return fallback;
}

std::string resolve_mode(const Options& opt, const std::string& fallback) {
    const std::string m = opt.mode.empty() ? fallback : opt.mode;
    if (m != "exact" && m != "bounds") {
        throw ParseError("--mode must be 'exact' or 'bounds'");
    }
    return m;
}

json quantile_rows(const BoundedCdf& b, const std::vector<double>& probs) {
    json rows = json::array();
    for (double p : probs) {
        const QuantileBounds q = bounded_quantile(b, p);
        rows.push_back({{"p", p}, {"low", q.low}, {"high", q.high}, {"mid", q.mid}});
    }
    return rows;
}

json probability_rows(const BoundedCdf& b, const std::vector<double>& at) {
    json rows = json::array();
    for (double v : at) {
        const double lo = cdf_at(b.lower, v);
        const double hi = cdf_at(b.upper, v);
        rows.push_back({{"at", v}, {"low", lo}, {"high", hi}, {"mid", 0.5 * (lo + hi)}});
    }
    return rows;
}

json width_json(const BoundedCdf& b) {
    const WidthStats w = width_stats(b);
    return {{"mean", w.mean_width}, {"max", w.max_width}};
}

void dump_cdf(const std::string& path, const CdfVector& cdf) {
    std::ofstream f(path);
    if (!f) {
        throw PreconditionError("cannot write CDF dump '" + path + "'");
    }
    char buf[64];
    for (std::size_t j = 0; j < cdf.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.15g %.17g\n", cdf.grid()[j], cdf[j]);
        f << buf;
    }
}

void dump_bounded(const std::string& path, const BoundedCdf& b, bool exact) {
    if (path.empty()) {
        return;
    }
    if (exact) {
        dump_cdf(path, b.lower);
        return;
    }
    dump_cdf(path + ".lower", b.lower);
    dump_cdf(path + ".upper", b.upper);
}

} // namespace convboot::app::detail
