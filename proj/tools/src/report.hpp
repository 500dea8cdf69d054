#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "convboot/bounded.hpp"
#include "convboot/grid.hpp"
#include "convboot/statistics.hpp"
#include "convboot_app/app.hpp"

namespace convboot::app::detail {

using nlohmann::json;

struct Loaded {
    std::string text;
    std::string digest;
};

Loaded load_input(const Options& opt);

json report_header(const std::string& command,
                   const std::string& method,
                   const std::string& statistic,
                   const std::string& mode,
                   const Options& opt,
                   const Loaded& in);

json grid_json(const SupportGrid& g);

/// --grid-* flags as a working-space grid spec; `fallback` when none given.
GridSpec grid_spec(const Options& opt, const GridSpec& fallback);

std::string resolve_mode(const Options& opt, const std::string& fallback);

/// Quantile and probability tables read off a CDF sandwich (or a single
/// CDF when exact).
json quantile_rows(const BoundedCdf& b, const std::vector<double>& probs);
json probability_rows(const BoundedCdf& b, const std::vector<double>& at);
json width_json(const BoundedCdf& b);

void dump_cdf(const std::string& path, const CdfVector& cdf);
void dump_bounded(const std::string& path, const BoundedCdf& b, bool exact);

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace convboot::app::detail
