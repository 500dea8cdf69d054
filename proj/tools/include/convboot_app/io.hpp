#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "convboot/semi_markov.hpp"

namespace convboot::app {

/// Malformed input file or command line; maps to exit status 2.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Increments grouped by unit, units in order of first appearance.
struct UnitIncrements {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> increments;
};

// One value per line; '#' starts a comment, blank lines are skipped.
std::vector<double> parse_samples(std::istream& in);
std::string serialize_samples(const std::vector<double>& values);

// CSV with header `unit,increment`, rows in inspection order.
UnitIncrements parse_degradation(std::istream& in);
std::string serialize_degradation(const UnitIncrements& data);

// CSV with header `from,to,time`.
std::vector<TransitionRecord> parse_transitions(std::istream& in);
std::string serialize_transitions(const std::vector<TransitionRecord>& records);

std::string read_file(const std::string& path);

/// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// Comma separated reals.
std::vector<double> parse_list(const std::string& text);

} // namespace convboot::app
