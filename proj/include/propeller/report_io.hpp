#pragma once

#include <string>
#include <vector>

#include "propeller/invariants.hpp"

namespace propeller {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double v);

/// Comma-separated dialect: header row, '.' decimal, '\n' line endings,
/// one row per sample, then a '#summary' sentinel line followed by one
/// row per invariant series.
std::string sweep_to_csv(const std::vector<SampleRecord>& records, const SweepReport& report);

/// Same content as a JSON document (2-space indent, stable key order).
std::string sweep_to_json(const ConcentricPair& pair, const std::vector<SampleRecord>& records,
                          const SweepReport& report);

struct ParsedSweepCsv {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;        // valid sample rows only
    std::vector<std::string> summary_names;
    std::vector<std::vector<double>> summary_rows;
};

/// Parses the CSV dialect back; used to check bit-exact round trips.
ParsedSweepCsv parse_sweep_csv(const std::string& text);

}  // namespace propeller
