#include "propeller/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace propeller {

namespace {

const char* kSampleColumns[] = {"t", "s1", "s2", "s3", "r", "R", "rho",
                                "delta_o", "delta_1", "delta_2", "delta_3",
                                "sigma_o", "ratio_sum", "closure_residual"};

std::vector<double> row_values(const SampleRecord& r) {
    return {r.t, r.s1, r.s2, r.s3, r.inradius, r.circumradius, r.rho,
            r.delta_o, r.delta_1, r.delta_2, r.delta_3,
            r.sigma_o, r.ratio_sum, r.closure_residual};
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_to_csv(const std::vector<SampleRecord>& records, const SweepReport& report) {
    std::string out;
    for (size_t i = 0; i < std::size(kSampleColumns); ++i) {
        out += kSampleColumns[i];
        out += ',';
    }
    out += "skipped\n";
    for (const SampleRecord& r : records) {
        if (r.skipped) {
            out += format_real(r.t);
            for (size_t i = 1; i < std::size(kSampleColumns); ++i) out += ',';
            out += ",true\n";
            continue;
        }
        for (double v : row_values(r)) {
            out += format_real(v);
            out += ',';
        }
        out += "false\n";
    }
    out += "#summary\n";
    out += "invariant,mean,spread,relative_spread,predicted\n";
    for (const InvariantSeries& s : report.series) {
        out += s.name;
        out += ',';
        out += format_real(s.mean);
        out += ',';
        out += format_real(s.spread);
        out += ',';
        out += format_real(s.relative_spread);
        out += ',';
        if (s.predicted) out += format_real(*s.predicted);
        out += '\n';
    }
    return out;
}

std::string sweep_to_json(const ConcentricPair& pair, const std::vector<SampleRecord>& records,
                          const SweepReport& report) {
    nlohmann::ordered_json doc;
    doc["pair"] = {
        {"kind", to_string(pair.kind)},
        {"outer", {{"a", pair.outer.a}, {"b", pair.outer.b}, {"rotation", pair.outer.rotation}}},
        {"caustic", {pair.caustic.A, pair.caustic.B, pair.caustic.C,
                     pair.caustic.D, pair.caustic.E, pair.caustic.F}},
    };
    if (pair.sigma_prediction) doc["pair"]["sigma_prediction"] = *pair.sigma_prediction;
    doc["samples"] = report.samples;
    doc["skipped"] = report.skipped;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SampleRecord& r : records) {
        nlohmann::ordered_json row;
        row["t"] = r.t;
        row["skipped"] = r.skipped;
        if (r.skipped) {
            row["reason"] = r.skip_reason;
        } else {
            const auto vals = row_values(r);
            for (size_t i = 1; i < std::size(kSampleColumns); ++i)
                row[kSampleColumns[i]] = vals[i];
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    nlohmann::ordered_json summary = nlohmann::ordered_json::array();
    for (const InvariantSeries& s : report.series) {
        nlohmann::ordered_json item;
        item["name"] = s.name;
        item["mean"] = s.mean;
        item["spread"] = s.spread;
        item["relative_spread"] = s.relative_spread;
        if (s.predicted) item["predicted"] = *s.predicted;
        summary.push_back(std::move(item));
    }
    doc["summary"] = std::move(summary);
    return doc.dump(2) + "\n";
}

ParsedSweepCsv parse_sweep_csv(const std::string& text) {
    ParsedSweepCsv parsed;
    std::istringstream in(text);
    std::string line;
    bool in_summary = false;
    bool header_done = false;
    bool summary_header_done = false;
    while (std::getline(in, line)) {
        if (line == "#summary") {
            in_summary = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (!in_summary) {
            if (!header_done) {
                parsed.columns = fields;
                header_done = true;
                continue;
            }
            if (fields.back() == "true") continue;  // skipped rows carry no values
            std::vector<double> vals;
            for (size_t i = 0; i + 1 < fields.size(); ++i)
                vals.push_back(std::strtod(fields[i].c_str(), nullptr));
            parsed.rows.push_back(std::move(vals));
        } else {
            if (!summary_header_done) {
                summary_header_done = true;
                continue;
            }
            parsed.summary_names.push_back(fields[0]);
            std::vector<double> vals;
            for (size_t i = 1; i < fields.size(); ++i)
                vals.push_back(fields[i].empty() ? std::numeric_limits<double>::quiet_NaN()
                                                 : std::strtod(fields[i].c_str(), nullptr));
            parsed.summary_rows.push_back(std::move(vals));
        }
    }
    return parsed;
}

}  // namespace propeller
