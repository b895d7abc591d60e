#ifndef LCIVT_CLI_HPP
#define LCIVT_CLI_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <lcivt/rootfind.hpp>

namespace lcivt
{

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, text };

struct RunConfig {
    Mode mode = Mode::lc;
    std::optional<std::string> cutoff; // exponent literal; command default when empty
    std::optional<std::size_t> degree_cap;
    std::string command;              // eval, ivt, factor, zeros, mult, track-zeros, track-extremes, example
    std::string series_source;        // DSL text
    std::optional<std::string> interval;
    std::optional<std::string> at;    // point for eval, mult, track targets
    std::vector<std::size_t> n_list;
    std::string example;              // nilpotent-signs, nilpotent-roots, hahn-signs, double-zero
    std::map<std::string, std::string> params;
    OutputFormat output = OutputFormat::json;
};

struct Report {
    Json config;
    Json results = Json::object();
    Json certificates = Json::object();
    double seconds = 0;
    // Paper assertions that did not hold (example runs).
    std::vector<std::string> failures;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

Json root_report_json(const RootReport &r);
Json track_json(const TrackResult &t);

// Throws ParseError on malformed literals or series, DomainError on bad arguments.
Report run_command(const RunConfig &cfg);
Report run_example(const std::string &name, const std::map<std::string, std::string> &params, Mode mode,
                   const std::optional<std::string> &cutoff);

// Deterministic apart from the timing field.
std::string emit_report(const Report &r, OutputFormat format, bool with_timing = true);

std::string format_name(OutputFormat f);
OutputFormat parse_format(const std::string &s);
Mode parse_mode(const std::string &s);

} // namespace lcivt

#endif
