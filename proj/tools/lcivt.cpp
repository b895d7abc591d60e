// lcivt <command> [options]; exit codes: 0 ok, 1 assertion failure, 2 usage or parse error, 3 computation error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <lcivt/cli.hpp>
#include <lcivt/errors.hpp>

namespace
{

int fail(int code, const std::string &kind, const std::string &msg)
{
    lcivt::Json j{{"error", kind}, {"message", msg}};
    std::cerr << j.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Root finding for power series over non-Archimedean ordered fields"};
    std::string command, example, mode = "lc", output = "json", series_file, inline_src, n_list;
    std::optional<std::string> cutoff, interval, at;
    std::optional<std::size_t> degree_cap;
    std::vector<std::string> params;
    app.add_option("command", command, "eval, ivt, factor, zeros, mult, track-zeros, track-extremes, example")
        ->required()
        ->check(CLI::IsMember({"eval", "ivt", "factor", "zeros", "mult", "track-zeros", "track-extremes", "example"}));
    app.add_option("name", example, "example name: nilpotent-signs, nilpotent-roots, hahn-signs, double-zero");
    app.add_option("--mode", mode, "lc or hahn")->check(CLI::IsMember({"lc", "hahn"}));
    app.add_option("--cutoff", cutoff, "valuation cutoff, e.g. 25 or {1:50}");
    app.add_option("--degree-cap", degree_cap, "degree cap for normalization and factoring");
    app.add_option("--interval", interval, "a,b (LcNumber literals)");
    app.add_option("--at", at, "point for eval, mult and tracking targets");
    app.add_option("--n-list", n_list, "partial-sum indices, e.g. 5,10,20");
    app.add_option("--param", params, "example parameter key=value (l, h, n)");
    auto *file_opt = app.add_option("--series", series_file, "series DSL file");
    auto *inline_opt = app.add_option("--inline", inline_src, "series DSL text");
    file_opt->excludes(inline_opt);
    app.add_option("--output", output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    lcivt::RunConfig cfg;
    try {
        cfg.mode = lcivt::parse_mode(mode);
        cfg.output = lcivt::parse_format(output);
        cfg.command = command;
        cfg.cutoff = cutoff;
        cfg.degree_cap = degree_cap;
        cfg.interval = interval;
        cfg.at = at;
        cfg.example = example;
        if (!n_list.empty()) {
            std::stringstream ss(n_list);
            std::string item;
            while (std::getline(ss, item, ',')) {
                cfg.n_list.push_back(std::stoul(item));
            }
        }
        for (const auto &p : params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) {
                return fail(2, "usage", "--param expects key=value");
            }
            cfg.params[p.substr(0, eq)] = p.substr(eq + 1);
        }
    } catch (const lcivt::Error &e) {
        return fail(2, e.kind(), e.what());
    } catch (const std::exception &e) {
        return fail(2, "usage", e.what());
    }

    if (command == "example") {
        if (example.empty()) {
            return fail(2, "usage", "example needs a name");
        }
    } else {
        if (*file_opt) {
            std::ifstream in(series_file);
            if (!in) {
                return fail(2, "usage", "cannot read " + series_file);
            }
            std::stringstream ss;
            ss << in.rdbuf();
            cfg.series_source = ss.str();
        } else if (*inline_opt) {
            cfg.series_source = inline_src;
        } else {
            return fail(2, "usage", "give --series <file> or --inline <dsl>");
        }
        bool need_interval = command == "ivt" || command == "zeros" || command == "track-zeros" ||
                             command == "track-extremes";
        bool need_at = command == "eval" || command == "mult" || command == "track-extremes";
        if (need_interval && !interval) {
            return fail(2, "usage", command + " needs --interval");
        }
        if (need_at && !at) {
            return fail(2, "usage", command + " needs --at");
        }
        if ((command == "track-zeros" || command == "track-extremes") && cfg.n_list.empty()) {
            return fail(2, "usage", command + " needs --n-list");
        }
    }

    try {
        lcivt::Report rep = lcivt::run_command(cfg);
        std::cout << lcivt::emit_report(rep, cfg.output);
        return rep.failures.empty() ? 0 : 1;
    } catch (const lcivt::ParseError &e) {
        return fail(2, e.kind(), e.what());
    } catch (const lcivt::Error &e) {
        return fail(3, e.kind(), e.what());
    }
}
