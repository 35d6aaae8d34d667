#ifndef FLUKIN_TESTS_CLI_HARNESS_HPP
#define FLUKIN_TESTS_CLI_HARNESS_HPP

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

struct Result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Runs the CLI with `args`, capturing both streams.
inline Result run(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const auto out = dir / ("flu_out_" + tag);
    const auto err = dir / ("flu_err_" + tag);
    const std::string cmd = std::string(FLU_BINARY) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

inline std::string config(const std::string& name) { return std::string(CONFIG_DIR) + "/" + name; }
inline std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name); }

inline std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

inline std::string last_line(const std::string& s) {
    std::string t = s;
    while (!t.empty() && t.back() == '\n') t.pop_back();
    const auto pos = t.rfind('\n');
    return pos == std::string::npos ? t : t.substr(pos + 1);
}

/// Sorted top-level key names, one per line.
inline std::string key_set(const nlohmann::json& j) {
    std::set<std::string> keys;
    for (const auto& [k, _] : j.items()) keys.insert(k);
    std::string out;
    for (const auto& k : keys) out += k + "\n";
    return out;
}

/// Compares the CSV header rows and JSON key sets of every subcommand with
/// the golden files; returns one message per difference.
inline std::vector<std::string> golden_differences() {
    std::vector<std::string> diffs;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) diffs.push_back(what);
    };
    auto header = [&](const std::string& sub, const std::string& cfg, const std::string& file) {
        const Result r = run(sub + " --config " + config(cfg));
        expect(r.exit_code == 0, sub + " exited " + std::to_string(r.exit_code));
        expect(first_line(r.out) + "\n" == golden(file), sub + " header differs: " + first_line(r.out));
        return r;
    };
    auto keys = [&](const std::string& text, const std::string& file, const std::string& what) {
        try {
            expect(key_set(nlohmann::json::parse(text)) == golden(file), what + " keys differ");
        } catch (const nlohmann::json::exception& e) {
            diffs.push_back(what + " is not JSON: " + e.what());
        }
    };

    header("sweep", "sweep.json", "sweep.header");
    const Result sim = header("simulate", "simulate.json", "simulate.header");
    keys(last_line(sim.err), "verdict.keys", "simulate footer");
    const Result surf = header("surface", "surface.json", "surface.header");
    keys(last_line(surf.err), "surface_footer.keys", "surface footer");
    header("field", "field.json", "field.header");

    const Result an = run("analyze --config " + config("definite.json"));
    keys(an.out, "analyze.keys", "analyze report");
    try {
        const auto j = nlohmann::json::parse(an.out);
        for (const auto& e : j.at("real_eigenvalues")) {
            expect(key_set(e) == golden("real_eigenvalue.keys"), "real eigenvalue keys differ");
        }
    } catch (const nlohmann::json::exception& e) {
        diffs.push_back(std::string("analyze report: ") + e.what());
    }
    keys(run("analyze --config " + config("eclipse.json")).out, "analyze_eclipse.keys", "numeric-only report");

    const Result val = run("validate --json");
    keys(val.out, "validate.keys", "validate summary");
    try {
        for (const auto& s : nlohmann::json::parse(val.out).at("suites")) {
            expect(key_set(s) == golden("suite.keys"), "suite keys differ");
        }
    } catch (const nlohmann::json::exception& e) {
        diffs.push_back(std::string("validate summary: ") + e.what());
    }
    keys(last_line(run("analyze --config /nonexistent.json").err), "error.keys", "error report");
    return diffs;
}

}  // namespace cli

#endif  // FLUKIN_TESTS_CLI_HARNESS_HPP
