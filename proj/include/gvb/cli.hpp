#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gvb/exact.hpp"
#include "gvb/roots.hpp"

namespace gvb::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchema = "gvb-result/1";

struct JobSpec {
    std::string command;
    std::string pair = "g2-so7";
    std::optional<IntVec> parabolic;
    std::string lambda;
    std::map<std::string, Rational> substitutions;
    int cutoff = 0;
    std::string format = "json";
    std::string out;
    std::string suite;
    std::string data_dir;
    bool timing = false;
};

/// One table cell: the typed value emitted as JSON and its LaTeX rendering.
struct Cell {
    Json value;
    std::string latex;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct ResultDocument {
    Json job;
    std::vector<Table> tables;
    bool ok = true;  // false when a regression case failed
    std::optional<double> elapsed_ms;
};

struct RegressCase {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

extern const std::vector<std::string> kSuites;

/// Runs one golden-file suite ("all" runs every suite) against the files under data_dir/reference.
std::vector<RegressCase> run_suite(const std::string& suite, const std::string& data_dir);
std::string default_data_dir();

IntVec parse_crossings(const std::string& s, int rank);
std::pair<std::string, Rational> parse_substitution(const std::string& s);
std::vector<RF> job_weight(const JobSpec& job, int rank);

/// Weight in the named basis, e.g. "(x1+1)*psi1+psi2" or "(x_{1}+1)\psi_{1}+\psi_{2}".
std::string weight_string(const std::vector<RF>& coords, const std::string& basis, Style st);

ResultDocument run_job(const JobSpec& job);
Json to_json(const ResultDocument& doc);
std::string render(const ResultDocument& doc, const std::string& format);

/// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gvb::cli
