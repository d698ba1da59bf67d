#pragma once

// Command-line front end: each subcommand produces a Table that is rendered
// as CSV or JSON and written once, atomically.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stimpdc::cli {

enum class OutputFormat { csv, json };
enum class Arithmetic { automatic, exact, floating };

using Cell = std::variant<std::string, long long, double, bool>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> notes;
    bool passed = true;
};

struct OverlapOptions {
    std::string pump = "gauss";  // gauss | lg
    int pump_p = 0;
    int pump_l = 0;
    int ell_max = 3;
    double waist = 1.0;
    double tol = 1e-10;
};

struct SpectrumOptions {
    std::string basis = "lg";  // lg | mlg
    std::string pump = "gauss";
    int pump_p = 0;
    int pump_l = 0;
    int ell_max = 3;
    int ring_charge = 1;
    double waist = 1.0;
    double tol = 1e-10;
};

struct CloneOptions {
    int n = 1;
    int m = 2;
    int d = 2;
    bool grid = false;
    int n_max = 4;
    int m_max = 8;
    std::vector<int> dimensions{2, 4, 6, 8};
    Arithmetic arithmetic = Arithmetic::automatic;
    unsigned long long exact_budget = 1'000'000;
};

struct StateOptions {
    int n = 1;
    int q = 1;
    int d = 2;
    int target = 1;
    Arithmetic arithmetic = Arithmetic::automatic;
    unsigned long long exact_budget = 1'000'000;
};

struct FlattenOptions {
    std::string strategy = "procrustean";  // procrustean | mlg | pump
    int ell_max = 2;
    double waist = 1.0;
    int ring_charge = 1;
    std::vector<std::string> components;  // "p,l,weight" for the pump strategy
};

/// Agreement threshold between the quadrature and closed-form columns.
inline constexpr double kMethodAgreement = 1e-8;

[[nodiscard]] Table run_overlap(const OverlapOptions& options);
[[nodiscard]] Table run_spectrum(const SpectrumOptions& options);
[[nodiscard]] Table run_clone(const CloneOptions& options);
[[nodiscard]] Table run_state(const StateOptions& options);
[[nodiscard]] Table run_flatten(const FlattenOptions& options);

[[nodiscard]] std::string render(const Table& table, OutputFormat format);
[[nodiscard]] std::string render_csv(const Table& table);
[[nodiscard]] std::string render_json(const Table& table);

/// Writes via a sibling temporary file and rename(); throws std::runtime_error.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Environment variable naming the directory used when --output is not given.
inline constexpr const char* kOutputDirVariable = "STIMPDC_OUTPUT_DIR";

/// Full command-line entry point. Exit codes: 0 all checks passed, 1 a check
/// failed, 2 invalid input or I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stimpdc::cli
