#pragma once

#include "normcyc/experiments/fit.hpp"
#include "normcyc/experiments/scenarios.hpp"
#include "normcyc/io/json_io.hpp"

#include <optional>

namespace normcyc {

struct SweepConfig {
    Scenario scenario = Scenario::translate;
    Body base = Body::polytope({vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)});
    /// Path the base body was read from, empty when given inline.
    std::string base_file;
    /// Strictly decreasing, all positive.
    std::vector<double> deltas;
    /// Support measure indices i in [0, n-1].
    std::vector<int> measures;
    /// Catalog form names, see `form_by_name`.
    std::vector<std::string> forms;
    /// Monte Carlo samples per radius, at least 10^4.
    long samples = 10000;
    /// Coarsening grid and exact mesh size.
    double h = 0.05;
    std::uint64_t seed = 1;
    /// CSV path; the sidecar goes next to it with extension .json. Empty writes nothing.
    std::string output;
    /// Run the Monte Carlo pipeline also for polytope pairs, for the oracle check.
    bool mc = true;
    int quadrature_level = 4;
    unsigned threads = 0;

    int dim() const { return base.dim(); }
    /// Throws `invalid_argument` (or `precondition` for the sample count) on bad fields.
    void validate() const;
    /// Reads "base" (inline body) or "base_file" relative to `dir`.
    static SweepConfig from_json(const Json& j, const std::string& dir = "");
    Json to_json() const;
};

/// Flat table with named columns; booleans are stored as 0/1.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    long column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
};

struct ColumnFit {
    std::string column;
    /// Slopes of log value against log d_H, full range and lower half.
    LogLogFit full;
    LogLogFit lower;
    /// Largest ratio over the rows and its running-max stability over the lower half.
    std::string ratio_column;
    double max_ratio = 0;
    double stability = 0;
    bool stable = false;
    /// Only support measure distances carry a slope gate.
    bool slope_gated = false;
    bool slope_ok = true;
};

struct SweepReport {
    SweepTable table;
    std::vector<ColumnFit> fits;
    /// Per-row checks folded over the rows.
    bool oracle_ok = true;
    bool marginal_ok = true;
    bool ratios_finite = true;
    bool passed() const;
};

/// Lower-half slope gate.
inline constexpr double slope_gate = 0.45;
/// Running max at the smallest delta over the running max at the start of the lower half.
inline constexpr double stability_gate = 2.0;

/// One row for an already generated pair; `delta` is the target distance.
std::vector<std::pair<std::string, double>> sweep_row(const SweepConfig& cfg, const GeneratedPair& pair, double delta);

/// Builds every row, fits, and writes CSV plus sidecar when `cfg.output` is set.
/// A failing row is reported with its delta after the rows before it are flushed.
SweepReport run_sweep(const SweepConfig& cfg);

/// Fits and gates recomputed from a table, as `run_sweep` does.
SweepReport evaluate_table(const SweepTable& table);

std::string to_csv(const SweepTable& table);
SweepTable table_from_csv(const std::string& text);
SweepTable load_table(const std::string& path);
std::string fit_summary(const SweepReport& report);

} // namespace normcyc
