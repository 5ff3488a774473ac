#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgewalk/walk.hpp"

namespace edgewalk {

struct ScenarioConfig {
    std::string name = "scenario";
    WalkMode mode = WalkMode::biased;
    std::uint32_t r = 3;
    std::vector<std::uint32_t> ns;
    std::uint32_t seeds = 1;
    StopCondition stop = StopCondition::cover();
    /// Census and increment samples are taken at t = floor((1 - delta) rn/2).
    std::vector<double> deltas;
    /// Exposure mode builds the graph on the fly; otherwise a configuration
    /// model graph is generated per seed and walked.
    bool exposure = true;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    std::string out_dir;
    std::string format = "csv";
    /// Keep C(t) and vertex milestones in each row (needed for cover curves).
    bool keep_milestones = false;
    /// Abort scheduling new tasks once this many seconds have elapsed (0 = none).
    double wall_budget_seconds = 0.0;

    /// Throws std::invalid_argument describing the first violated rule.
    void validate() const;
};

/// Flat "key = value" text, '#' comments, lists comma separated. Keys: name,
/// mode, r, n, seeds, stop, deltas, exposure, seed, workers, out, format,
/// keep_milestones, wall_budget.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

struct MilestoneSample {
    double delta = 0.0;
    std::uint64_t t = 0;
    std::optional<std::uint64_t> c_t;        // C(t)
    std::optional<std::uint64_t> increment;  // C(t + 1) - C(t)
    std::uint64_t x1_green = 0;
    std::uint64_t z = 0;
    std::uint64_t phi = 0;
    std::uint64_t unvisited = 0;             // X_r
};

struct ScenarioRow {
    std::uint32_t n = 0;
    std::uint32_t seed_index = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> vertex_cover;
    std::optional<std::uint64_t> edge_cover;
    std::uint64_t steps = 0;
    StopReason stop_reason = StopReason::reached;
    std::vector<MilestoneSample> samples;
    std::vector<std::uint64_t> milestones;
    std::vector<std::uint64_t> vertex_milestones;
};

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<ScenarioRow> rows;
    std::uint64_t flagged = 0;     // runs cut by the step budget or trapped
    std::uint64_t skipped = 0;     // tasks not started because of the wall budget
    double seconds = 0.0;
};

/// Runs every (n, seed) task. The seed of task (n_index, seed_index) is
/// derive_seed(master, n, seed_index), so results do not depend on the worker
/// count. `sink` receives rows in task order as soon as they are complete.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::function<void(const ScenarioRow&)>& sink = {});

/// Seed used for task (n, seed_index).
std::uint64_t task_seed(std::uint64_t master, std::uint32_t n, std::uint32_t seed_index);

enum class CoverTarget { vertex, edge };

struct PerNMean {
    std::uint32_t n = 0;
    double mean = 0.0;
    double se = 0.0;
    std::uint64_t count = 0;
    double ratio = 0.0;  // mean / (n ln n)
};

struct ConstantEstimate {
    double constant = 0.0;
    double se = 0.0;
    double target = 0.0;
    std::vector<PerNMean> per_n;
};

/// Least-squares slope through the origin of mean cover time against n ln n.
/// Flagged and incomplete runs are excluded. Throws std::invalid_argument with
/// fewer than three distinct n values.
ConstantEstimate estimate_constant(std::span<const ScenarioRow> rows, CoverTarget target, double target_constant);

/// Asymptotic constant c in C ~ c n ln n; NaN where the cover time is not of
/// that order (biased walk with even r).
double theoretical_constant(WalkMode mode, std::uint32_t r, CoverTarget target);

struct CurvePoint {
    CoverTarget kind = CoverTarget::edge;
    std::uint32_t n = 0;
    std::uint64_t index = 0;  // t for edges, s for vertices
    double mean = 0.0;
    double se = 0.0;
    double predicted = 0.0;
    bool in_window = false;
};

/// Mean C(t) on the given t grid and mean vertex-cover time C_V(s) on the s
/// grid, for each n, against the logarithmic laws
///   (r / (2(r - 2))) n ln(rn/(rn - 2t + 1)),  (1/(r - 2)) n ln(n/(n - s + 1)).
/// Requires rows kept with milestones; throws std::out_of_range if a grid
/// value is beyond what a run recorded.
std::vector<CurvePoint> partial_cover_curve(std::span<const ScenarioRow> rows, std::uint32_t r,
                                            std::span<const std::uint64_t> t_grid,
                                            std::span<const std::uint64_t> s_grid);

void write_rows_csv(std::ostream& out, std::span<const ScenarioRow> rows, const ScenarioConfig& config);
void write_rows_json(std::ostream& out, std::span<const ScenarioRow> rows, const ScenarioConfig& config);
void write_row_csv(std::ostream& out, const ScenarioRow& row, const ScenarioConfig& config);
void write_csv_header(std::ostream& out, const ScenarioConfig& config);
/// One flat JSON object with the CSV columns.
void write_row_json(std::ostream& out, const ScenarioRow& row, const ScenarioConfig& config);

}  // namespace edgewalk
