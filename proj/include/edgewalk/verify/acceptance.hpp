#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace edgewalk::verify {

enum class AcceptLevel { smoke, full };

AcceptLevel parse_accept_level(std::string_view text);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptOptions {
    AcceptLevel level = AcceptLevel::smoke;
    std::uint64_t seed = 20240601;
    unsigned workers = 1;
    /// Criteria to run; empty means all.
    std::set<int> only;
};

/// Runs the criteria in order, writing one line per criterion to `report` as
/// each finishes:  "<id> PASS|FAIL <name> (<seconds>s) <detail>".
std::vector<CriterionResult> run_acceptance(const AcceptOptions& options, std::ostream& report);

/// Individual criteria, exposed for targeted runs.
CriterionResult criterion_hitting_oracle(const AcceptOptions& o);
CriterionResult criterion_exposure_uniformity(const AcceptOptions& o);
CriterionResult criterion_class_uniformity(const AcceptOptions& o);
CriterionResult criterion_unvisited_law(const AcceptOptions& o);
CriterionResult criterion_increment_law(const AcceptOptions& o);
CriterionResult criterion_return_constant(const AcceptOptions& o);
CriterionResult criterion_cover_constants(const AcceptOptions& o);
CriterionResult criterion_even_degree(const AcceptOptions& o);
CriterionResult criterion_mode_ordering(const AcceptOptions& o);
CriterionResult criterion_set_sizes(const AcceptOptions& o);
CriterionResult criterion_bound_sanity(const AcceptOptions& o);

}  // namespace edgewalk::verify
