#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cextdisc/extension.hpp"
#include "cextdisc/fiber.hpp"
#include "cextdisc/orbits.hpp"

namespace cextdisc::engine {

using scalars::Cyclotomic;

// A fully validated problem description: the extension group, its central
// subgroup, declared points, and sampling directives.
class ProblemSpec {
public:
    static ProblemSpec from_json(const nlohmann::json& doc);
    static ProblemSpec from_file(const std::string& path); // ParseError with line/column
    static ProblemSpec from_text(const std::string& text);
    static ProblemSpec builtin_paper_example();

    const extension::CentralExtensionGroup& group() const { return subgroup_.group(); }
    const extension::CentralSubgroupData& subgroup() const { return subgroup_; }
    const std::vector<std::pair<std::string, fiber::SpecPoint>>& named_points() const {
        return points_;
    }
    const std::vector<Cyclotomic>& free_samples() const { return freeSamples_; }

    // Named point, or inline "name=value,..." assignments.
    fiber::SpecPoint resolve_point(const std::string& key) const;

    // Deterministic sample grid: every torsion class crossed with free
    // coordinate tuples drawn from the sample values, at least `minimum`
    // points when available.
    std::vector<fiber::SpecPoint> sample_points(std::size_t minimum) const;

private:
    explicit ProblemSpec(extension::CentralSubgroupData Z) : subgroup_(std::move(Z)) {}

    extension::CentralSubgroupData subgroup_;
    std::vector<std::pair<std::string, fiber::SpecPoint>> points_;
    std::vector<Cyclotomic> freeSamples_;
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FiberRow {
    std::string pointKey;
    std::string torsionKey;
    unsigned long xiOrder = 1;
    std::vector<long> blocks;
    long irrepDim = 1;
    long blockCount = 1;
    long sd = 1;
    std::vector<long> stabilizerInvariants;
    bool basicFiber = true;
    bool simpleFiber = false;
    bool counitOrbit = false;
    std::string gramDeterminant; // canonical scalar, empty when not computed
    std::string note;
};

struct CaseRow {
    std::vector<std::string> members; // torsion class keys
    unsigned long xiOrder = 1;
    std::vector<long> blocks;
    long irrepDim = 1;
    long blockCount = 1;
    std::vector<long> stabilizerInvariants;
    bool basicFiber = true;
    std::vector<std::string> stabilizerCharacters; // sorted value tuples on Q0 generators
};

struct Report {
    std::string command;
    std::map<std::string, std::string> summary;
    std::vector<CheckLine> checks;
    std::vector<FiberRow> rows;
    std::vector<CaseRow> cases;

    bool all_pass() const;
    int exit_code() const { return all_pass() ? 0 : 1; }

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& doc);
    std::string render_text() const;
};

struct ScanOptions {
    std::size_t samples = 50;
    std::size_t maxTupleSize = 0; // 0: d + 1
    bool corruptTraceHook = false; // fault injection for negative tests
};

Report run_check(const ProblemSpec& spec);
Report run_fiber(const ProblemSpec& spec, const std::string& pointKey);
Report scan_discriminant(const ProblemSpec& spec, const ScanOptions& options);
Report run_orbit(const ProblemSpec& spec, const std::string& pointKey);
Report classify_torsion_cases(const ProblemSpec& spec);
Report run_example_paper();

// Parallelism cap: CEXTDISC_THREADS when set, hardware concurrency otherwise.
unsigned thread_cap();

} // namespace cextdisc::engine
