#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cextdisc/engine.hpp"

namespace {

int emit(const cextdisc::engine::Report& report, bool jsonOut) {
    if (jsonOut)
        std::cout << report.to_json().dump(2) << "\n";
    else
        std::cout << report.render_text();
    return report.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cextdisc: group algebras of central extensions over their centers -- "
                 "traces, discriminant-ideal scans, fiber structure, and winding orbits"};
    app.require_subcommand(1);

    bool jsonOut = false;
    app.add_flag("--json", jsonOut, "emit the machine-readable report");

    std::string specPath, pointKey, exampleName;
    std::size_t maxK = 0, samples = 50;

    CLI::App* check = app.add_subcommand("check", "validate a spec and run the invariant battery");
    check->add_option("spec", specPath, "problem spec file (JSON)")->required();

    CLI::App* fiberCmd = app.add_subcommand("fiber", "fiber structure and oracles at one point");
    fiberCmd->add_option("spec", specPath, "problem spec file (JSON)")->required();
    fiberCmd->add_option("--point", pointKey, "point name or inline name=value list")->required();

    CLI::App* scan = app.add_subcommand("scan", "discriminant-ideal zero-set scan");
    scan->add_option("spec", specPath, "problem spec file (JSON)")->required();
    scan->add_option("--max-k", maxK, "largest tuple size to test (default d+1)");
    scan->add_option("--samples", samples, "minimum number of sampled points");

    CLI::App* orbit = app.add_subcommand("orbit", "winding-orbit data at one point");
    orbit->add_option("spec", specPath, "problem spec file (JSON)")->required();
    orbit->add_option("--point", pointKey, "point name or inline name=value list")->required();

    CLI::App* table = app.add_subcommand("table", "classify the torsion coordinate cases");
    table->add_option("spec", specPath, "problem spec file (JSON)")->required();

    CLI::App* example = app.add_subcommand("example", "run a built-in example end to end");
    example->add_option("name", exampleName, "example name (paper)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    using cextdisc::engine::ProblemSpec;
    using cextdisc::engine::Report;

    try {
        if (example->parsed()) {
            if (exampleName != "paper") {
                std::cerr << "unknown example '" << exampleName << "' (available: paper)\n";
                return 2;
            }
            return emit(cextdisc::engine::run_example_paper(), jsonOut);
        }

        ProblemSpec spec = ProblemSpec::from_file(specPath);
        Report report;
        if (check->parsed()) {
            report = cextdisc::engine::run_check(spec);
        } else if (fiberCmd->parsed()) {
            report = cextdisc::engine::run_fiber(spec, pointKey);
        } else if (scan->parsed()) {
            cextdisc::engine::ScanOptions options;
            options.samples = samples;
            options.maxTupleSize = maxK;
            report = cextdisc::engine::scan_discriminant(spec, options);
        } else if (orbit->parsed()) {
            report = cextdisc::engine::run_orbit(spec, pointKey);
        } else if (table->parsed()) {
            report = cextdisc::engine::classify_torsion_cases(spec);
        }
        return emit(report, jsonOut);
    } catch (const cextdisc::Error& e) {
        std::cerr << e.what() << "\n";
        // Input problems are usage errors; anything thrown later is a failure.
        std::string kind = e.kind();
        if (kind == "ParseError" || kind == "ValidationError" || kind == "PointShapeMismatch")
            return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
