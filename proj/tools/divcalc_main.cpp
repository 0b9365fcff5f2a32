// Batch driver: divcalc list | divcalc run <scenario> [--key value]...
#include <iostream>

#include <CLI11.hpp>

#include "divcalc/scenarios.hpp"

int main(int argc, char** argv) {
    using namespace divcalc;
    CLI::App app{"Calculus and linear algebra over R, C and H: scenario runner"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list registered scenarios");
    auto* run = app.add_subcommand("run", "run one scenario and print its report");

    std::string name, format = "text";
    ScenarioOptions opts;
    run->add_option("scenario", name, "scenario name")->required();
    run->add_option("--tol", opts.series.rel_tol, "series relative tolerance")
        ->check(CLI::PositiveNumber);
    run->add_option("--max-terms", opts.series.max_terms, "series term budget")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", opts.seed, "random seed");
    run->add_option("--probes", opts.probes, "probe count for randomized checks")
        ->check(CLI::PositiveNumber);
    run->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--algebra", opts.algebra, "real, complex or quaternion")
        ->check(CLI::IsMember({"real", "complex", "quaternion"}));
    run->add_option("--file", opts.file, "fixture path (ode-fixture)");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << list_scenarios();
        return 0;
    }
    if (!find_scenario(name)) {
        std::cerr << "unknown scenario: " << name << "\n\n" << list_scenarios();
        return 2;
    }
    try {
        ScenarioReport r = run_scenario(name, opts);
        if (format == "json")
            std::cout << to_json(r).dump(2) << "\n";
        else
            std::cout << to_text(r);
        return r.verdict ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
