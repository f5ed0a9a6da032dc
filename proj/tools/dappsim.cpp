// dappsim: validate, place, simulate and sweep dApp/xApp scenarios.
//
// Exit codes: 0 success, 1 semantic failure (validation, infeasibility,
// unresolved conflicts, unknown axis or figure), 2 parse or usage error.

#include "dapps/errors.hpp"
#include "dapps/report.hpp"
#include "dapps/scenario.hpp"
#include "dapps/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace dapps;

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kParse = 2;

struct Options {
    std::string scenario;
    std::string format = "csv";
    std::string figure;
    std::string axis;
    std::vector<double> values;
    std::optional<std::uint64_t> seed;
    std::string out;
};

// Writes to <out dir>/<name> when an output directory is set, else stdout.
void emit(const Options& o, const std::string& name, const std::string& body) {
    std::string dir = o.out;
    if (dir.empty())
        if (const char* env = std::getenv("DAPPSIM_OUT_DIR")) dir = env;
    if (dir.empty()) {
        std::cout << body;
        return;
    }
    fs::create_directories(dir);
    const fs::path target = fs::path(dir) / name;
    std::ofstream f(target);
    if (!f) throw Error("cannot write " + target.string());
    f << body;
    std::cerr << "wrote " << target.string() << '\n';
}

Scenario load(const Options& o) {
    Scenario s = load_scenario(o.scenario);
    if (o.seed) s.simulation.seed = *o.seed;
    return s;
}

bool report_violations(const Scenario& s) {
    const auto r = validate_scenario(s);
    for (const auto& v : r.violations)
        std::cerr << "error: [" << v.code << "] " << v.subject << ": " << v.message << '\n';
    return r.ok();
}

int cmd_validate(const Options& o) {
    const Scenario s = load(o);
    if (!report_violations(s)) return kSemantic;
    std::cerr << o.scenario << ": ok\n";
    return kOk;
}

int cmd_place(const Options& o) {
    const Scenario s = load(o);
    if (!report_violations(s)) return kSemantic;
    const auto plan = place(s.intent, s.topology, s.catalog, s.intent.dapp_cap);
    emit(o, "plan.json", plan_json(plan, s.intent, s.topology).dump(2) + "\n");
    return kOk;
}

int cmd_simulate(const Options& o) {
    if (o.format != "csv" && o.format != "json") throw CLI::ValidationError("--format", "csv or json");
    const Scenario s = load(o);
    if (!report_violations(s)) return kSemantic;
    const auto run = run_scenario(s);
    for (const auto& v : run.vetoes)
        std::cerr << "veto: " << v.app << " loses " << v.subject << (v.unplaced ? " (unplaced)" : "") << '\n';
    if (o.format == "json")
        emit(o, "report.json", report_json(run.sim.report).dump(2) + "\n");
    else
        emit(o, "report.csv", report_csv(run.sim.report));
    return kOk;
}

int cmd_sweep(const Options& o) {
    const Scenario s = load(o);
    if (!report_violations(s)) return kSemantic;
    if (!o.figure.empty()) {
        emit(o, o.figure + ".csv", figure_csv(s, o.figure));
        return kOk;
    }
    const std::string axis_name = o.axis.empty() ? s.sweep.axis : o.axis;
    if (axis_name.empty()) throw UnknownAxis("");
    const SweepAxis axis = parse_axis(axis_name);
    const auto& values = o.values.empty() && o.axis.empty() ? s.sweep.values : o.values;
    emit(o, "sweep_" + axis_name + ".csv", sweep_csv(axis, sweep(s, axis, values)));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dApp/xApp placement, traffic and control-loop simulator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("scenario", o.scenario, "Scenario YAML file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "Override the scenario seed");
        sub->add_option("--out", o.out, "Output directory (default: $DAPPSIM_OUT_DIR, else stdout)");
    };

    auto* validate = app.add_subcommand("validate", "Check topology, apps and intent");
    common(validate);
    auto* placecmd = app.add_subcommand("place", "Compute the placement plan as JSON");
    common(placecmd);
    auto* simulate = app.add_subcommand("simulate", "Place, resolve conflicts and simulate");
    common(simulate);
    simulate->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    auto* sweepcmd = app.add_subcommand("sweep", "Reproduce a figure table or sweep one axis");
    common(sweepcmd);
    auto* fig = sweepcmd->add_option("--figure", o.figure, "fig3, fig4 or fig5");
    auto* axis = sweepcmd->add_option("--axis", o.axis,
                                      "app_count, dapp_cap, sounding_period, num_ues or urllc_prb_share");
    sweepcmd->add_option("--values", o.values, "Comma-separated axis values")->delimiter(',');
    fig->excludes(axis);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*placecmd) return cmd_place(o);
        if (*simulate) return cmd_simulate(o);
        return cmd_sweep(o);
    } catch (const ParseError& e) {
        std::cerr << o.scenario << ": parse error: " << e.what() << '\n';
        return kParse;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible:";
        for (const auto& t : e.tasks()) std::cerr << ' ' << t;
        std::cerr << '\n';
        return kSemantic;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSemantic;
    }
}
