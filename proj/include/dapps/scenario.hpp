#pragma once

#include "dapps/apps.hpp"
#include "dapps/conflicts.hpp"
#include "dapps/orchestrator.hpp"
#include "dapps/overhead.hpp"
#include "dapps/simulator.hpp"
#include "dapps/topology.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dapps {

// I/Q beam-management study parameters (the `sweep.srs` block).
struct SrsStudy {
    SrsConfig srs;
    long required_soundings = 20;
    std::string src;
    std::string dst;
    std::vector<Interface> chain{Interface::E2};
    Micros deadline = kRealTimeBound;
    std::vector<long> periods{5, 10, 20};
    std::vector<long> ue_counts{1, 10, 50, 100, 200};
};

struct SweepSpec {
    std::string axis;
    std::vector<double> values;
    std::vector<long> caps{0, 2, 8};
    std::vector<double> prb_shares;
    std::optional<SrsStudy> srs;
};

// One scenario file: topology, app catalog, intent, priorities, simulation
// settings and the sweep block.
struct Scenario {
    Topology topology;
    Catalog catalog;
    Intent intent;
    std::map<std::string, int> priorities;
    SimulationConfig simulation;
    SweepSpec sweep;
};

// Throws ParseError on malformed text, unknown keys or ill-typed values.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Topology, app and intent violations together.
ValidationReport validate_scenario(const Scenario& s);

struct ScenarioRun {
    PlacementPlan placed;                 // as returned by the orchestrator
    std::vector<ConflictRecord> direct;   // detected on `placed`
    std::vector<Veto> vetoes;
    PlacementPlan executed;               // after conflict resolution
    SimulationResult sim;                 // report.conflicts holds direct + implicit
};

// place -> detect_direct -> resolve -> simulate. Throws Infeasible,
// MissingPriority or InvalidScenario.
ScenarioRun run_scenario(const Scenario& s);

} // namespace dapps
