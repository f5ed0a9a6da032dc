#pragma once

#include "dapps/apps.hpp"
#include "dapps/overhead.hpp"
#include "dapps/plan.hpp"
#include "dapps/topology.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace YAML {
class Node;
}

namespace dapps {

struct TaskRequest {
    std::string id;
    std::set<DataKind> inputs;
    std::vector<ControlTarget> controls; // matched on (parameter, controlled_at)
    Micros deadline = 0;
    std::vector<std::string> scope;
};

struct Intent {
    std::string id;
    std::vector<TaskRequest> tasks;
    std::optional<long> dapp_cap; // per dApp-hosting node; unset means unlimited
};

// Parses an intent document (a mapping with `id`, optional `dapp_cap`, `tasks`).
Intent parse_intent(std::string_view document);
Intent parse_intent(const YAML::Node& node, const std::string& path = "intent");

// Semantic checks that need the topology (scope nodes exist).
ValidationReport validate_intent(const Intent& intent, const Topology& t);

// A node that satisfies data availability and controllability for a task.
struct Candidate {
    std::string node;
    AppKind kind = AppKind::XApp;
    std::string app_id;
    Micros data_latency = 0;    // slowest input arrival, 0 when all local
    Micros control_latency = 0; // slowest command path, 0 when all local
};

// Catalog apps whose inputs and controls cover the task and whose period fits its deadline.
std::vector<const AppSpec*> eligible_apps(const TaskRequest& task, const Catalog& catalog);

// Capacity-agnostic candidates, sorted by (node, app id).
std::vector<Candidate> candidate_nodes(const TaskRequest& task, const Topology& t,
                                       const Catalog& catalog);

// Builds the placed instance for a candidate, resolving its control bindings.
Assignment make_assignment(const TaskRequest& task, const Candidate& c, const Topology& t,
                           const Catalog& catalog);

// Everything the search routines need, precomputed once per (intent, topology, catalog, cap).
struct PreparedOption {
    Candidate candidate;
    Assignment assignment;
    std::vector<StreamContribution> streams;
    std::size_t node_index = 0;
    bool is_dapp = false;
};

struct PlacementProblem {
    std::vector<std::string> task_ids;
    std::vector<std::vector<PreparedOption>> options; // per task, capacity-respecting alone
    std::vector<std::string> node_ids;
    std::vector<ResourceVector> capacity;
    std::optional<long> dapp_cap;
    std::vector<std::string> infeasible_tasks;        // tasks left without options
};

PlacementProblem prepare_placement(const Intent& intent, const Topology& t, const Catalog& catalog,
                                   std::optional<long> dapp_cap);

// Ranking key of a complete choice: objective, then dApp count, then node ids and
// app ids in task order.
struct PlanScore {
    BitsPerSecond objective = 0;
    std::size_t dapps = 0;
    std::vector<std::string> nodes;
    std::vector<std::string> apps;
};

bool objective_less(BitsPerSecond a, BitsPerSecond b);
bool objective_equal(BitsPerSecond a, BitsPerSecond b);
bool better(const PlanScore& a, const PlanScore& b);

// `choice[i]` indexes options[i].
bool fits(const PlacementProblem& p, std::span<const std::size_t> choice);
PlanScore score(const PlacementProblem& p, std::span<const std::size_t> choice);
PlacementPlan assemble(const PlacementProblem& p, std::span<const std::size_t> choice);

struct PlaceOptions {
    // Branch-and-bound node expansions allowed for intents with more than
    // kExactTaskLimit tasks; smaller intents are always solved to optimality.
    std::size_t search_budget = 4'000'000;
};
inline constexpr std::size_t kExactTaskLimit = 10;

// Minimum-E2-traffic placement. Throws Infeasible.
PlacementPlan place(const Intent& intent, const Topology& t, const Catalog& catalog,
                    std::optional<long> dapp_cap, const PlaceOptions& opts = {});

// Re-checks data availability, controllability and resources for a plan.
ValidationReport validate_plan(const PlacementPlan& plan, const Intent& intent, const Topology& t,
                               const Catalog& catalog, std::optional<long> dapp_cap);

// Human-readable reasons a placed task satisfies each constraint.
std::vector<std::string> justify(const Assignment& a, const TaskRequest& task, const Topology& t,
                                 const PlacementPlan& plan);

// Splits an xApp into dApps, one per partition of its inputs.
std::vector<AppSpec> split_xapp(const AppSpec& spec,
                                const std::vector<std::vector<DataRequirement>>& parts);

} // namespace dapps
