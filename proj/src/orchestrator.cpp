#include "dapps/orchestrator.hpp"
#include "dapps/errors.hpp"
#include "yaml_util.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dapps {

// ── Intent parsing ──────────────────────────────────────────────────────────

Intent parse_intent(const YAML::Node& node, const std::string& path) {
    yaml::check_keys(node, path, {"id", "dapp_cap", "tasks"});
    Intent intent;
    intent.id = yaml::get_or<std::string>(node, path, "id", "");
    if (node["dapp_cap"]) {
        long cap = yaml::get<long>(node, path, "dapp_cap");
        if (cap < 0) yaml::fail(node["dapp_cap"], path + ".dapp_cap", "must be >= 0");
        intent.dapp_cap = cap;
    }

    auto tasks = yaml::require(node, path, "tasks");
    yaml::expect_seq(tasks, path + ".tasks");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto tp = yaml::item(path + ".tasks", i);
        const auto& tn = tasks[i];
        yaml::check_keys(tn, tp, {"id", "inputs", "controls", "deadline_us", "scope"});

        TaskRequest task;
        task.id = yaml::get<std::string>(tn, tp, "id");
        if (!ids.insert(task.id).second) yaml::fail(tn["id"], tp + ".id", "duplicate task id");

        if (auto in = tn["inputs"]) {
            yaml::expect_seq(in, tp + ".inputs");
            for (std::size_t k = 0; k < in.size(); ++k)
                task.inputs.insert(yaml::data_kind(in[k], yaml::item(tp + ".inputs", k)));
        }

        task.deadline = yaml::get<double>(tn, tp, "deadline_us");
        if (!(task.deadline > 0))
            yaml::fail(tn["deadline_us"], tp + ".deadline_us", "deadline must be positive");

        if (auto ctl = tn["controls"]) {
            yaml::expect_seq(ctl, tp + ".controls");
            for (std::size_t k = 0; k < ctl.size(); ++k) {
                const auto cp = yaml::item(tp + ".controls", k);
                yaml::check_keys(ctl[k], cp, {"parameter", "controlled_at", "granularity_us"});
                ControlTarget c;
                c.parameter = yaml::get<std::string>(ctl[k], cp, "parameter");
                c.controlled_at = yaml::node_kind(yaml::require(ctl[k], cp, "controlled_at"),
                                                  cp + ".controlled_at");
                c.granularity_period =
                    yaml::get_or<double>(ctl[k], cp, "granularity_us", task.deadline);
                task.controls.push_back(std::move(c));
            }
        }
        if (auto sc = tn["scope"]) task.scope = yaml::string_list(sc, tp + ".scope");
        intent.tasks.push_back(std::move(task));
    }
    return intent;
}

Intent parse_intent(std::string_view document) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(document));
    } catch (const YAML::Exception& e) {
        throw ParseError("intent", e.msg, e.mark.is_null() ? 0 : e.mark.line + 1,
                         e.mark.is_null() ? 0 : e.mark.column + 1);
    }
    if (!root || root.IsNull()) throw ParseError("intent", "empty document");
    return parse_intent(root, "intent");
}

ValidationReport validate_intent(const Intent& intent, const Topology& t) {
    ValidationReport r;
    for (const auto& task : intent.tasks) {
        if (!(task.deadline > 0)) r.add("nonpositive-deadline", task.id, "deadline must be positive");
        for (const auto& id : task.scope)
            if (!t.contains(id))
                r.add("unknown-scope-node", task.id, "scope node '" + id + "' does not exist");
    }
    return r;
}

// ── Candidates ──────────────────────────────────────────────────────────────

namespace {

bool in_scope(const TaskRequest& task, const Node& n) {
    if (task.scope.empty()) return true;
    return std::find(task.scope.begin(), task.scope.end(), n.id) != task.scope.end();
}

bool is_ran(NodeKind k) { return k == NodeKind::RU || k == NodeKind::DU || k == NodeKind::CU; }

Micros route_cost(const std::vector<Link>& route) {
    Micros c = 0;
    for (const auto& l : route) c += l.fixed_latency();
    return c;
}

// Fills `out` and returns true when `app` on `node` meets constraints (i) and (ii).
bool evaluate_candidate(const TaskRequest& task, const AppSpec& app, const Node& node,
                        const Topology& t, Candidate& out) {
    out = Candidate{node.id, app.kind, app.id, 0, 0};
    for (const auto& in : app.inputs) {
        if (is_data_local(in.kind, node.kind)) continue;
        auto sources = data_sources(t, in.kind, node, task.scope);
        if (sources.empty()) return false;
        const Micros limit = std::min(task.deadline, in.freshness_deadline);
        for (const Node* s : sources) {
            auto route = shortest_route(t, s->id, node.id, data_interfaces());
            if (!route || route->empty()) return false;
            Micros lat = transfer_latency(in.volume_bits_per_period, *route);
            if (lat > limit) return false;
            out.data_latency = std::max(out.data_latency, lat);
        }
    }
    for (const auto& c : app.controls) {
        auto targets = control_targets(t, c.controlled_at, node, task.scope);
        if (targets.empty()) return false;
        for (const Node* g : targets) {
            if (g->id == node.id) continue;
            auto route = shortest_route(t, node.id, g->id, control_interfaces());
            if (!route) return false;
            Micros lat = route_cost(*route);
            if (lat > task.deadline) return false;
            out.control_latency = std::max(out.control_latency, lat);
        }
    }
    return true;
}

} // namespace

std::vector<const AppSpec*> eligible_apps(const TaskRequest& task, const Catalog& catalog) {
    std::vector<const AppSpec*> out;
    for (const auto& app : catalog.apps()) {
        if (!(app.control_period > 0) || app.control_period > task.deadline) continue;
        bool covers = std::all_of(task.inputs.begin(), task.inputs.end(), [&](DataKind k) {
            return std::any_of(app.inputs.begin(), app.inputs.end(),
                               [&](const DataRequirement& r) { return r.kind == k; });
        });
        covers = covers && std::all_of(task.controls.begin(), task.controls.end(),
                                       [&](const ControlTarget& want) {
                                           return std::any_of(
                                               app.controls.begin(), app.controls.end(),
                                               [&](const ControlTarget& have) {
                                                   return have.parameter == want.parameter &&
                                                          have.controlled_at == want.controlled_at;
                                               });
                                       });
        if (covers) out.push_back(&app);
    }
    return out;
}

std::vector<Candidate> candidate_nodes(const TaskRequest& task, const Topology& t,
                                       const Catalog& catalog) {
    std::vector<Candidate> out;
    for (const AppSpec* app : eligible_apps(task, catalog)) {
        for (const auto& node : t.nodes()) {
            if (!can_host(node.kind, app->kind)) continue;
            if (is_ran(node.kind) && !in_scope(task, node)) continue;
            Candidate c;
            if (evaluate_candidate(task, *app, node, t, c)) out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.node, a.app_id) < std::tie(b.node, b.app_id);
    });
    return out;
}

Assignment make_assignment(const TaskRequest& task, const Candidate& c, const Topology& t,
                           const Catalog& catalog) {
    const AppSpec* app = catalog.find(c.app_id);
    if (!app) throw InvalidPlan("app " + c.app_id + " missing from the catalog");
    const Node& host = t.node(c.node);

    Assignment a;
    a.task_id = task.id;
    a.node_id = c.node;
    a.kind = app->kind;
    a.app = *app;
    a.scope = task.scope;
    for (const auto& ctl : app->controls)
        for (const Node* g : control_targets(t, ctl.controlled_at, host, task.scope))
            a.controls.push_back({ctl.parameter, g->id});
    std::sort(a.controls.begin(), a.controls.end());
    a.controls.erase(std::unique(a.controls.begin(), a.controls.end()), a.controls.end());
    return a;
}

// ── Problem preparation and scoring ─────────────────────────────────────────

PlacementProblem prepare_placement(const Intent& intent, const Topology& t, const Catalog& catalog,
                                   std::optional<long> dapp_cap) {
    PlacementProblem p;
    p.dapp_cap = dapp_cap;
    std::map<std::string, std::size_t> node_index;
    for (const auto& n : t.nodes()) {
        node_index.emplace(n.id, p.node_ids.size());
        p.node_ids.push_back(n.id);
        p.capacity.push_back(n.resources);
    }

    for (const auto& task : intent.tasks) {
        p.task_ids.push_back(task.id);
        std::vector<PreparedOption> opts;
        for (auto& c : candidate_nodes(task, t, catalog)) {
            PreparedOption o;
            o.assignment = make_assignment(task, c, t, catalog);
            o.node_index = node_index.at(c.node);
            o.is_dapp = c.kind == AppKind::DApp;
            if (!o.assignment.app.footprint.fits_within(p.capacity[o.node_index])) continue;
            if (o.is_dapp && dapp_cap && *dapp_cap < 1) continue;
            o.streams = stream_contributions(o.assignment, t);
            o.candidate = std::move(c);
            opts.push_back(std::move(o));
        }
        if (opts.empty()) p.infeasible_tasks.push_back(task.id);
        p.options.push_back(std::move(opts));
    }
    return p;
}

bool objective_less(BitsPerSecond a, BitsPerSecond b) {
    const double tol = 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
    return a < b - tol;
}

bool objective_equal(BitsPerSecond a, BitsPerSecond b) {
    return !objective_less(a, b) && !objective_less(b, a);
}

bool better(const PlanScore& a, const PlanScore& b) {
    if (objective_less(a.objective, b.objective)) return true;
    if (objective_less(b.objective, a.objective)) return false;
    if (a.dapps != b.dapps) return a.dapps < b.dapps;
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.apps < b.apps;
}

bool fits(const PlacementProblem& p, std::span<const std::size_t> choice) {
    std::vector<ResourceVector> used(p.node_ids.size());
    std::vector<long> dapps(p.node_ids.size(), 0);
    for (std::size_t i = 0; i < choice.size(); ++i) {
        const auto& o = p.options[i][choice[i]];
        used[o.node_index] += o.assignment.app.footprint;
        if (o.is_dapp) ++dapps[o.node_index];
    }
    for (std::size_t n = 0; n < used.size(); ++n) {
        if (!used[n].fits_within(p.capacity[n])) return false;
        if (p.dapp_cap && dapps[n] > *p.dapp_cap) return false;
    }
    return true;
}

PlanScore score(const PlacementProblem& p, std::span<const std::size_t> choice) {
    PlanScore s;
    std::vector<StreamContribution> streams;
    for (std::size_t i = 0; i < choice.size(); ++i) {
        const auto& o = p.options[i][choice[i]];
        streams.insert(streams.end(), o.streams.begin(), o.streams.end());
        if (o.is_dapp) ++s.dapps;
        s.nodes.push_back(o.candidate.node);
        s.apps.push_back(o.candidate.app_id);
    }
    s.objective = build_ledger(streams).e2_total();
    return s;
}

PlacementPlan assemble(const PlacementProblem& p, std::span<const std::size_t> choice) {
    PlacementPlan plan;
    std::vector<StreamContribution> streams;
    for (std::size_t i = 0; i < choice.size(); ++i) {
        const auto& o = p.options[i][choice[i]];
        plan.assignments.push_back(o.assignment);
        streams.insert(streams.end(), o.streams.begin(), o.streams.end());
    }
    plan.objective_value = build_ledger(streams).e2_total();
    return plan;
}

// ── Branch and bound ────────────────────────────────────────────────────────

namespace {

class BranchAndBound {
public:
    BranchAndBound(const PlacementProblem& p, std::size_t budget) : p_(p), budget_(budget) {
        const std::size_t n = p.options.size();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return p.options[a].size() < p.options[b].size();
        });

        // Intern E2 stream keys; other interfaces never enter the objective.
        std::map<std::tuple<std::string, std::string, DataKind>, std::size_t> keys;
        e2_.resize(n);
        for (std::size_t t = 0; t < n; ++t) {
            e2_[t].resize(p.options[t].size());
            for (std::size_t o = 0; o < p.options[t].size(); ++o)
                for (const auto& s : p.options[t][o].streams) {
                    if (s.interface != Interface::E2) continue;
                    auto [it, _] = keys.try_emplace({s.link, s.source, s.kind}, keys.size());
                    e2_[t][o].emplace_back(it->second, s.rate);
                }
        }
        stacks_.resize(keys.size());
        used_.resize(p.node_ids.size());
        dapps_.assign(p.node_ids.size(), 0);
        choice_.assign(n, 0);
    }

    std::optional<std::vector<std::size_t>> solve() {
        greedy();
        dfs(0);
        return best_choice_;
    }

private:
    double stack_max(std::size_t key) const {
        double m = 0;
        for (double r : stacks_[key]) m = std::max(m, r);
        return m;
    }

    bool admissible(std::size_t task, std::size_t opt) const {
        const auto& o = p_.options[task][opt];
        if (!(used_[o.node_index] + o.assignment.app.footprint).fits_within(p_.capacity[o.node_index]))
            return false;
        return !(o.is_dapp && p_.dapp_cap && dapps_[o.node_index] + 1 > *p_.dapp_cap);
    }

    double delta(std::size_t task, std::size_t opt) const {
        // Upper estimate is fine for ordering; exact handling happens in apply().
        double d = 0;
        std::map<std::size_t, double> seen;
        for (auto [key, rate] : e2_[task][opt]) {
            double cur = seen.count(key) ? seen[key] : stack_max(key);
            if (rate > cur) {
                d += rate - cur;
                seen[key] = rate;
            }
        }
        return d;
    }

    void apply(std::size_t task, std::size_t opt) {
        const auto& o = p_.options[task][opt];
        used_[o.node_index] += o.assignment.app.footprint;
        if (o.is_dapp) {
            ++dapps_[o.node_index];
            ++partial_dapps_;
        }
        for (auto [key, rate] : e2_[task][opt]) {
            double before = stack_max(key);
            stacks_[key].push_back(rate);
            if (rate > before) partial_ += rate - before;
        }
        choice_[task] = opt;
    }

    void undo(std::size_t task, std::size_t opt) {
        const auto& o = p_.options[task][opt];
        used_[o.node_index] -= o.assignment.app.footprint;
        if (o.is_dapp) {
            --dapps_[o.node_index];
            --partial_dapps_;
        }
        const auto& streams = e2_[task][opt];
        for (auto it = streams.rbegin(); it != streams.rend(); ++it) {
            double before = stack_max(it->first);
            stacks_[it->first].pop_back();
            partial_ -= before - stack_max(it->first);
        }
    }

    std::vector<std::size_t> ordered_options(std::size_t task) const {
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t o = 0; o < p_.options[task].size(); ++o)
            ranked.emplace_back(delta(task, o), o);
        std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
            if (objective_less(a.first, b.first)) return true;
            if (objective_less(b.first, a.first)) return false;
            const auto& oa = p_.options[task][a.second];
            const auto& ob = p_.options[task][b.second];
            return std::tie(oa.is_dapp, oa.candidate.node, oa.candidate.app_id) <
                   std::tie(ob.is_dapp, ob.candidate.node, ob.candidate.app_id);
        });
        std::vector<std::size_t> out;
        for (auto& [_, o] : ranked) out.push_back(o);
        return out;
    }

    void offer_leaf() {
        PlanScore s = score(p_, choice_);
        if (!best_ || better(s, *best_)) {
            best_ = std::move(s);
            best_choice_ = choice_;
        }
    }

    void greedy() {
        std::vector<std::pair<std::size_t, std::size_t>> applied;
        bool complete = true;
        for (std::size_t task : order_) {
            bool placed = false;
            for (std::size_t o : ordered_options(task)) {
                if (!admissible(task, o)) continue;
                apply(task, o);
                applied.emplace_back(task, o);
                placed = true;
                break;
            }
            if (!placed) {
                complete = false;
                break;
            }
        }
        if (complete) offer_leaf();
        for (auto it = applied.rbegin(); it != applied.rend(); ++it) undo(it->first, it->second);
    }

    bool prune() const {
        if (!best_) return false;
        if (objective_less(best_->objective, partial_)) return true;
        return objective_equal(partial_, best_->objective) && partial_dapps_ > best_->dapps;
    }

    void dfs(std::size_t depth) {
        if (budget_ && expansions_ >= budget_) return;
        ++expansions_;
        if (depth == order_.size()) {
            offer_leaf();
            return;
        }
        const std::size_t task = order_[depth];
        for (std::size_t o : ordered_options(task)) {
            if (!admissible(task, o)) continue;
            apply(task, o);
            if (!prune()) dfs(depth + 1);
            undo(task, o);
        }
    }

    const PlacementProblem& p_;
    std::size_t budget_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::vector<std::pair<std::size_t, double>>>> e2_;
    std::vector<std::vector<double>> stacks_;
    std::vector<ResourceVector> used_;
    std::vector<long> dapps_;
    std::vector<std::size_t> choice_;
    double partial_ = 0;
    std::size_t partial_dapps_ = 0;
    std::size_t expansions_ = 0;
    std::optional<PlanScore> best_;
    std::optional<std::vector<std::size_t>> best_choice_;
};

} // namespace

PlacementPlan place(const Intent& intent, const Topology& t, const Catalog& catalog,
                    std::optional<long> dapp_cap, const PlaceOptions& opts) {
    PlacementProblem p = prepare_placement(intent, t, catalog, dapp_cap);
    if (!p.infeasible_tasks.empty()) throw Infeasible(p.infeasible_tasks);
    if (p.task_ids.empty()) return {};

    const std::size_t budget = p.task_ids.size() > kExactTaskLimit ? opts.search_budget : 0;
    auto choice = BranchAndBound(p, budget).solve();
    if (!choice) throw Infeasible(p.task_ids);

    PlacementPlan plan = assemble(p, *choice);
    auto report = validate_plan(plan, intent, t, catalog, dapp_cap);
    if (!report.ok())
        throw std::logic_error("placement violates its own constraints: " +
                               report.violations.front().message);
    return plan;
}

// ── Validation and justification ────────────────────────────────────────────

ValidationReport validate_plan(const PlacementPlan& plan, const Intent& intent, const Topology& t,
                               const Catalog& catalog, std::optional<long> dapp_cap) {
    ValidationReport r;
    std::map<std::string, const TaskRequest*> tasks;
    for (const auto& task : intent.tasks) tasks.emplace(task.id, &task);

    std::set<std::string> seen;
    for (const auto& a : plan.assignments) {
        if (!seen.insert(a.task_id).second) r.add("duplicate-assignment", a.task_id, "task placed twice");
        auto it = tasks.find(a.task_id);
        if (it == tasks.end()) {
            r.add("unknown-task", a.task_id, "assignment for a task outside the intent");
            continue;
        }
        const Node* host = t.find(a.node_id);
        if (!host) {
            r.add("unknown-node", a.task_id, "node " + a.node_id + " does not exist");
            continue;
        }
        if (!catalog.find(a.app.id)) r.add("unknown-app", a.task_id, "app " + a.app.id + " not in catalog");
        if (!can_host(host->kind, a.kind) || a.kind != a.app.kind)
            r.add("illegal-host", a.task_id,
                  std::string(to_string(a.kind)) + " cannot run on " + a.node_id);

        auto cands = candidate_nodes(*it->second, t, catalog);
        auto c = std::find_if(cands.begin(), cands.end(), [&](const Candidate& c) {
            return c.node == a.node_id && c.app_id == a.app.id;
        });
        if (c == cands.end()) {
            r.add("data-or-control-unreachable", a.task_id,
                  "node " + a.node_id + " cannot receive the inputs or reach the controls in time");
            continue;
        }
        auto expected = make_assignment(*it->second, *c, t, catalog).controls;
        for (const auto& b : a.controls)
            if (!std::binary_search(expected.begin(), expected.end(), b))
                r.add("unexpected-control", a.task_id,
                      "binding " + b.parameter + "@" + b.node + " is not reachable");
    }
    for (const auto& task : intent.tasks)
        if (!seen.count(task.id)) r.add("unassigned-task", task.id, "task has no placement");

    for (const auto& n : t.nodes()) {
        if (!remaining_capacity(t, n.id, plan).nonnegative())
            r.add("over-capacity", n.id, "footprints exceed node resources");
        if (dapp_cap && static_cast<long>(plan.dapp_count_at(n.id)) > *dapp_cap)
            r.add("dapp-cap-exceeded", n.id, "more dApps than the configured cap");
    }
    return r;
}

std::vector<std::string> justify(const Assignment& a, const TaskRequest& task, const Topology& t,
                                 const PlacementPlan& plan) {
    std::vector<std::string> out;
    const Node& host = t.node(a.node_id);
    auto fmt = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };

    for (const auto& in : a.app.inputs) {
        const std::string kind(to_string(in.kind));
        if (is_data_local(in.kind, host.kind)) {
            out.push_back("data: " + kind + " is local at " + host.id);
            continue;
        }
        for (const Node* s : data_sources(t, in.kind, host, a.scope)) {
            auto route = shortest_route(t, s->id, host.id, data_interfaces());
            if (!route || route->empty()) continue;
            out.push_back("data: " + kind + " from " + s->id + " arrives in " +
                          fmt(transfer_latency(in.volume_bits_per_period, *route)) + " us <= " +
                          fmt(std::min(task.deadline, in.freshness_deadline)) + " us");
        }
    }
    for (const auto& b : a.controls) {
        if (b.node == host.id) {
            out.push_back("control: " + b.parameter + " is local at " + host.id);
            continue;
        }
        auto route = shortest_route(t, host.id, b.node, control_interfaces());
        out.push_back("control: " + b.parameter + " on " + b.node + " reached in " +
                      fmt(route ? route_cost(*route) : 0.0) + " us <= " + fmt(task.deadline) + " us");
    }
    auto left = remaining_capacity(t, host.id, plan);
    out.push_back("resources: " + host.id + " keeps cpu " + fmt(left.cpu) + ", gpu " +
                  fmt(left.gpu) + ", memory " + fmt(left.memory) + " MiB");
    return out;
}

// ── xApp splitting ──────────────────────────────────────────────────────────

std::vector<AppSpec> split_xapp(const AppSpec& spec,
                                const std::vector<std::vector<DataRequirement>>& parts) {
    if (parts.empty()) throw InvalidPartition("no partitions given");

    std::map<DataKind, int> covered;
    for (const auto& part : parts) {
        if (part.empty()) throw InvalidPartition("empty partition");
        for (const auto& r : part) {
            bool declared = std::any_of(spec.inputs.begin(), spec.inputs.end(),
                                        [&](const DataRequirement& in) { return in.kind == r.kind; });
            if (!declared)
                throw InvalidPartition(std::string(to_string(r.kind)) + " is not an input of " + spec.id);
            if (++covered[r.kind] > 1)
                throw InvalidPartition(std::string(to_string(r.kind)) + " appears in two partitions");
        }
    }
    for (const auto& in : spec.inputs)
        if (!covered.count(in.kind))
            throw InvalidPartition(std::string(to_string(in.kind)) + " is not covered");

    // Each part runs where its RAN-produced inputs originate. Enrichment and
    // aggregate KPMs come from the RIC and do not pin the host.
    std::vector<NodeKind> host(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::optional<NodeKind> kind;
        for (const auto& r : parts[i]) {
            NodeKind k = producer_of(r.kind);
            if (k == NodeKind::NearRtRic) continue;
            if (kind && *kind != k)
                throw InvalidPartition("partition " + std::to_string(i) + " mixes DU and CU data");
            kind = k;
        }
        if (!kind) throw InvalidPartition("partition " + std::to_string(i) + " has no RAN input");
        host[i] = *kind;
    }

    std::vector<std::vector<ControlTarget>> controls(parts.size());
    for (const auto& c : spec.controls) {
        auto it = std::find(host.begin(), host.end(), c.controlled_at);
        if (it != host.end())
            controls[static_cast<std::size_t>(it - host.begin())].push_back(c);
        else if (parts.size() == 1)
            controls[0].push_back(c);
        else
            throw InvalidPartition("control " + c.parameter + " has no partition at " +
                                   std::string(to_string(c.controlled_at)));
    }

    Bits total = 0;
    for (const auto& in : spec.inputs) total += in.volume_bits_per_period;

    std::vector<AppSpec> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        AppSpec d = spec;
        d.id = parts.size() == 1 ? spec.id + ".d" : spec.id + ".d" + std::to_string(i);
        d.kind = AppKind::DApp;
        d.inputs = parts[i];
        d.controls = controls[i];

        // Fastest real-time control granularity, 1 ms when no control is real time.
        std::optional<Micros> period;
        for (const auto& c : d.controls)
            if (c.granularity_period < kRealTimeBound)
                period = std::min(period.value_or(c.granularity_period), c.granularity_period);
        d.control_period = std::min(spec.control_period, period.value_or(1'000.0));

        Bits vol = 0;
        for (const auto& r : d.inputs) vol += r.volume_bits_per_period;
        d.footprint = spec.footprint.scaled(total > 0 ? vol / total : 1.0 / parts.size());
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace dapps
