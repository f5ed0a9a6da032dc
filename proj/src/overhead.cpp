#include "dapps/overhead.hpp"
#include "dapps/errors.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace dapps {

bool SrsConfig::valid() const {
    return subcarriers > 0 && symbols > 0 && beams_monitored > 0 && bits_per_component > 0 &&
           sounding_period_slots > 0 && slot_duration > 0 && num_ues > 0;
}

Bits srs_payload_bits(const SrsConfig& cfg) {
    return static_cast<double>(cfg.subcarriers) * static_cast<double>(cfg.symbols) *
           static_cast<double>(cfg.beams_monitored) * 2.0 *
           static_cast<double>(cfg.bits_per_component);
}

BitsPerSecond srs_data_rate(const SrsConfig& cfg) {
    return static_cast<double>(cfg.num_ues) * srs_payload_bits(cfg) * 1e6 / cfg.sounding_period();
}

Micros transfer_latency(Bits volume, std::span<const Link> path) {
    if (path.empty()) throw EmptyPath();
    Micros fixed = 0;
    BitsPerSecond bottleneck = std::numeric_limits<double>::infinity();
    for (const auto& l : path) {
        fixed += l.fixed_latency();
        bottleneck = std::min(bottleneck, l.capacity);
    }
    return fixed + volume / bottleneck * 1e6;
}

BeamFeasibility beam_mgmt_feasible(const SrsConfig& cfg, long required_soundings,
                                   std::span<const Link> path, Micros deadline) {
    if (required_soundings < 1) throw Error("required_soundings must be >= 1");
    BeamFeasibility out;
    out.accumulation = static_cast<double>(required_soundings) * cfg.sounding_period();
    const Bits volume = static_cast<double>(required_soundings) * srs_payload_bits(cfg) *
                        static_cast<double>(cfg.num_ues);
    out.transfer = transfer_latency(volume, path);
    out.feasible = out.total() <= deadline;
    return out;
}

namespace {

Micros route_cost(const std::vector<Link>& route) {
    Micros c = 0;
    for (const auto& l : route) c += l.fixed_latency();
    return c;
}

std::vector<const Node*> resolve_endpoints(const Topology& t, NodeKind kind, const Node& host,
                                           std::span<const std::string> scope,
                                           std::span<const Interface> allowed, bool toward_host) {
    if (host.kind == kind) return {&host};

    std::vector<const Node*> in_scope;
    for (const auto& id : scope) {
        const Node* n = t.find(id);
        if (n && n->kind == kind &&
            std::find(in_scope.begin(), in_scope.end(), n) == in_scope.end())
            in_scope.push_back(n);
    }
    if (!in_scope.empty()) {
        std::sort(in_scope.begin(), in_scope.end(),
                  [](const Node* a, const Node* b) { return a->id < b->id; });
        return in_scope;
    }

    const Node* nearest = nullptr;
    Micros best = std::numeric_limits<Micros>::infinity();
    for (const Node* n : t.nodes_of_kind(kind)) {
        auto route = toward_host ? shortest_route(t, n->id, host.id, allowed)
                                 : shortest_route(t, host.id, n->id, allowed);
        if (!route) continue;
        Micros c = route_cost(*route);
        if (c < best) {
            best = c;
            nearest = n;
        }
    }
    if (!nearest) return {};
    return {nearest};
}

} // namespace

std::vector<const Node*> data_sources(const Topology& t, DataKind kind, const Node& host,
                                      std::span<const std::string> scope) {
    return resolve_endpoints(t, producer_of(kind), host, scope, data_interfaces(), true);
}

std::vector<const Node*> control_targets(const Topology& t, NodeKind at, const Node& host,
                                         std::span<const std::string> scope) {
    return resolve_endpoints(t, at, host, scope, control_interfaces(), false);
}

std::vector<StreamContribution> stream_contributions(const Assignment& a, const Topology& t) {
    const Node* host = t.find(a.node_id);
    if (!host) throw InvalidPlan("task " + a.task_id + " placed on unknown node " + a.node_id);

    std::vector<StreamContribution> out;
    for (const auto& in : a.app.inputs) {
        if (is_data_local(in.kind, host->kind)) continue;
        auto sources = data_sources(t, in.kind, *host, a.scope);
        if (sources.empty())
            throw InvalidPlan("task " + a.task_id + ": no reachable producer of " +
                              std::string(to_string(in.kind)) + " for " + a.node_id);
        const BitsPerSecond rate = a.app.input_rate(in);
        for (const Node* src : sources) {
            auto route = shortest_route(t, src->id, host->id, data_interfaces());
            if (!route)
                throw InvalidPlan("task " + a.task_id + ": no route from " + src->id + " to " +
                                  host->id);
            for (const auto& l : *route)
                out.push_back({l.id(), l.interface, src->id, in.kind, rate});
        }
    }
    return out;
}

BitsPerSecond TrafficLedger::total(Interface i) const {
    auto it = per_interface.find(i);
    return it == per_interface.end() ? 0.0 : it->second;
}

TrafficLedger build_ledger(std::span<const StreamContribution> contributions) {
    // (link, source, kind) -> (interface, max rate); ordered so sums are reproducible.
    std::map<std::tuple<std::string, std::string, DataKind>, std::pair<Interface, BitsPerSecond>>
        streams;
    for (const auto& c : contributions) {
        auto [it, fresh] = streams.try_emplace({c.link, c.source, c.kind}, c.interface, c.rate);
        if (!fresh) it->second.second = std::max(it->second.second, c.rate);
    }

    TrafficLedger ledger;
    std::map<std::string, Interface> link_iface;
    for (const auto& [key, val] : streams) {
        ledger.per_link[std::get<0>(key)] += val.second;
        link_iface[std::get<0>(key)] = val.first;
    }
    for (const auto& [link, rate] : ledger.per_link) ledger.per_interface[link_iface[link]] += rate;
    return ledger;
}

TrafficLedger e2_traffic(const PlacementPlan& plan, const Catalog& catalog, const Topology& t) {
    std::vector<StreamContribution> all;
    for (const auto& a : plan.assignments) {
        if (!catalog.find(a.app.id))
            throw InvalidPlan("task " + a.task_id + " uses app " + a.app.id +
                              " missing from the catalog");
        const Node* host = t.find(a.node_id);
        if (!host) throw InvalidPlan("task " + a.task_id + " placed on unknown node " + a.node_id);
        if (!can_host(host->kind, a.kind) || a.kind != a.app.kind)
            throw InvalidPlan("task " + a.task_id + ": " + std::string(to_string(a.kind)) +
                              " cannot run on " + std::string(to_string(host->kind)) + " " +
                              a.node_id);
        auto c = stream_contributions(a, t);
        all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    return build_ledger(all);
}

} // namespace dapps
