#include "dapps/topology.hpp"
#include "dapps/apps.hpp"
#include "dapps/errors.hpp"
#include "dapps/plan.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace dapps {

std::string Link::id() const {
    return src + "->" + dst + ":" + std::string(to_string(interface));
}

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].id, i);
    for (std::size_t i = 0; i < links_.size(); ++i) out_[links_[i].src].push_back(i);
    for (auto& [src, idx] : out_) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(links_[a].dst, links_[a].interface) <
                   std::tie(links_[b].dst, links_[b].interface);
        });
    }
}

const Node* Topology::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

const Node& Topology::node(const std::string& id) const {
    if (const Node* n = find(id)) return *n;
    throw UnknownNode(id);
}

std::span<const std::size_t> Topology::outgoing(const std::string& id) const {
    auto it = out_.find(id);
    if (it == out_.end()) return {};
    return it->second;
}

std::vector<const Node*> Topology::nodes_of_kind(NodeKind k) const {
    std::vector<const Node*> out;
    for (const auto& n : nodes_)
        if (n.kind == k) out.push_back(&n);
    std::sort(out.begin(), out.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
    return out;
}

bool interface_allows(Interface kind, NodeKind a, NodeKind b) {
    auto pair = [&](NodeKind x, NodeKind y) { return (a == x && b == y) || (a == y && b == x); };
    switch (kind) {
        case Interface::E2:
            return pair(NodeKind::NearRtRic, NodeKind::DU) || pair(NodeKind::NearRtRic, NodeKind::CU);
        case Interface::F1:
            return pair(NodeKind::CU, NodeKind::DU);
        case Interface::OpenFronthaul:
            return pair(NodeKind::RU, NodeKind::DU);
        case Interface::A1:
            return pair(NodeKind::NonRtRic, NodeKind::NearRtRic);
        case Interface::O1:
            // SMO manages every other node.
            return (a == NodeKind::NonRtRic) != (b == NodeKind::NonRtRic);
    }
    return false;
}

ValidationReport validate_topology(const Topology& t) {
    ValidationReport r;
    std::set<std::string> ids;
    for (const auto& n : t.nodes()) {
        if (n.id.empty()) r.add("empty-id", n.id, "node id is empty");
        if (!ids.insert(n.id).second) r.add("duplicate-node", n.id, "node id declared twice");
        if (!n.resources.nonnegative())
            r.add("negative-resources", n.id, "resource components must be >= 0");
        for (DataKind d : n.hosted_data)
            if (!is_data_local(d, n.kind))
                r.add("inconsistent-hosted-data", n.id,
                      std::string(to_string(d)) + " is not produced at a " +
                          std::string(to_string(n.kind)));
    }

    std::set<std::tuple<std::string, std::string, Interface>> edges;
    for (const auto& l : t.links()) {
        const std::string lid = l.id();
        const Node* a = t.find(l.src);
        const Node* b = t.find(l.dst);
        if (!a) r.add("dangling-endpoint", lid, "link source '" + l.src + "' does not exist");
        if (!b) r.add("dangling-endpoint", lid, "link destination '" + l.dst + "' does not exist");
        if (a && b && (l.src == l.dst || !interface_allows(l.interface, a->kind, b->kind)))
            r.add("illegal-interface-pairing", lid,
                  std::string(to_string(l.interface)) + " cannot connect " +
                      std::string(to_string(a->kind)) + " to " + std::string(to_string(b->kind)));
        if (!(l.capacity > 0)) r.add("nonpositive-capacity", lid, "link capacity must be > 0");
        if (l.propagation_latency < 0 || l.switching_latency < 0)
            r.add("negative-latency", lid, "link latencies must be >= 0");
        if (!edges.emplace(l.src, l.dst, l.interface).second)
            r.add("duplicate-link", lid, "directed link declared twice");
    }
    return r;
}

namespace {

void walk_chain(const Topology& t, const std::string& at, const std::string& dst,
                std::span<const Interface> chain, std::vector<Link>& current, Micros cost,
                std::vector<Link>& best, Micros& best_cost) {
    if (chain.empty()) {
        if (at == dst && cost < best_cost) {
            best_cost = cost;
            best = current;
        }
        return;
    }
    for (std::size_t i : t.outgoing(at)) {
        const Link& l = t.links()[i];
        if (l.interface != chain.front()) continue;
        current.push_back(l);
        walk_chain(t, l.dst, dst, chain.subspan(1), current, cost + l.fixed_latency(), best,
                   best_cost);
        current.pop_back();
    }
}

} // namespace

std::vector<Link> find_path(const Topology& t, const std::string& src, const std::string& dst,
                            std::span<const Interface> interface_chain) {
    t.node(src);
    t.node(dst);
    std::vector<Link> current, best;
    Micros best_cost = std::numeric_limits<Micros>::infinity();
    walk_chain(t, src, dst, interface_chain, current, 0, best, best_cost);
    if (best_cost == std::numeric_limits<Micros>::infinity())
        throw NoPath("no path from " + src + " to " + dst + " along the requested interfaces");
    return best;
}

Micros path_latency(const Topology& t, const std::string& src, const std::string& dst,
                    std::span<const Interface> interface_chain) {
    Micros total = 0;
    for (const auto& l : find_path(t, src, dst, interface_chain)) total += l.fixed_latency();
    return total;
}

std::optional<std::vector<Link>> shortest_route(const Topology& t, const std::string& src,
                                                const std::string& dst,
                                                std::span<const Interface> allowed) {
    if (!t.contains(src) || !t.contains(dst)) return std::nullopt;
    if (src == dst) return std::vector<Link>{};

    struct Label {
        Micros cost = std::numeric_limits<Micros>::infinity();
        std::size_t via = std::numeric_limits<std::size_t>::max();
    };
    std::map<std::string, Label> label;
    using Item = std::pair<Micros, std::string>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    label[src].cost = 0;
    queue.emplace(0, src);
    std::set<std::string> done;

    while (!queue.empty()) {
        auto [cost, at] = queue.top();
        queue.pop();
        if (!done.insert(at).second) continue;
        if (at == dst) break;
        for (std::size_t i : t.outgoing(at)) {
            const Link& l = t.links()[i];
            if (std::find(allowed.begin(), allowed.end(), l.interface) == allowed.end()) continue;
            if (!t.contains(l.dst) || done.count(l.dst)) continue;
            Micros c = cost + l.fixed_latency();
            Label& lab = label[l.dst];
            bool better = c < lab.cost;
            if (!better && c == lab.cost && lab.via != std::numeric_limits<std::size_t>::max())
                better = t.links()[i].src < t.links()[lab.via].src;
            if (better) {
                lab.cost = c;
                lab.via = i;
                queue.emplace(c, l.dst);
            }
        }
    }
    if (!done.count(dst)) return std::nullopt;

    std::vector<Link> route;
    for (std::string at = dst; at != src;) {
        const Link& l = t.links()[label.at(at).via];
        route.push_back(l);
        at = l.src;
    }
    std::reverse(route.begin(), route.end());
    return route;
}

std::span<const Interface> data_interfaces() {
    static constexpr Interface kData[] = {Interface::E2, Interface::O1, Interface::OpenFronthaul};
    return kData;
}

std::span<const Interface> control_interfaces() {
    static constexpr Interface kControl[] = {Interface::E2, Interface::A1, Interface::O1,
                                             Interface::OpenFronthaul};
    return kControl;
}

ResourceVector remaining_capacity(const Topology& t, const std::string& node,
                                  const PlacementPlan& plan) {
    ResourceVector left = t.node(node).resources;
    for (const auto& a : plan.assignments)
        if (a.node_id == node) left -= a.app.footprint;
    return left;
}

} // namespace dapps
