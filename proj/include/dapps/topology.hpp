#pragma once

#include "dapps/kinds.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dapps {

struct PlacementPlan;

struct Node {
    std::string id;
    NodeKind kind = NodeKind::DU;
    ResourceVector resources;
    std::set<DataKind> hosted_data;
};

// Directed link. A symmetric physical link is two entries.
struct Link {
    std::string src;
    std::string dst;
    Interface interface = Interface::E2;
    Micros propagation_latency = 0;
    Micros switching_latency = 0;
    BitsPerSecond capacity = 0;

    Micros fixed_latency() const { return propagation_latency + switching_latency; }
    std::string id() const;
};

// Immutable RAN graph. Lookups are by node id; construction never throws, so
// malformed graphs can still be inspected through validate_topology.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, std::vector<Link> links);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }

    const Node* find(const std::string& id) const;
    const Node& node(const std::string& id) const; // throws UnknownNode
    bool contains(const std::string& id) const { return find(id) != nullptr; }

    // Indices into links() of the links leaving `id`, sorted by (dst, interface).
    std::span<const std::size_t> outgoing(const std::string& id) const;

    std::vector<const Node*> nodes_of_kind(NodeKind k) const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::vector<std::size_t>> out_;
};

// True when `kind` links may connect nodes of kinds a and b (either direction).
bool interface_allows(Interface kind, NodeKind a, NodeKind b);

ValidationReport validate_topology(const Topology& t);

// Cheapest realization of `chain` from src to dst (one hop per entry).
// Throws NoPath when no realization exists.
std::vector<Link> find_path(const Topology& t, const std::string& src, const std::string& dst,
                            std::span<const Interface> interface_chain);

// Sum of propagation and switching latency over the hops of `chain`.
Micros path_latency(const Topology& t, const std::string& src, const std::string& dst,
                    std::span<const Interface> interface_chain);

// Minimum fixed-latency route over links whose interface is in `allowed`.
// Ties resolve towards lexicographically smaller node ids. Empty vector for src == dst.
std::optional<std::vector<Link>> shortest_route(const Topology& t, const std::string& src,
                                                const std::string& dst,
                                                std::span<const Interface> allowed);

// Interfaces app data and control commands may traverse.
std::span<const Interface> data_interfaces();
std::span<const Interface> control_interfaces();

// Node resources minus footprints placed on it; negative components signal over-allocation.
ResourceVector remaining_capacity(const Topology& t, const std::string& node,
                                  const PlacementPlan& plan);

} // namespace dapps
