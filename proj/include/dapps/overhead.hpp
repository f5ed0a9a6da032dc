#pragma once

#include "dapps/apps.hpp"
#include "dapps/plan.hpp"
#include "dapps/topology.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace dapps {

// Sounding reference signal collection parameters. Every sample carries an
// I and a Q component.
struct SrsConfig {
    long subcarriers = 3300;
    long symbols = 2;
    long beams_monitored = 3;
    long bits_per_component = 9;
    long sounding_period_slots = 5;
    Micros slot_duration = 125;
    long num_ues = 1;

    bool valid() const;
    Micros sounding_period() const { return static_cast<double>(sounding_period_slots) * slot_duration; }
};

// Bits collected per UE per sounding occasion.
Bits srs_payload_bits(const SrsConfig& cfg);

// Aggregate rate over all UEs.
BitsPerSecond srs_data_rate(const SrsConfig& cfg);

// Fixed latency of every hop plus `volume` pushed through the bottleneck capacity.
Micros transfer_latency(Bits volume, std::span<const Link> path);

struct BeamFeasibility {
    bool feasible = false;
    Micros accumulation = 0; // waiting for required_soundings occasions
    Micros transfer = 0;     // shipping the accumulated samples
    Micros total() const { return accumulation + transfer; }
};

BeamFeasibility beam_mgmt_feasible(const SrsConfig& cfg, long required_soundings,
                                   std::span<const Link> path, Micros deadline);

// Nodes that supply `kind` to an app hosted at `host` for a task over `scope`.
// Local data yields {host}. Otherwise the producers inside the scope, or the
// nearest reachable producer when the scope holds none. Empty when unreachable.
std::vector<const Node*> data_sources(const Topology& t, DataKind kind, const Node& host,
                                      std::span<const std::string> scope);

// Nodes of kind `at` commanded by an app at `host`, by the same rule.
std::vector<const Node*> control_targets(const Topology& t, NodeKind at, const Node& host,
                                         std::span<const std::string> scope);

// Rate one subscriber adds to one directed link for one (source, kind) stream.
struct StreamContribution {
    std::string link;
    Interface interface = Interface::E2;
    std::string source;
    DataKind kind = DataKind::DuKpm;
    BitsPerSecond rate = 0;
};

// Per-link contributions of one placed instance. Throws InvalidPlan when the
// instance's data cannot be routed.
std::vector<StreamContribution> stream_contributions(const Assignment& a, const Topology& t);

struct TrafficLedger {
    std::map<std::string, BitsPerSecond> per_link;
    std::map<Interface, BitsPerSecond> per_interface;

    BitsPerSecond total(Interface i) const;
    BitsPerSecond e2_total() const { return total(Interface::E2); }
};

// Streams with equal (link, source, kind) are carried once at the highest
// subscriber rate.
TrafficLedger build_ledger(std::span<const StreamContribution> contributions);

TrafficLedger e2_traffic(const PlacementPlan& plan, const Catalog& catalog, const Topology& t);

} // namespace dapps
