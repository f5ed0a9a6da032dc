#pragma once

#include "dapps/apps.hpp"
#include "dapps/conflicts.hpp"
#include "dapps/plan.hpp"
#include "dapps/topology.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dapps {

// ── URLLC slicing/scheduling latency model ──────────────────────────────────

enum class Scheduler { RoundRobin, ProportionalFair };

std::string_view to_string(Scheduler s);
std::optional<Scheduler> parse_scheduler(std::string_view s); // "RR" / "PF" or full names

struct SliceConfig {
    double urllc_prb_share = 0.3; // fraction of PRBs reserved for the URLLC slice
    Scheduler scheduler = Scheduler::RoundRobin;

    bool valid() const { return urllc_prb_share >= 0 && urllc_prb_share <= 1; }
};

struct UrllcKnot {
    double prb_share;
    double rr_ms;
    double pf_ms;
};

// Knots of the bundled latency curves. PF is faster below a 30% URLLC share,
// RR above it, both meet at the 30% knot, and the RR floor is 4 ms. Values
// between those anchors are synthetic.
std::span<const UrllcKnot> urllc_table();

// End-to-end URLLC latency in milliseconds, linearly interpolated.
double urllc_latency(const SliceConfig& cfg);

// ── Discrete-event engine ───────────────────────────────────────────────────

enum class EventKind { DataReady, TransferDone, InferenceDone, ControlApplied, AppDeployed, AppTerminated };

std::string_view to_string(EventKind k);

struct Event {
    Micros time = 0;
    std::uint64_t seq = 0; // insertion order, breaks time ties
    EventKind kind = EventKind::DataReady;
    std::string subject;   // instance id, or transfer id for TransferDone
    std::size_t loop = 0;
};

struct SimulationConfig {
    Micros duration = 100'000;
    std::uint64_t seed = 1;
    SliceConfig slice;
    Micros kpm_sample_period = 1'000;
    double kpm_noise = 0; // std-dev of multiplicative sample noise
    Micros implicit_window = 2'000;
    double implicit_threshold = 0.05;
    bool record_trace = false;
};

struct LoopSample {
    std::string app;
    Micros start = 0;
    Micros latency = 0;

    friend bool operator==(const LoopSample&, const LoopSample&) = default;
};

struct MetricsReport {
    Micros duration = 0;
    std::uint64_t seed = 0;
    Bits e2_bits_total = 0;
    Bits fronthaul_bits_total = 0;
    std::vector<LoopSample> loop_latencies; // completed loops, in completion order
    std::uint64_t deadline_violations = 0;
    std::uint64_t transfers = 0;
    double urllc_latency_ms = 0;
    std::vector<ConflictRecord> conflicts;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct TransferRecord {
    std::string source;
    DataKind kind = DataKind::DuKpm;
    std::string destination;
    Bits volume = 0;
    std::size_t e2_hops = 0;
    std::size_t fronthaul_hops = 0;
    Micros dispatched = 0;
    Micros arrived = 0;
    std::size_t subscribers = 0;
};

struct SimulationResult {
    MetricsReport report;
    SimulationLog log;
    std::vector<TransferRecord> transfers;
    std::vector<Event> trace; // filled when record_trace is set
};

// Executes a placed plan. Every instance starts a loop each control period
// while a full period still fits in the duration; in-flight loops drain after
// that. Simultaneous requests for the same (source, kind) at one host share a
// single transfer sized for the largest subscriber. Transfers on a link are
// served FIFO. Throws InvalidScenario.
SimulationResult simulate(const Topology& t, const Catalog& catalog, const PlacementPlan& plan,
                          const SimulationConfig& cfg);

inline MetricsReport run(const Topology& t, const Catalog& catalog, const PlacementPlan& plan,
                         const SimulationConfig& cfg) {
    return simulate(t, catalog, plan, cfg).report;
}

} // namespace dapps
