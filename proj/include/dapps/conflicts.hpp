#pragma once

#include "dapps/plan.hpp"

#include <map>
#include <string>
#include <vector>

namespace dapps {

enum class ConflictKind { Direct, Implicit };

std::string_view to_string(ConflictKind k);

struct ConflictRecord {
    ConflictKind kind = ConflictKind::Direct;
    std::vector<std::string> apps; // sorted instance ids
    std::string subject;           // "parameter@node" (Direct) or KPM id (Implicit)
    double evidence = 0;           // Implicit only, in [0, 1]

    friend bool operator==(const ConflictRecord&, const ConflictRecord&) = default;
};

// Observations the post-action check works from.
struct ControlAction {
    Micros time = 0;
    std::string app;
};

struct KpmSample {
    Micros time = 0;
    std::string kpm;
    double value = 0;
};

struct SimulationLog {
    std::vector<ControlAction> actions; // nondecreasing time
    std::vector<KpmSample> samples;     // nondecreasing time
    bool empty() const { return actions.empty() && samples.empty(); }
};

// One record per (parameter, node) driven by two or more placed instances.
std::vector<ConflictRecord> detect_direct(const PlacementPlan& plan);

// Per KPM series and app: mean relative change between the last sample at or
// before each action and the first sample within `window` after it. A record is
// emitted when two or more apps reach |mean| >= threshold; its evidence is the
// weakest of those apps' scores. Throws EmptyLog.
std::vector<ConflictRecord> detect_implicit(const SimulationLog& log, Micros window,
                                            double threshold);

struct Veto {
    std::string app;
    std::string subject; // "parameter@node" lost
    bool unplaced = false;
};

struct Resolution {
    PlacementPlan plan;
    std::vector<Veto> vetoes;
};

// Higher rank wins a Direct conflict; losers drop the binding and are removed
// from the plan once they control nothing. Implicit records pass through.
// Ranks are looked up by instance id, then by app id. Throws MissingPriority
// when a conflicting app has no rank or two conflicting apps share one.
// The returned plan keeps the input objective value; recompute it with
// e2_traffic when instances were removed.
Resolution resolve(const std::vector<ConflictRecord>& conflicts, const PlacementPlan& plan,
                   const std::map<std::string, int>& priority);

} // namespace dapps
