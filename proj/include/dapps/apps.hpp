#pragma once

#include "dapps/kinds.hpp"

#include <map>
#include <string>
#include <vector>

namespace dapps {

enum class TimescaleClass { RealTime, NearRealTime, NonRealTime };

std::string_view to_string(TimescaleClass c);

// Loop-class breakpoints. Real time is strictly below the first one.
inline constexpr Micros kRealTimeBound = 10'000;
inline constexpr Micros kNearRealTimeBound = 1'000'000;

TimescaleClass timescale_class(Micros period);

// Timescale an app kind is required to run at.
TimescaleClass expected_timescale(AppKind k);

// Node kind that hosts instances of an app kind (dApps: DU or CU).
bool can_host(NodeKind node, AppKind app);

// The single node kind at which `kind` originates.
NodeKind producer_of(DataKind kind);

inline bool is_data_local(DataKind kind, NodeKind at) { return producer_of(kind) == at; }

struct ControlTarget {
    std::string parameter;
    NodeKind controlled_at = NodeKind::DU;
    Micros granularity_period = 0;
};

struct DataRequirement {
    DataKind kind = DataKind::DuKpm;
    Bits volume_bits_per_period = 0;
    Micros freshness_deadline = 0;
};

struct AppSpec {
    std::string id;
    AppKind kind = AppKind::XApp;
    std::vector<DataRequirement> inputs;
    std::vector<ControlTarget> controls;
    Micros control_period = 0;
    ResourceVector footprint;
    Micros inference_latency = 0;
    // Relative KPM change caused by one control action, keyed by KPM id.
    // Only the simulator's synthetic KPM model reads this.
    std::map<std::string, double> kpm_effects;

    // Data rate of one input when pulled once per control period.
    BitsPerSecond input_rate(const DataRequirement& r) const {
        return r.volume_bits_per_period * 1e6 / control_period;
    }
};

ValidationReport validate_app(const AppSpec& spec);

// Read-only app catalog indexed by id.
class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<AppSpec> apps);

    const std::vector<AppSpec>& apps() const { return apps_; }
    const AppSpec* find(const std::string& id) const;
    bool empty() const { return apps_.empty(); }

private:
    std::vector<AppSpec> apps_;
    std::map<std::string, std::size_t> index_;
};

} // namespace dapps
