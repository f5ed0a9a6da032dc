#include "dapps/apps.hpp"
#include "dapps/errors.hpp"

#include <set>
#include <sstream>

namespace dapps {

std::string_view to_string(TimescaleClass c) {
    switch (c) {
        case TimescaleClass::RealTime:     return "RealTime";
        case TimescaleClass::NearRealTime: return "NearRealTime";
        case TimescaleClass::NonRealTime:  return "NonRealTime";
    }
    return "?";
}

TimescaleClass timescale_class(Micros period) {
    if (!(period > 0)) throw NonPositivePeriod();
    if (period < kRealTimeBound) return TimescaleClass::RealTime;
    if (period < kNearRealTimeBound) return TimescaleClass::NearRealTime;
    return TimescaleClass::NonRealTime;
}

TimescaleClass expected_timescale(AppKind k) {
    switch (k) {
        case AppKind::DApp: return TimescaleClass::RealTime;
        case AppKind::XApp: return TimescaleClass::NearRealTime;
        case AppKind::RApp: return TimescaleClass::NonRealTime;
    }
    return TimescaleClass::NonRealTime;
}

bool can_host(NodeKind node, AppKind app) {
    switch (app) {
        case AppKind::DApp: return node == NodeKind::DU || node == NodeKind::CU;
        case AppKind::XApp: return node == NodeKind::NearRtRic;
        case AppKind::RApp: return node == NodeKind::NonRtRic;
    }
    return false;
}

NodeKind producer_of(DataKind kind) {
    switch (kind) {
        // I/Q arrives at the DU over the fronthaul; the RU is not an app host.
        case DataKind::FreqDomainIQ:
        case DataKind::TransportBlocks:
        case DataKind::RlcPackets:
        case DataKind::DuKpm:
            return NodeKind::DU;
        case DataKind::PdcpSdapData:
        case DataKind::CuKpm:
            return NodeKind::CU;
        case DataKind::AggregateKpm:
        case DataKind::EnrichmentInfo:
            return NodeKind::NearRtRic;
    }
    return NodeKind::DU;
}

ValidationReport validate_app(const AppSpec& spec) {
    ValidationReport r;
    const std::string& id = spec.id;
    if (id.empty()) r.add("empty-id", id, "app id is empty");

    if (!(spec.control_period > 0)) {
        r.add("nonpositive-period", id, "control period must be positive");
    } else {
        auto cls = timescale_class(spec.control_period);
        if (cls != expected_timescale(spec.kind)) {
            std::ostringstream msg;
            msg << to_string(spec.kind) << " with control period " << spec.control_period << " us is "
                << to_string(cls) << ", expected " << to_string(expected_timescale(spec.kind));
            r.add("kind-timescale-mismatch", id, msg.str());
        }
    }

    if (spec.inputs.empty() && !spec.controls.empty())
        r.add("controls-without-inputs", id, "app controls parameters but declares no inputs");

    if (!spec.footprint.nonnegative())
        r.add("negative-footprint", id, "footprint components must be >= 0");
    if (spec.inference_latency < 0)
        r.add("negative-inference-latency", id, "inference latency must be >= 0");

    std::set<DataKind> seen;
    for (const auto& in : spec.inputs) {
        const std::string what(to_string(in.kind));
        if (!seen.insert(in.kind).second)
            r.add("duplicate-input", id, "input " + what + " declared twice");
        if (!(in.volume_bits_per_period > 0))
            r.add("nonpositive-volume", id, "input " + what + " volume must be > 0");
        if (!(in.freshness_deadline > 0))
            r.add("nonpositive-freshness", id, "input " + what + " freshness deadline must be > 0");
    }
    for (const auto& c : spec.controls) {
        if (c.parameter.empty()) r.add("empty-parameter", id, "control target without parameter id");
        if (!(c.granularity_period > 0))
            r.add("nonpositive-granularity", id,
                  "control target " + c.parameter + " granularity must be > 0");
    }
    return r;
}

Catalog::Catalog(std::vector<AppSpec> apps) : apps_(std::move(apps)) {
    for (std::size_t i = 0; i < apps_.size(); ++i) index_.emplace(apps_[i].id, i);
}

const AppSpec* Catalog::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &apps_[it->second];
}

} // namespace dapps
