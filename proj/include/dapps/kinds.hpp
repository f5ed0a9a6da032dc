#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dapps {

// Time is carried in microseconds, data volumes in bits and rates in bits/s.
using Micros = double;
using Bits = double;
using BitsPerSecond = double;

enum class NodeKind { RU, DU, CU, NearRtRic, NonRtRic };

enum class Interface { E2, O1, A1, F1, OpenFronthaul };

enum class DataKind {
    FreqDomainIQ,
    TransportBlocks,
    RlcPackets,
    PdcpSdapData,
    DuKpm,        // buffer size, QoS level
    CuKpm,        // mobility, radio link state
    AggregateKpm, // throughput, SINR, latency
    EnrichmentInfo,
};

enum class AppKind { RApp, XApp, DApp };

inline constexpr NodeKind kAllNodeKinds[] = {NodeKind::RU, NodeKind::DU, NodeKind::CU,
                                             NodeKind::NearRtRic, NodeKind::NonRtRic};
inline constexpr Interface kAllInterfaces[] = {Interface::E2, Interface::O1, Interface::A1,
                                               Interface::F1, Interface::OpenFronthaul};
inline constexpr DataKind kAllDataKinds[] = {
    DataKind::FreqDomainIQ, DataKind::TransportBlocks, DataKind::RlcPackets,
    DataKind::PdcpSdapData, DataKind::DuKpm,           DataKind::CuKpm,
    DataKind::AggregateKpm, DataKind::EnrichmentInfo,
};
inline constexpr AppKind kAllAppKinds[] = {AppKind::RApp, AppKind::XApp, AppKind::DApp};

std::string_view to_string(NodeKind k);
std::string_view to_string(Interface i);
std::string_view to_string(DataKind d);
std::string_view to_string(AppKind a);

std::optional<NodeKind> parse_node_kind(std::string_view s);
std::optional<Interface> parse_interface(std::string_view s);
std::optional<DataKind> parse_data_kind(std::string_view s);
std::optional<AppKind> parse_app_kind(std::string_view s);

struct ResourceVector {
    double cpu = 0;
    double gpu = 0; // GPUs, FPGAs and other accelerators share this dimension
    double memory = 0; // MiB

    ResourceVector& operator+=(const ResourceVector& o);
    ResourceVector& operator-=(const ResourceVector& o);
    friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
    friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) { return a -= b; }
    friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

    ResourceVector scaled(double f) const { return {cpu * f, gpu * f, memory * f}; }
    bool nonnegative() const { return cpu >= 0 && gpu >= 0 && memory >= 0; }
    // Component-wise `*this <= cap`.
    bool fits_within(const ResourceVector& cap) const {
        return cpu <= cap.cpu && gpu <= cap.gpu && memory <= cap.memory;
    }
};

struct Violation {
    std::string code;    // stable machine-readable tag, e.g. "dangling-endpoint"
    std::string subject; // offending entity id
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::size_t count(std::string_view code) const;
    void add(std::string code, std::string subject, std::string message);
    void append(const ValidationReport& other);
};

} // namespace dapps
