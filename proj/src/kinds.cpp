#include "dapps/kinds.hpp"
#include "dapps/errors.hpp"

#include <algorithm>

namespace dapps {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const E (&all)[N]) {
    for (E e : all)
        if (to_string(e) == s) return e;
    return std::nullopt;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

} // namespace

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::RU:        return "RU";
        case NodeKind::DU:        return "DU";
        case NodeKind::CU:        return "CU";
        case NodeKind::NearRtRic: return "NearRtRic";
        case NodeKind::NonRtRic:  return "NonRtRic";
    }
    return "?";
}

std::string_view to_string(Interface i) {
    switch (i) {
        case Interface::E2:            return "E2";
        case Interface::O1:            return "O1";
        case Interface::A1:            return "A1";
        case Interface::F1:            return "F1";
        case Interface::OpenFronthaul: return "OpenFronthaul";
    }
    return "?";
}

std::string_view to_string(DataKind d) {
    switch (d) {
        case DataKind::FreqDomainIQ:    return "FreqDomainIQ";
        case DataKind::TransportBlocks: return "TransportBlocks";
        case DataKind::RlcPackets:      return "RlcPackets";
        case DataKind::PdcpSdapData:    return "PdcpSdapData";
        case DataKind::DuKpm:           return "DuKpm";
        case DataKind::CuKpm:           return "CuKpm";
        case DataKind::AggregateKpm:    return "AggregateKpm";
        case DataKind::EnrichmentInfo:  return "EnrichmentInfo";
    }
    return "?";
}

std::string_view to_string(AppKind a) {
    switch (a) {
        case AppKind::RApp: return "rApp";
        case AppKind::XApp: return "xApp";
        case AppKind::DApp: return "dApp";
    }
    return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) { return lookup(s, kAllNodeKinds); }
std::optional<Interface> parse_interface(std::string_view s) { return lookup(s, kAllInterfaces); }
std::optional<DataKind> parse_data_kind(std::string_view s) { return lookup(s, kAllDataKinds); }
std::optional<AppKind> parse_app_kind(std::string_view s) { return lookup(s, kAllAppKinds); }

ResourceVector& ResourceVector::operator+=(const ResourceVector& o) {
    cpu += o.cpu;
    gpu += o.gpu;
    memory += o.memory;
    return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& o) {
    cpu -= o.cpu;
    gpu -= o.gpu;
    memory -= o.memory;
    return *this;
}

std::size_t ValidationReport::count(std::string_view code) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

void ValidationReport::add(std::string code, std::string subject, std::string message) {
    violations.push_back({std::move(code), std::move(subject), std::move(message)});
}

void ValidationReport::append(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

Infeasible::Infeasible(std::vector<std::string> tasks)
    : Error("infeasible tasks: " + join(tasks)), tasks_(std::move(tasks)) {}

ParseError::ParseError(const std::string& field, const std::string& what, int line, int column)
    : Error((line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                      : std::string()) +
            (field.empty() ? what : field + ": " + what)),
      field_(field),
      line_(line),
      column_(column) {}

} // namespace dapps
