#include "dapps/report.hpp"
#include "dapps/errors.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace dapps {

using nlohmann::json;

std::string format_number(double v) {
    if (v == 0) return "0";
    char buf[400];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string report_csv(const MetricsReport& r) {
    std::ostringstream out;
    auto row = [&](const std::string& metric, double value, std::string_view unit) {
        out << metric << ',' << format_number(value) << ',' << unit << '\n';
    };

    double sum = 0, worst = 0;
    std::map<std::string, std::pair<double, std::size_t>> per_app;
    for (const auto& s : r.loop_latencies) {
        sum += s.latency;
        worst = std::max(worst, s.latency);
        auto& [total, n] = per_app[s.app];
        total += s.latency;
        ++n;
    }
    std::size_t direct = 0, implicit = 0;
    for (const auto& c : r.conflicts) (c.kind == ConflictKind::Direct ? direct : implicit)++;
    const auto loops = r.loop_latencies.size();

    out << "metric,value,unit\n";
    row("duration", r.duration, "us");
    row("seed", static_cast<double>(r.seed), "count");
    row("e2_bits_total", r.e2_bits_total, "bits");
    row("fronthaul_bits_total", r.fronthaul_bits_total, "bits");
    row("transfers", static_cast<double>(r.transfers), "count");
    row("loops_completed", static_cast<double>(loops), "count");
    row("deadline_violations", static_cast<double>(r.deadline_violations), "count");
    row("loop_latency_mean", loops ? sum / static_cast<double>(loops) : 0, "us");
    row("loop_latency_max", worst, "us");
    row("urllc_latency", r.urllc_latency_ms, "ms");
    row("conflicts_direct", static_cast<double>(direct), "count");
    row("conflicts_implicit", static_cast<double>(implicit), "count");
    for (const auto& [app, tn] : per_app)
        row("loop_latency_mean[" + app + "]", tn.first / static_cast<double>(tn.second), "us");
    return out.str();
}

json conflict_json(const ConflictRecord& c) {
    return {{"kind", std::string(to_string(c.kind))},
            {"apps", c.apps},
            {"subject", c.subject},
            {"evidence", c.evidence}};
}

json report_json(const MetricsReport& r) {
    json loops = json::array();
    for (const auto& s : r.loop_latencies)
        loops.push_back({{"app", s.app}, {"start_us", s.start}, {"latency_us", s.latency}});
    json conflicts = json::array();
    for (const auto& c : r.conflicts) conflicts.push_back(conflict_json(c));
    return {{"report_version", kReportVersion},
            {"duration_us", r.duration},
            {"seed", r.seed},
            {"e2_bits_total", r.e2_bits_total},
            {"fronthaul_bits_total", r.fronthaul_bits_total},
            {"loop_latencies", loops},
            {"deadline_violations", r.deadline_violations},
            {"transfers", r.transfers},
            {"urllc_latency_ms", r.urllc_latency_ms},
            {"conflicts", conflicts}};
}

MetricsReport report_from_json(const json& j) {
    auto field = [&](const json& obj, const char* key) -> const json& {
        if (!obj.is_object() || !obj.contains(key)) throw ParseError(key, "missing field");
        return obj.at(key);
    };
    try {
        if (field(j, "report_version").get<int>() != kReportVersion)
            throw ParseError("report_version", "unsupported version");
        MetricsReport r;
        r.duration = field(j, "duration_us").get<double>();
        r.seed = field(j, "seed").get<std::uint64_t>();
        r.e2_bits_total = field(j, "e2_bits_total").get<double>();
        r.fronthaul_bits_total = field(j, "fronthaul_bits_total").get<double>();
        for (const auto& s : field(j, "loop_latencies"))
            r.loop_latencies.push_back({field(s, "app").get<std::string>(),
                                        field(s, "start_us").get<double>(),
                                        field(s, "latency_us").get<double>()});
        r.deadline_violations = field(j, "deadline_violations").get<std::uint64_t>();
        r.transfers = field(j, "transfers").get<std::uint64_t>();
        r.urllc_latency_ms = field(j, "urllc_latency_ms").get<double>();
        for (const auto& c : field(j, "conflicts")) {
            const auto kind = field(c, "kind").get<std::string>();
            if (kind != "Direct" && kind != "Implicit") throw ParseError("kind", "unknown conflict kind");
            r.conflicts.push_back({kind == "Direct" ? ConflictKind::Direct : ConflictKind::Implicit,
                                   field(c, "apps").get<std::vector<std::string>>(),
                                   field(c, "subject").get<std::string>(),
                                   field(c, "evidence").get<double>()});
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError("report", e.what());
    }
}

json plan_json(const PlacementPlan& plan, const Intent& intent, const Topology& t) {
    json tasks = json::array();
    for (const auto& a : plan.assignments) {
        json controls = json::array();
        for (const auto& b : a.controls) controls.push_back({{"parameter", b.parameter}, {"node", b.node}});
        json entry = {{"task", a.task_id},
                      {"app", a.app.id},
                      {"kind", std::string(to_string(a.kind))},
                      {"node", a.node_id},
                      {"scope", a.scope},
                      {"controls", controls}};
        for (const auto& task : intent.tasks)
            if (task.id == a.task_id) entry["justification"] = justify(a, task, t, plan);
        tasks.push_back(std::move(entry));
    }
    return {{"report_version", kReportVersion},
            {"intent", intent.id},
            {"objective_e2_bps", plan.objective_value},
            {"dapps", plan.dapp_count()},
            {"assignments", tasks}};
}

} // namespace dapps
