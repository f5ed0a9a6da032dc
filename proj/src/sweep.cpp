#include "dapps/sweep.hpp"
#include "dapps/errors.hpp"
#include "dapps/report.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

namespace dapps {

namespace {

constexpr std::pair<SweepAxis, std::string_view> kAxisNames[] = {
    {SweepAxis::AppCount, "app_count"},
    {SweepAxis::DappCap, "dapp_cap"},
    {SweepAxis::SoundingPeriod, "sounding_period"},
    {SweepAxis::NumUes, "num_ues"},
    {SweepAxis::UrllcPrbShare, "urllc_prb_share"},
};

long as_count(double v, SweepAxis axis) {
    if (v < 0 || v != std::floor(v))
        throw Error(std::string(to_string(axis)) + " values must be non-negative integers");
    return static_cast<long>(v);
}

SweepRow evaluate(const Scenario& base, SweepAxis axis, double value) {
    SweepRow row;
    row.value = value;
    try {
        const Scenario s = apply_axis(base, axis, value);
        row.srs_data_rate = srs_data_rate(s.sweep.srs ? s.sweep.srs->srs : SrsConfig{});
        auto run = run_scenario(s);
        row.objective = run.executed.objective_value;
        row.dapps = run.executed.dapp_count();
        row.report = std::move(run.sim.report);
    } catch (const Infeasible&) {
        row.status = "infeasible";
    } catch (const std::exception& e) {
        row.status = e.what();
    }
    return row;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<Link> srs_path(const Scenario& s, const SrsStudy& study) {
    if (study.src.empty()) throw InvalidScenario("sweep.srs.path is required for fig3");
    return find_path(s.topology, study.src, study.dst, study.chain);
}

} // namespace

std::string_view to_string(SweepAxis a) {
    for (const auto& [axis, name] : kAxisNames)
        if (axis == a) return name;
    return "?";
}

SweepAxis parse_axis(std::string_view name) {
    for (const auto& [axis, n] : kAxisNames)
        if (n == name) return axis;
    throw UnknownAxis(std::string(name));
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
    Scenario s = base;
    switch (axis) {
    case SweepAxis::AppCount: {
        const auto n = static_cast<std::size_t>(as_count(value, axis));
        if (n < s.intent.tasks.size()) s.intent.tasks.resize(n);
        break;
    }
    case SweepAxis::DappCap:
        s.intent.dapp_cap = as_count(value, axis);
        break;
    case SweepAxis::SoundingPeriod:
    case SweepAxis::NumUes: {
        if (!s.sweep.srs) s.sweep.srs = SrsStudy{};
        const long v = as_count(value, axis);
        if (v < 1) throw Error(std::string(to_string(axis)) + " must be >= 1");
        (axis == SweepAxis::NumUes ? s.sweep.srs->srs.num_ues : s.sweep.srs->srs.sounding_period_slots) = v;
        break;
    }
    case SweepAxis::UrllcPrbShare:
        s.simulation.slice.urllc_prb_share = value;
        if (!s.simulation.slice.valid()) throw Error("urllc_prb_share must lie in [0, 1]");
        break;
    }
    return s;
}

std::vector<SweepRow> sweep_serial(const Scenario& base, SweepAxis axis, std::span<const double> values) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) rows.push_back(evaluate(base, axis, v));
    return rows;
}

std::vector<SweepRow> sweep_parallel(const Scenario& base, SweepAxis axis, std::span<const double> values) {
    std::vector<SweepRow> rows(values.size());
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = evaluate(base, axis, values[i]);
    return rows;
}

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << to_string(axis)
        << ",status,objective_bps,dapps,e2_bits_total,fronthaul_bits_total,loops_completed,"
           "deadline_violations,loop_latency_mean_us,urllc_latency_ms,conflicts,srs_data_rate_bps\n";
    for (const auto& r : rows) {
        double mean = 0;
        for (const auto& s : r.report.loop_latencies) mean += s.latency;
        if (!r.report.loop_latencies.empty()) mean /= static_cast<double>(r.report.loop_latencies.size());
        out << format_number(r.value) << ',' << csv_field(r.status) << ',' << format_number(r.objective)
            << ',' << r.dapps << ',' << format_number(r.report.e2_bits_total) << ','
            << format_number(r.report.fronthaul_bits_total) << ',' << r.report.loop_latencies.size()
            << ',' << r.report.deadline_violations << ',' << format_number(mean) << ','
            << format_number(r.report.urllc_latency_ms) << ',' << r.report.conflicts.size() << ','
            << format_number(r.srs_data_rate) << '\n';
    }
    return out.str();
}

std::vector<Fig3Row> fig3_table(const Scenario& s) {
    const SrsStudy study = s.sweep.srs.value_or(SrsStudy{});
    const auto path = srs_path(s, study);
    std::vector<Fig3Row> rows;
    for (long period : study.periods) {
        for (long ues : study.ue_counts) {
            SrsConfig cfg = study.srs;
            cfg.sounding_period_slots = period;
            cfg.num_ues = ues;
            if (!cfg.valid()) throw InvalidScenario("fig3 periods and UE counts must be positive");
            const auto f = beam_mgmt_feasible(cfg, study.required_soundings, path, study.deadline);
            rows.push_back({period, ues, srs_payload_bits(cfg), srs_data_rate(cfg) / 1e6,
                            f.accumulation, f.transfer, f.feasible});
        }
    }
    return rows;
}

namespace {

BitsPerSecond fig4_point(const Scenario& s, std::size_t n, long cap) {
    Intent intent = s.intent;
    intent.tasks.resize(n);
    try {
        return place(intent, s.topology, s.catalog, cap).objective_value;
    } catch (const Infeasible&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

std::vector<Fig4Row> fig4_table_serial(const Scenario& s) {
    const auto& caps = s.sweep.caps;
    std::vector<Fig4Row> rows(s.intent.tasks.size());
    for (std::size_t n = 1; n <= rows.size(); ++n) {
        rows[n - 1].app_count = static_cast<long>(n);
        for (long cap : caps) rows[n - 1].e2_bps.push_back(fig4_point(s, n, cap));
    }
    return rows;
}

std::vector<Fig4Row> fig4_table_parallel(const Scenario& s) {
    const auto& caps = s.sweep.caps;
    const std::size_t tasks = s.intent.tasks.size();
    std::vector<Fig4Row> rows(tasks);
    for (std::size_t n = 1; n <= tasks; ++n) {
        rows[n - 1].app_count = static_cast<long>(n);
        rows[n - 1].e2_bps.assign(caps.size(), 0);
    }
    const auto points = static_cast<std::ptrdiff_t>(tasks * caps.size());
    // Exceptions other than Infeasible must not escape the parallel region.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < points; ++i) {
        const auto n = static_cast<std::size_t>(i) / caps.size();
        const auto c = static_cast<std::size_t>(i) % caps.size();
        try {
            rows[n].e2_bps[c] = fig4_point(s, n + 1, caps[c]);
        } catch (...) {
#pragma omp critical(fig4_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<Fig5Row> fig5_table(const Scenario& s) {
    std::vector<double> shares = s.sweep.prb_shares;
    if (shares.empty())
        for (int i = 0; i <= 20; ++i) shares.push_back(i / 20.0);
    std::vector<Fig5Row> rows;
    for (double share : shares) {
        SliceConfig rr{share, Scheduler::RoundRobin};
        SliceConfig pf{share, Scheduler::ProportionalFair};
        rows.push_back({share, urllc_latency(rr), urllc_latency(pf)});
    }
    return rows;
}

std::string fig3_csv(std::span<const Fig3Row> rows) {
    std::ostringstream out;
    out << "sounding_period_slots,num_ues,payload_bits,data_rate_mbps,accumulation_us,transfer_us,"
           "total_us,feasible\n";
    for (const auto& r : rows)
        out << r.period_slots << ',' << r.num_ues << ',' << format_number(r.payload_bits) << ','
            << format_number(r.data_rate_mbps) << ',' << format_number(r.accumulation) << ','
            << format_number(r.transfer) << ',' << format_number(r.accumulation + r.transfer) << ','
            << (r.feasible ? "true" : "false") << '\n';
    return out.str();
}

std::string fig4_csv(std::span<const Fig4Row> rows, std::span<const long> caps) {
    std::ostringstream out;
    out << "app_count";
    for (long c : caps) out << ",e2_bps_cap" << c;
    for (long c : caps) out << ",reduction_cap" << c;
    out << '\n';
    for (const auto& r : rows) {
        out << r.app_count;
        for (double v : r.e2_bps) out << ',' << (std::isnan(v) ? "infeasible" : format_number(v));
        // Reduction relative to the first cap column.
        const double ref = r.e2_bps.empty() ? 0 : r.e2_bps.front();
        for (double v : r.e2_bps) {
            out << ',';
            if (!std::isnan(v) && !std::isnan(ref) && v > 0) out << format_number(ref / v);
        }
        out << '\n';
    }
    return out.str();
}

std::string fig5_csv(std::span<const Fig5Row> rows) {
    std::ostringstream out;
    out << "urllc_prb_share,rr_latency_ms,pf_latency_ms\n";
    for (const auto& r : rows)
        out << format_number(r.prb_share) << ',' << format_number(r.rr_ms) << ','
            << format_number(r.pf_ms) << '\n';
    return out.str();
}

std::string figure_csv(const Scenario& s, std::string_view figure) {
    if (figure == "fig3") return fig3_csv(fig3_table(s));
    if (figure == "fig4") return fig4_csv(fig4_table(s), s.sweep.caps);
    if (figure == "fig5") return fig5_csv(fig5_table(s));
    throw UnknownFigure(std::string(figure));
}

} // namespace dapps
