#pragma once

#include "dapps/scenario.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dapps {

enum class SweepAxis { AppCount, DappCap, SoundingPeriod, NumUes, UrllcPrbShare };

std::string_view to_string(SweepAxis a);
// Throws UnknownAxis.
SweepAxis parse_axis(std::string_view name);

struct SweepRow {
    double value = 0;
    std::string status = "ok"; // "ok", "infeasible" or an error message
    BitsPerSecond objective = 0;
    std::size_t dapps = 0;
    MetricsReport report;
    BitsPerSecond srs_data_rate = 0;
};

// Copy of `base` with the axis parameter set to `value`. app_count keeps the
// first `value` tasks of the intent; sounding_period and num_ues edit the SRS
// study (created with defaults when absent).
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

// One full place/resolve/simulate run per value with the scenario seed.
// Errors are reported per row.
std::vector<SweepRow> sweep_serial(const Scenario& base, SweepAxis axis, std::span<const double> values);
// Same rows, points evaluated concurrently.
std::vector<SweepRow> sweep_parallel(const Scenario& base, SweepAxis axis, std::span<const double> values);
inline std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis, std::span<const double> values) {
    return sweep_parallel(base, axis, values);
}

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows);

// ── Figure tables ──────────────────────────────────────────────────────────

struct Fig3Row {
    long period_slots = 0;
    long num_ues = 0;
    Bits payload_bits = 0;  // per UE per occasion
    double data_rate_mbps = 0;
    Micros accumulation = 0;
    Micros transfer = 0;
    bool feasible = false;
};

struct Fig4Row {
    long app_count = 0;
    std::vector<BitsPerSecond> e2_bps; // one per cap, NaN when infeasible
};

struct Fig5Row {
    double prb_share = 0;
    double rr_ms = 0;
    double pf_ms = 0;
};

// Needs `sweep.srs` with a path. Rows ordered by period then UE count.
std::vector<Fig3Row> fig3_table(const Scenario& s);
// Placement objective for the first n tasks, n = 1..tasks, at every sweep cap.
std::vector<Fig4Row> fig4_table_serial(const Scenario& s);
std::vector<Fig4Row> fig4_table_parallel(const Scenario& s);
inline std::vector<Fig4Row> fig4_table(const Scenario& s) { return fig4_table_parallel(s); }
// `sweep.prb_shares`, or 0..1 in steps of 0.05 when empty.
std::vector<Fig5Row> fig5_table(const Scenario& s);

std::string fig3_csv(std::span<const Fig3Row> rows);
std::string fig4_csv(std::span<const Fig4Row> rows, std::span<const long> caps);
std::string fig5_csv(std::span<const Fig5Row> rows);

// Dispatches "fig3" / "fig4" / "fig5". Throws UnknownFigure.
std::string figure_csv(const Scenario& s, std::string_view figure);

} // namespace dapps
