// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "dapps/conflicts.hpp"
#include "dapps/errors.hpp"
#include "dapps/exhaustive.hpp"
#include "dapps/overhead.hpp"
#include "dapps/report.hpp"
#include "dapps/scenario.hpp"
#include "dapps/sweep.hpp"
#include "fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace dapps;

namespace {

const std::string kScenarios = std::string(DAPPS_SOURCE_DIR) + "/scenarios/";

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!pass) detail << "; ";
            pass = false;
            detail << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Per-UE SRS rates for periods 5/10/20 slots and the 200-UE aggregate.
void fig3_arithmetic(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = load_scenario(kScenarios + "fig3_iq_beam.scenario");
    const auto rows = fig3_table(s);
    const std::string csv = fig3_csv(rows);
    const double elapsed = seconds_since(t0);

    // Independent arithmetic: samples * (I + Q) * bits over the sounding period.
    const double bits = 3300.0 * 2 * 3 * 2 * 9;
    const std::pair<long, double> expected[] = {{5, 570.24}, {10, 285.12}, {20, 142.56}};
    for (const auto& [period, mbps] : expected) {
        const double oracle = bits / (static_cast<double>(period) * 125e-6) / 1e6;
        o.require(std::abs(oracle - mbps) <= 0.01, "oracle disagrees at period " + std::to_string(period));
        bool seen = false;
        for (const auto& r : rows)
            if (r.period_slots == period && r.num_ues == 1) {
                seen = true;
                o.require(std::abs(r.data_rate_mbps - mbps) <= 0.01,
                          "period " + std::to_string(period) + " gave " + format_number(r.data_rate_mbps));
            }
        o.require(seen, "no single-UE row for period " + std::to_string(period));
    }
    double peak = 0;
    for (const auto& r : rows)
        if (r.period_slots == 5 && r.num_ues == 200) peak = r.data_rate_mbps * 1e6;
    o.require(peak > 100e9, "200-UE aggregate " + format_number(peak) + " bit/s");
    o.require(!csv.empty(), "empty CSV");
    o.require(elapsed < 1.0, "took " + format_number(elapsed) + " s");
    o.detail << (o.pass ? "" : "; ") << "per-UE 570.24/285.12/142.56 Mbit/s, 200 UEs "
             << format_number(peak / 1e9) << " Gbit/s, " << format_number(std::round(elapsed * 1e3)) << " ms";
}

// 2. Beam management over E2 misses 10 ms; monotone in deadline, antitone in soundings.
void realtime_infeasibility(Outcome& o) {
    const auto s = load_scenario(kScenarios + "fig3_iq_beam.scenario");
    const auto& study = *s.sweep.srs;
    const auto path = find_path(s.topology, study.src, study.dst, study.chain);
    o.require(path.size() == 1 && path[0].capacity == 1e9 && path[0].fixed_latency() == 250,
              "unexpected bundled E2 path");
    for (long soundings : {20L, 40L, 100L})
        for (long period : study.periods)
            for (long ues : study.ue_counts) {
                SrsConfig cfg = study.srs;
                cfg.sounding_period_slots = period;
                cfg.num_ues = ues;
                if (beam_mgmt_feasible(cfg, soundings, path, 10'000).feasible)
                    o.require(false, "feasible at period " + std::to_string(period) + ", " +
                                         std::to_string(ues) + " UEs, " + std::to_string(soundings) +
                                         " soundings");
            }

    fixtures::Generator g(31);
    int violations = 0;
    for (int i = 0; i < 2000; ++i) {
        SrsConfig cfg = study.srs;
        cfg.sounding_period_slots = g.uniform(1, 40);
        cfg.num_ues = g.uniform(1, 50);
        std::vector<Link> p{path[0]};
        p[0].capacity = g.coin() ? 1e9 : g.real(1e9, 1e12);
        const long r1 = g.uniform(1, 60), r2 = r1 + g.uniform(0, 60);
        const Micros d1 = g.real(0, 2e5), d2 = d1 + g.real(0, 2e5);
        const bool fd1 = beam_mgmt_feasible(cfg, r1, p, d1).feasible;
        const bool fd2 = beam_mgmt_feasible(cfg, r1, p, d2).feasible;
        const bool fr2 = beam_mgmt_feasible(cfg, r2, p, d1).feasible;
        if (fd1 && !fd2) ++violations;
        if (fr2 && !fd1) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " monotonicity violations");
    o.detail << (o.pass ? "" : "; ") << "all periods and UE counts infeasible against 10 ms, "
             << "2000 random monotonicity checks";
}

// 3. E2 traffic versus xApp count for dApp caps 0, 2 and 8.
void fig4_shape(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = load_scenario(kScenarios + "fig4_twelve_apps.scenario");
    const auto rows = fig4_table(s);
    const double elapsed = seconds_since(t0);

    const auto& caps = s.sweep.caps;
    const auto col = [&](long cap) {
        for (std::size_t k = 0; k < caps.size(); ++k)
            if (caps[k] == cap) return k;
        return caps.size();
    };
    const std::size_t c0 = col(0), c2 = col(2), c8 = col(8);
    if (rows.empty() || c0 == caps.size() || c2 == caps.size() || c8 == caps.size()) {
        o.require(false, "caps 0, 2 and 8 are required");
        return;
    }
    const double first = rows.front().e2_bps[c0];
    for (const auto& r : rows) {
        const double n = static_cast<double>(r.app_count);
        for (double v : r.e2_bps) o.require(std::isfinite(v), "infeasible point");
        o.require(r.e2_bps[c0] <= n * first, "cap-0 superlinear at " + std::to_string(r.app_count));
        o.require(r.e2_bps[c2] <= r.e2_bps[c0], "cap 2 above cap 0 at " + std::to_string(r.app_count));
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        o.require(rows[i].e2_bps[c0] >= rows[i - 1].e2_bps[c0], "cap-0 column decreases");
    const auto& last = rows.back();
    const double n = static_cast<double>(last.app_count);
    o.require(last.e2_bps[c0] < n * first, "cap-0 column is linear");
    const double r2 = last.e2_bps[c0] / last.e2_bps[c2];
    const double r8 = last.e2_bps[c0] / last.e2_bps[c8];
    o.require(r2 >= 2.0, "cap-2 reduction " + format_number(r2));
    o.require(r8 >= 3.5 && r8 <= 3.7, "cap-8 reduction " + format_number(r8));
    o.require(elapsed < 5.0, "took " + format_number(elapsed) + " s");
    o.detail << (o.pass ? "" : "; ") << last.app_count << " apps: cap0 " << format_number(last.e2_bps[c0] / 1e6)
             << " Mbit/s, cap2 x" << format_number(r2) << ", cap8 x" << format_number(r8) << ", "
             << format_number(std::round(elapsed * 1e3)) << " ms";
}

// 4. PF below RR under 30% share, RR at or below PF from 30%, RR floor 4 ms.
void fig5_anchors(Outcome& o) {
    double rr_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        const double share = i / 1000.0;
        const double rr = urllc_latency({share, Scheduler::RoundRobin});
        const double pf = urllc_latency({share, Scheduler::ProportionalFair});
        rr_min = std::min(rr_min, rr);
        if (share < 0.30 && !(pf < rr)) o.require(false, "PF >= RR at " + format_number(share));
        if (share >= 0.30 && !(rr <= pf)) o.require(false, "RR > PF at " + format_number(share));
    }
    o.require(std::abs(rr_min - 4.0) <= 0.01, "RR minimum " + format_number(rr_min) + " ms");
    o.detail << (o.pass ? "" : "; ") << "1001 shares, RR minimum " << format_number(rr_min) << " ms";
}

// 5. Placement optimum against brute-force enumeration.
void oracle_equivalence(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    fixtures::Generator g(20240501);
    int feasible = 0, mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        const auto in = g.instance({4, 5, true, true});
        const auto problem = prepare_placement(in.intent, in.topology, in.catalog, in.intent.dapp_cap);
        const auto best = exhaustive_search_serial(problem);
        std::optional<PlacementPlan> plan;
        try {
            plan = place(in.intent, in.topology, in.catalog, in.intent.dapp_cap);
        } catch (const Infeasible&) {
        }
        if (plan.has_value() != best.has_value()) {
            ++mismatches;
            continue;
        }
        if (!plan) continue;
        ++feasible;
        if (plan->objective_value != best->score.objective) ++mismatches;
    }
    const double elapsed = seconds_since(t0);
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    o.require(feasible >= 50, "only " + std::to_string(feasible) + " feasible instances");
    o.require(elapsed < 30.0, "took " + format_number(elapsed) + " s");
    o.detail << (o.pass ? "" : "; ") << "200 instances (" << feasible << " feasible), "
             << format_number(std::round(elapsed * 1e3)) << " ms";
}

// 6. Resolving direct conflicts leaves none behind.
void conflict_fixed_point(Outcome& o) {
    fixtures::Generator g(6060);
    int residual = 0, contested = 0;
    for (int i = 0; i < 100; ++i) {
        PlacementPlan plan;
        std::map<std::string, int> rank;
        const long n = g.uniform(1, 10);
        std::vector<int> ranks(static_cast<std::size_t>(n));
        std::iota(ranks.begin(), ranks.end(), 0);
        std::shuffle(ranks.begin(), ranks.end(), g.rng());
        for (long k = 0; k < n; ++k) {
            Assignment a;
            a.task_id = "t" + std::to_string(k);
            a.app.id = a.task_id + "-app";
            a.kind = g.coin() ? AppKind::DApp : AppKind::XApp;
            a.node_id = a.kind == AppKind::DApp ? "du" + std::to_string(g.uniform(1, 3)) : "ric";
            for (long j = g.uniform(1, 3); j > 0; --j)
                a.controls.push_back({"p" + std::to_string(g.uniform(0, 3)), "du" + std::to_string(g.uniform(1, 3))});
            std::sort(a.controls.begin(), a.controls.end());
            a.controls.erase(std::unique(a.controls.begin(), a.controls.end()), a.controls.end());
            rank[a.task_id] = ranks[static_cast<std::size_t>(k)];
            plan.assignments.push_back(std::move(a));
        }
        const auto conflicts = detect_direct(plan);
        if (!conflicts.empty()) ++contested;
        if (!detect_direct(resolve(conflicts, plan, rank).plan).empty()) ++residual;
    }
    o.require(residual == 0, std::to_string(residual) + " plans keep direct conflicts");
    o.detail << (o.pass ? "" : "; ") << "100 plans, " << contested << " with direct conflicts";
}

// 7. Repeated runs of every bundled scenario produce identical bytes.
std::string everything(const std::string& name) {
    const auto s = load_scenario(kScenarios + name + ".scenario");
    std::string out;
    try {
        out += plan_json(place(s.intent, s.topology, s.catalog, s.intent.dapp_cap), s.intent, s.topology).dump();
        const auto run = run_scenario(s);
        out += report_csv(run.sim.report);
        out += report_json(run.sim.report).dump();
    } catch (const Infeasible& e) {
        out += e.what();
    }
    if (s.sweep.srs && !s.sweep.srs->src.empty()) out += figure_csv(s, "fig3");
    if (!s.sweep.axis.empty() && !s.sweep.values.empty()) {
        const auto axis = parse_axis(s.sweep.axis);
        out += sweep_csv(axis, sweep(s, axis, s.sweep.values));
    }
    if (s.sweep.axis == "app_count") out += figure_csv(s, "fig4");
    out += figure_csv(s, "fig5");
    return out;
}

void determinism(Outcome& o) {
    const char* names[] = {"two_task", "two_task_cap0", "fig3_iq_beam", "fig4_twelve_apps",
                           "fig5_urllc_slicing"};
    for (const char* name : names) {
        const std::string first = everything(name);
        for (int rep = 1; rep < 10; ++rep)
            if (everything(name) != first) {
                o.require(false, std::string(name) + " differs on run " + std::to_string(rep + 1));
                break;
            }
    }
    o.detail << (o.pass ? "" : "; ") << "5 scenarios x 10 runs";
}

// 8. Hosting every task locally as a dApp never adds E2 traffic over the all-xApp plan.
void dominance(Outcome& o) {
    fixtures::Generator g(8888);
    int compared = 0, violations = 0, strict = 0;
    for (int attempt = 0; compared < 100 && attempt < 10'000; ++attempt) {
        const auto in = g.instance({4, 5, true, false});
        if (in.intent.tasks.empty()) continue;
        PlacementPlan xapps, dapps;
        bool complete = true;
        for (const auto& task : in.intent.tasks) {
            const Candidate* x = nullptr;
            const Candidate* d = nullptr;
            const auto cands = candidate_nodes(task, in.topology, in.catalog);
            for (const auto& c : cands) {
                if (c.kind == AppKind::XApp && !x) x = &c;
                if (c.kind == AppKind::DApp && c.data_latency == 0 && !d) d = &c;
            }
            if (!x) {
                complete = false;
                break;
            }
            xapps.assignments.push_back(make_assignment(task, *x, in.topology, in.catalog));
            dapps.assignments.push_back(make_assignment(task, d ? *d : *x, in.topology, in.catalog));
        }
        if (!complete) continue;
        ++compared;
        const double ex = e2_traffic(xapps, in.catalog, in.topology).e2_total();
        const double ed = e2_traffic(dapps, in.catalog, in.topology).e2_total();
        if (ed > ex) ++violations;
        if (ed < ex) ++strict;
    }
    o.require(compared == 100, "only " + std::to_string(compared) + " comparable scenarios");
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.detail << (o.pass ? "" : "; ") << compared << " paired plans, " << violations << " violations, " << strict
             << " strictly lower";
}

} // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
        {"fig3 arithmetic", fig3_arithmetic},
        {"real-time infeasibility", realtime_infeasibility},
        {"fig4 shape", fig4_shape},
        {"fig5 anchors", fig5_anchors},
        {"orchestrator oracle equivalence", oracle_equivalence},
        {"conflict fixed point", conflict_fixed_point},
        {"determinism", determinism},
        {"dominance", dominance},
    };
    int failures = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            check(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", ++index, name, o.detail.str().c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
