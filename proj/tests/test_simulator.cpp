#include <doctest.h>

#include "dapps/errors.hpp"
#include "dapps/orchestrator.hpp"
#include "dapps/simulator.hpp"
#include "fixtures.hpp"

#include <cmath>

using namespace dapps;
using fixtures::app;

namespace {

Assignment placed(const std::string& task, const std::string& node, const AppSpec& a,
                  std::vector<ControlBinding> controls = {}) {
    Assignment out;
    out.task_id = task;
    out.node_id = node;
    out.kind = a.kind;
    out.app = a;
    out.scope = {"du1"};
    out.controls = std::move(controls);
    return out;
}

SimulationConfig config(Micros duration, std::uint64_t seed = 1) {
    SimulationConfig c;
    c.duration = duration;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("URLLC latency anchors") {
    auto at = [](double s, Scheduler k) { return urllc_latency({s, k}); };
    CHECK(at(0.15, Scheduler::ProportionalFair) < at(0.15, Scheduler::RoundRobin));
    CHECK(at(0.30, Scheduler::ProportionalFair) == at(0.30, Scheduler::RoundRobin));

    double rr_min = 1e9;
    for (int i = 0; i <= 1000; ++i) {
        const double s = i / 1000.0;
        const double rr = at(s, Scheduler::RoundRobin), pf = at(s, Scheduler::ProportionalFair);
        rr_min = std::min(rr_min, rr);
        if (s < 0.30) CHECK(pf < rr);
        else CHECK(rr <= pf);
    }
    CHECK(rr_min == doctest::Approx(4.0).epsilon(0.0025));

    // Interpolation reproduces the knots.
    for (const auto& k : urllc_table()) {
        CHECK(at(k.prb_share, Scheduler::RoundRobin) == doctest::Approx(k.rr_ms));
        CHECK(at(k.prb_share, Scheduler::ProportionalFair) == doctest::Approx(k.pf_ms));
    }
    CHECK_THROWS(urllc_latency({1.2, Scheduler::RoundRobin}));
    CHECK_THROWS(urllc_latency({-0.1, Scheduler::RoundRobin}));
    CHECK(parse_scheduler("PF") == Scheduler::ProportionalFair);
    CHECK(parse_scheduler("RoundRobin") == Scheduler::RoundRobin);
    CHECK_FALSE(parse_scheduler("EDF"));
}

TEST_CASE("local dApp loop has no E2 term") {
    auto t = fixtures::small_cell();
    auto d = app("d", AppKind::DApp, 1'000, {{DataKind::DuKpm, 10'000, 1'000}}, {{"mcs", NodeKind::DU, 1'000}}, 500);
    Catalog cat({d});
    PlacementPlan plan{{placed("t", "du1", d, {{"mcs", "du1"}})}, 0};
    auto r = run(t, cat, plan, config(100'000));
    CHECK(r.e2_bits_total == 0);
    CHECK(r.deadline_violations == 0);
    CHECK(r.loop_latencies.size() == 100);
    for (const auto& s : r.loop_latencies) CHECK(s.latency == doctest::Approx(500));
}

TEST_CASE("remote xApp loop matches the transfer-latency closed form") {
    auto t = fixtures::small_cell();
    const Bits volume = 356'400;
    auto x = app("x", AppKind::XApp, 10'000, {{DataKind::DuKpm, volume, 10'000}}, {}, 500);
    Catalog cat({x});
    PlacementPlan plan{{placed("t", "ric", x)}, 0};
    auto r = run(t, cat, plan, config(100'000));

    const Link e2{"du1", "ric", Interface::E2, 200, 50, 1e9};
    const Micros expected = transfer_latency(volume, std::span(&e2, 1)) + 500;
    REQUIRE(r.loop_latencies.size() == 10);
    for (const auto& s : r.loop_latencies) CHECK(s.latency == doctest::Approx(expected));
    CHECK(r.e2_bits_total == doctest::Approx(volume * 10));
    CHECK(r.deadline_violations == 0);

    SUBCASE("a remote control adds the return path") {
        PlacementPlan ctl{{placed("t", "ric", x, {{"mcs", "du1"}})}, 0};
        auto x2 = x;
        x2.controls = {{"mcs", NodeKind::DU, 10'000}};
        ctl.assignments[0].app = x2;
        Catalog cat2({x2});
        auto r2 = run(t, cat2, ctl, config(100'000));
        CHECK(r2.loop_latencies[0].latency == doctest::Approx(expected + 250));
    }
}

TEST_CASE("latency above the control period counts as a violation") {
    auto t = fixtures::small_cell();
    auto x = app("x", AppKind::XApp, 10'000, {{DataKind::DuKpm, 40 * 356'400.0, 10'000}}, {}, 0);
    Catalog cat({x});
    PlacementPlan plan{{placed("t", "ric", x)}, 0};
    auto r = run(t, cat, plan, config(50'000));
    CHECK(r.loop_latencies.size() == 5);
    CHECK(r.deadline_violations >= 1);
}

TEST_CASE("shared streams travel once") {
    auto t = fixtures::small_cell();
    auto a = app("a", AppKind::XApp, 20'000, {{DataKind::DuKpm, 20'000, 20'000}}, {});
    auto b = app("b", AppKind::XApp, 20'000, {{DataKind::DuKpm, 30'000, 20'000}}, {});
    Catalog cat({a, b});
    PlacementPlan plan{{placed("ta", "ric", a), placed("tb", "ric", b)}, 0};
    auto res = simulate(t, cat, plan, config(100'000));
    CHECK(res.report.transfers == 5);
    for (const auto& tr : res.transfers) {
        CHECK(tr.subscribers == 2);
        CHECK(tr.volume == 30'000);
    }
    CHECK(res.report.e2_bits_total == doctest::Approx(5 * 30'000.0));
    CHECK(res.report.e2_bits_total ==
          doctest::Approx(e2_traffic(plan, cat, t).e2_total() * 100'000 / 1e6));
}

TEST_CASE("transfers on one link are served in arrival order") {
    auto t = fixtures::small_cell();
    auto a = app("a", AppKind::XApp, 10'000, {{DataKind::DuKpm, 1e6, 10'000}}, {});
    auto b = app("b", AppKind::XApp, 10'000, {{DataKind::RlcPackets, 1e6, 10'000}}, {});
    Catalog cat({a, b});
    PlacementPlan plan{{placed("ta", "ric", a), placed("tb", "ric", b)}, 0};
    auto res = simulate(t, cat, plan, config(10'000));
    REQUIRE(res.transfers.size() == 2);
    // 1 Mbit over 1 Gbit/s is 1 ms of transmission; the second waits for the first.
    CHECK(res.transfers[0].arrived == doctest::Approx(1'250));
    CHECK(res.transfers[1].arrived == doctest::Approx(2'250));
}

TEST_CASE("fronthaul carries local I/Q once per DU and period") {
    auto t = fixtures::small_cell();
    auto d1 = app("d1", AppKind::DApp, 1'000, {{DataKind::FreqDomainIQ, 356'400, 1'000}}, {});
    auto d2 = app("d2", AppKind::DApp, 1'000, {{DataKind::FreqDomainIQ, 100'000, 1'000}}, {});
    Catalog cat({d1, d2});
    PlacementPlan plan{{placed("a", "du1", d1), placed("b", "du1", d2)}, 0};
    auto r = run(t, cat, plan, config(10'000));
    CHECK(r.fronthaul_bits_total == doctest::Approx(10 * 356'400.0));
    CHECK(r.e2_bits_total == 0);
}

TEST_CASE("conservation and work conservation") {
    fixtures::Generator g(314);
    int runs = 0;
    for (int i = 0; i < 60; ++i) {
        auto in = g.instance();
        PlacementPlan plan;
        try {
            plan = place(in.intent, in.topology, in.catalog, in.intent.dapp_cap);
        } catch (const Infeasible&) {
            continue;
        }
        if (!detect_direct(plan).empty()) continue;
        auto cfg = config(60'000, 9);
        auto res = simulate(in.topology, in.catalog, plan, cfg);

        Bits moved = 0;
        for (const auto& tr : res.transfers) moved += tr.volume * static_cast<double>(tr.e2_hops);
        CHECK(res.report.e2_bits_total == doctest::Approx(moved));

        std::size_t expected = 0;
        for (const auto& a : plan.assignments)
            expected += static_cast<std::size_t>(std::floor(cfg.duration / a.app.control_period));
        CHECK(res.report.loop_latencies.size() == expected);
        for (const auto& s : res.report.loop_latencies) CHECK(s.latency >= 0);
        ++runs;
    }
    CHECK(runs > 20);
}

TEST_CASE("equal seeds give equal reports") {
    auto t = fixtures::small_cell();
    // a acts 2.5 ms into its loops, b on 5 ms boundaries, so no KPM sample
    // interval sees both.
    auto a = app("a", AppKind::XApp, 10'000, {{DataKind::DuKpm, 5'000, 10'000}}, {{"p", NodeKind::DU, 10'000}},
                 2'000);
    a.kpm_effects = {{"throughput", 0.1}};
    auto b = app("b", AppKind::DApp, 5'000, {{DataKind::RlcPackets, 5'000, 5'000}}, {{"q", NodeKind::DU, 5'000}});
    b.kpm_effects = {{"throughput", -0.1}};
    Catalog cat({a, b});
    PlacementPlan plan{{placed("ta", "ric", a, {{"p", "du1"}}), placed("tb", "du1", b, {{"q", "du1"}})}, 0};
    auto cfg = config(100'000, 21);
    cfg.kpm_noise = 0.01;
    auto r1 = simulate(t, cat, plan, cfg);
    auto r2 = simulate(t, cat, plan, cfg);
    CHECK(r1.report == r2.report);
    REQUIRE(r1.log.samples.size() == r2.log.samples.size());
    for (std::size_t i = 0; i < r1.log.samples.size(); ++i)
        CHECK(r1.log.samples[i].value == r2.log.samples[i].value);

    cfg.seed = 22;
    auto r3 = simulate(t, cat, plan, cfg);
    bool differs = false;
    for (std::size_t i = 0; i < r1.log.samples.size(); ++i)
        differs |= r1.log.samples[i].value != r3.log.samples[i].value;
    CHECK(differs);

    // The two apps push the same KPM in opposite directions.
    REQUIRE(r1.report.conflicts.size() == 1);
    CHECK(r1.report.conflicts[0].kind == ConflictKind::Implicit);
    CHECK(r1.report.conflicts[0].subject == "throughput");
}

TEST_CASE("trace follows time then insertion order") {
    auto t = fixtures::small_cell();
    auto a = app("a", AppKind::XApp, 10'000, {{DataKind::DuKpm, 5'000, 10'000}}, {});
    Catalog cat({a});
    PlacementPlan plan{{placed("ta", "ric", a)}, 0};
    auto cfg = config(30'000);
    cfg.record_trace = true;
    auto res = simulate(t, cat, plan, cfg);
    REQUIRE_FALSE(res.trace.empty());
    CHECK(res.trace.front().kind == EventKind::AppDeployed);
    CHECK(res.trace.back().kind == EventKind::AppTerminated);
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
        const auto& p = res.trace[i - 1];
        const auto& q = res.trace[i];
        CHECK((p.time < q.time || (p.time == q.time && p.seq < q.seq)));
    }
}

TEST_CASE("simulation preconditions") {
    auto t = fixtures::small_cell();
    auto a = app("a", AppKind::XApp, 10'000, {{DataKind::DuKpm, 5'000, 10'000}}, {});
    Catalog cat({a});
    PlacementPlan plan{{placed("ta", "ric", a, {{"p", "du1"}}), placed("tb", "ric", a, {{"p", "du1"}})}, 0};
    CHECK_THROWS_AS(simulate(t, cat, plan, config(10'000)), InvalidScenario);

    PlacementPlan ok{{placed("ta", "ric", a)}, 0};
    CHECK_THROWS_AS(simulate(t, cat, ok, config(0)), InvalidScenario);
    CHECK_THROWS_AS(simulate(t, Catalog{}, ok, config(10'000)), InvalidScenario);
    auto bad = config(10'000);
    bad.slice.urllc_prb_share = 2;
    CHECK_THROWS_AS(simulate(t, cat, ok, bad), InvalidScenario);
    PlacementPlan wrong_host{{placed("ta", "du1", a)}, 0};
    CHECK_THROWS_AS(simulate(t, cat, wrong_host, config(10'000)), InvalidScenario);

    // Duration shorter than a period: the app deploys and terminates.
    auto r = run(t, cat, ok, config(5'000));
    CHECK(r.loop_latencies.empty());
    CHECK(r.e2_bits_total == 0);
}

TEST_CASE("all-dApp plans never carry more E2 bits than all-xApp plans") {
    fixtures::Generator g(8080);
    int paired = 0;
    for (int i = 0; i < 40; ++i) {
        auto in = g.instance();
        PlacementPlan xplan;
        try {
            xplan = place(in.intent, in.topology, in.catalog, 0);
        } catch (const Infeasible&) {
            continue;
        }
        if (!detect_direct(xplan).empty()) continue;
        PlacementPlan dplan = xplan;
        for (auto& a : dplan.assignments) {
            const AppSpec* d = in.catalog.find(a.task_id + "-d");
            if (!d) continue;
            const Node& host = in.topology.node(a.scope.front());
            bool local = true;
            for (const auto& r : d->inputs) local = local && is_data_local(r.kind, host.kind);
            if (!local) continue;
            a.node_id = host.id;
            a.kind = AppKind::DApp;
            a.app = *d;
        }
        auto cfg = config(50'000, 4);
        CHECK(run(in.topology, in.catalog, dplan, cfg).e2_bits_total <=
              run(in.topology, in.catalog, xplan, cfg).e2_bits_total);
        ++paired;
    }
    CHECK(paired > 10);
}
