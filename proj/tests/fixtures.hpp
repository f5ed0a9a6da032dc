#pragma once

// Builders and seeded generators shared by the unit and acceptance tests.

#include "dapps/apps.hpp"
#include "dapps/orchestrator.hpp"
#include "dapps/plan.hpp"
#include "dapps/topology.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace dapps;

inline Node node(std::string id, NodeKind kind, ResourceVector res = {8, 1, 16384}) {
    Node n{std::move(id), kind, res, {}};
    for (DataKind d : kAllDataKinds)
        if (is_data_local(d, kind)) n.hosted_data.insert(d);
    return n;
}

inline void both_ways(std::vector<Link>& links, const std::string& a, const std::string& b,
                      Interface i, Micros prop, Micros sw, BitsPerSecond cap) {
    links.push_back({a, b, i, prop, sw, cap});
    links.push_back({b, a, i, prop, sw, cap});
}

// ru1 - du1 - cu1 behind a near-RT RIC (E2 at 200 + 50 us, 1 Gbit/s) and an SMO.
inline Topology small_cell() {
    std::vector<Node> nodes{node("ru1", NodeKind::RU, {}), node("du1", NodeKind::DU),
                            node("cu1", NodeKind::CU), node("ric", NodeKind::NearRtRic, {64, 4, 131072}),
                            node("smo", NodeKind::NonRtRic, {32, 0, 65536})};
    std::vector<Link> links;
    both_ways(links, "ru1", "du1", Interface::OpenFronthaul, 5, 1, 25e9);
    both_ways(links, "du1", "cu1", Interface::F1, 20, 5, 10e9);
    both_ways(links, "ric", "du1", Interface::E2, 200, 50, 1e9);
    both_ways(links, "ric", "cu1", Interface::E2, 200, 50, 1e9);
    both_ways(links, "smo", "ric", Interface::A1, 1000, 100, 1e9);
    return Topology(std::move(nodes), std::move(links));
}

inline AppSpec app(std::string id, AppKind kind, Micros period, std::vector<DataRequirement> inputs,
                   std::vector<ControlTarget> controls, Micros inference = 0,
                   ResourceVector footprint = {1, 0, 512}) {
    AppSpec a;
    a.id = std::move(id);
    a.kind = kind;
    a.control_period = period;
    a.inputs = std::move(inputs);
    a.controls = std::move(controls);
    a.inference_latency = inference;
    a.footprint = footprint;
    return a;
}

inline TaskRequest task(std::string id, std::set<DataKind> inputs, std::vector<ControlTarget> controls,
                        Micros deadline, std::vector<std::string> scope) {
    return {std::move(id), std::move(inputs), std::move(controls), deadline, std::move(scope)};
}

// ── Seeded random instances ────────────────────────────────────────────────

struct Instance {
    Topology topology;
    Catalog catalog;
    Intent intent;
};

struct InstanceShape {
    std::size_t max_tasks = 4;
    std::size_t max_nodes = 5;
    bool allow_cu = true;
    bool random_cap = true;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
    }

    // A RIC plus RAN nodes (at most `max_nodes` in total), random capacities,
    // E2 latencies and link speeds, and a catalog with xApp and dApp variants
    // for each generated task.
    Instance instance(const InstanceShape& shape = {}) {
        Instance in;
        std::vector<Node> nodes{node("ric", NodeKind::NearRtRic, {real(2, 6), 2, 65536})};
        std::vector<Link> links;
        const long ran = uniform(1, static_cast<long>(shape.max_nodes) - 1);
        std::vector<std::string> dus, cus;
        for (long i = 0; i < ran; ++i) {
            const bool cu = shape.allow_cu && i > 0 && coin(0.35);
            const std::string id = (cu ? "cu" : "du") + std::to_string(i + 1);
            nodes.push_back(node(id, cu ? NodeKind::CU : NodeKind::DU,
                                 {static_cast<double>(uniform(1, 3)), 1, 8192}));
            both_ways(links, "ric", id, Interface::E2, real(50, 400), real(0, 100),
                      coin() ? 1e9 : 1e8);
            (cu ? cus : dus).push_back(id);
        }
        for (const auto& cu : cus)
            for (const auto& du : dus)
                if (coin(0.7)) both_ways(links, cu, du, Interface::F1, 20, 5, 10e9);
        in.topology = Topology(std::move(nodes), std::move(links));

        std::vector<std::string> ran_nodes = dus;
        ran_nodes.insert(ran_nodes.end(), cus.begin(), cus.end());

        std::vector<AppSpec> apps;
        const long ntasks = uniform(0, static_cast<long>(shape.max_tasks));
        for (long k = 0; k < ntasks; ++k) {
            const std::string tid = "t" + std::to_string(k);
            // Inputs from one producer kind so a dApp variant can be local.
            const bool at_cu = !cus.empty() && coin(0.3);
            const std::vector<DataKind> pool =
                at_cu ? std::vector<DataKind>{DataKind::PdcpSdapData, DataKind::CuKpm}
                      : std::vector<DataKind>{DataKind::FreqDomainIQ, DataKind::TransportBlocks,
                                              DataKind::RlcPackets, DataKind::DuKpm};
            std::set<DataKind> inputs{pick(pool)};
            if (coin(0.4)) inputs.insert(pick(pool));
            if (coin(0.15)) inputs.insert(DataKind::AggregateKpm);

            const NodeKind ctl_kind = at_cu ? NodeKind::CU : NodeKind::DU;
            const std::string param = coin(0.3) ? "shared_param" : "param_" + tid;
            const Micros deadline = static_cast<double>(uniform(2, 50)) * 1000;

            std::vector<std::string> scope;
            const auto& owners = at_cu ? cus : dus;
            scope.push_back(pick(owners));
            if (coin(0.25)) scope.push_back(pick(ran_nodes));
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

            in.intent.tasks.push_back(task(tid, inputs, {{param, ctl_kind, deadline}}, deadline, scope));

            auto reqs = [&](Micros freshness) {
                std::vector<DataRequirement> r;
                for (DataKind d : inputs)
                    r.push_back({d, static_cast<double>(uniform(1, 400)) * 1000, freshness});
                return r;
            };
            const Micros xp = std::max(10'000.0, deadline - static_cast<double>(uniform(0, 10)) * 1000);
            if (xp <= deadline)
                apps.push_back(app(tid + "-x", AppKind::XApp, xp, reqs(deadline), {{param, ctl_kind, xp}},
                                   0, {real(0.5, 2), 0, 512}));
            if (coin(0.8)) {
                const Micros dp = static_cast<double>(uniform(1, 9)) * 1000;
                apps.push_back(app(tid + "-d", AppKind::DApp, dp, reqs(dp), {{param, ctl_kind, dp}}, 0,
                                   {real(0.5, 2), 0, 512}));
            }
        }
        in.catalog = Catalog(std::move(apps));
        in.intent.id = "random";
        if (shape.random_cap && coin(0.6)) in.intent.dapp_cap = uniform(0, 2);
        return in;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace fixtures
