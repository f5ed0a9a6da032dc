#include "dapps/simulator.hpp"
#include "dapps/errors.hpp"
#include "dapps/overhead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <tuple>

namespace dapps {

std::string_view to_string(Scheduler s) {
    return s == Scheduler::RoundRobin ? "RR" : "PF";
}

std::optional<Scheduler> parse_scheduler(std::string_view s) {
    if (s == "RR" || s == "RoundRobin") return Scheduler::RoundRobin;
    if (s == "PF" || s == "ProportionalFair") return Scheduler::ProportionalFair;
    return std::nullopt;
}

std::span<const UrllcKnot> urllc_table() {
    static constexpr UrllcKnot kTable[] = {
        {0.0, 60.0, 40.0}, {0.1, 30.0, 20.0}, {0.2, 16.0, 12.0}, {0.3, 9.0, 9.0},
        {0.4, 6.0, 7.5},   {0.5, 4.8, 6.5},   {0.6, 4.2, 6.0},   {0.7, 4.0, 5.8},
        {0.8, 4.0, 5.7},   {0.9, 4.1, 5.7},   {1.0, 4.3, 5.8},
    };
    return kTable;
}

double urllc_latency(const SliceConfig& cfg) {
    if (!cfg.valid()) throw Error("URLLC PRB share must lie in [0, 1]");
    auto table = urllc_table();
    auto pick = [&](const UrllcKnot& k) {
        return cfg.scheduler == Scheduler::RoundRobin ? k.rr_ms : k.pf_ms;
    };
    const double x = cfg.urllc_prb_share;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (x <= table[i].prb_share) {
            const auto& a = table[i - 1];
            const auto& b = table[i];
            const double f = (x - a.prb_share) / (b.prb_share - a.prb_share);
            return pick(a) + f * (pick(b) - pick(a));
        }
    }
    return pick(table.back());
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::DataReady:      return "DataReady";
        case EventKind::TransferDone:   return "TransferDone";
        case EventKind::InferenceDone:  return "InferenceDone";
        case EventKind::ControlApplied: return "ControlApplied";
        case EventKind::AppDeployed:    return "AppDeployed";
        case EventKind::AppTerminated:  return "AppTerminated";
    }
    return "?";
}

namespace {

struct RemoteInput {
    DataKind kind;
    std::string source;
    std::vector<Link> route;
};

struct Instance {
    const Assignment* assignment = nullptr;
    const Node* host = nullptr;
    std::vector<RemoteInput> remote;
    bool local_iq = false; // consumes I/Q delivered to its own DU over the fronthaul
    Micros control_latency = 0;
    std::size_t loops = 0;
    std::size_t completed = 0;
    std::vector<Micros> start;
    std::vector<std::size_t> pending;
};

struct Transfer {
    TransferRecord record;
    std::vector<Link> route;
    std::vector<std::pair<std::size_t, std::size_t>> waiting; // (instance, loop)
    bool done = false;
};

struct QueuedEvent {
    Event ev;
    std::size_t target = 0; // instance index, or transfer index for TransferDone
};

struct Later {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        return std::tie(a.ev.time, a.ev.seq) > std::tie(b.ev.time, b.ev.seq);
    }
};

class Engine {
public:
    Engine(const Topology& t, const PlacementPlan& plan, const SimulationConfig& cfg)
        : t_(t), cfg_(cfg) {
        for (const auto& a : plan.assignments) build_instance(a);
        size_shared_streams();
    }

    SimulationResult run() {
        for (std::size_t i = 0; i < inst_.size(); ++i)
            push(0, EventKind::AppDeployed, inst_[i].assignment->task_id, i, 0);

        while (!queue_.empty()) {
            QueuedEvent q = queue_.top();
            queue_.pop();
            if (cfg_.record_trace) out_.trace.push_back(q.ev);
            dispatch(q);
        }

        out_.report.duration = cfg_.duration;
        out_.report.seed = cfg_.seed;
        out_.report.urllc_latency_ms = urllc_latency(cfg_.slice);
        out_.report.transfers = out_.transfers.size();
        sample_kpms();
        if (!out_.log.actions.empty() && !out_.log.samples.empty())
            out_.report.conflicts =
                detect_implicit(out_.log, cfg_.implicit_window, cfg_.implicit_threshold);
        return std::move(out_);
    }

private:
    void build_instance(const Assignment& a) {
        Instance in;
        in.assignment = &a;
        in.host = t_.find(a.node_id);
        if (!in.host) throw InvalidScenario("task " + a.task_id + " placed on unknown node " + a.node_id);
        if (!can_host(in.host->kind, a.kind) || a.kind != a.app.kind)
            throw InvalidScenario("task " + a.task_id + ": " + std::string(to_string(a.kind)) +
                                  " cannot run on " + a.node_id);
        if (!(a.app.control_period > 0))
            throw InvalidScenario("task " + a.task_id + " has a nonpositive control period");

        for (const auto& req : a.app.inputs) {
            if (is_data_local(req.kind, in.host->kind)) {
                if (req.kind == DataKind::FreqDomainIQ) in.local_iq = true;
                continue;
            }
            auto sources = data_sources(t_, req.kind, *in.host, a.scope);
            if (sources.empty())
                throw InvalidScenario("task " + a.task_id + ": no producer of " +
                                      std::string(to_string(req.kind)));
            for (const Node* s : sources) {
                auto route = shortest_route(t_, s->id, in.host->id, data_interfaces());
                if (!route || route->empty())
                    throw InvalidScenario("task " + a.task_id + ": no route from " + s->id);
                in.remote.push_back({req.kind, s->id, std::move(*route)});
            }
        }
        for (const auto& b : a.controls) {
            if (b.node == in.host->id) continue;
            auto route = shortest_route(t_, in.host->id, b.node, control_interfaces());
            if (!route)
                throw InvalidScenario("task " + a.task_id + ": cannot reach " + b.node);
            Micros c = 0;
            for (const auto& l : *route) c += l.fixed_latency();
            in.control_latency = std::max(in.control_latency, c);
        }
        in.loops = static_cast<std::size_t>(std::floor(cfg_.duration / a.app.control_period));
        in.start.assign(in.loops, 0);
        in.pending.assign(in.loops, 0);
        inst_.push_back(std::move(in));
    }

    // Largest per-period volume asked of each (source, kind, destination) stream.
    void size_shared_streams() {
        for (const auto& in : inst_)
            for (const auto& r : in.remote) {
                Bits v = 0;
                for (const auto& req : in.assignment->app.inputs)
                    if (req.kind == r.kind) v = req.volume_bits_per_period;
                Bits& slot = stream_volume_[{r.source, r.kind, in.host->id}];
                slot = std::max(slot, v);
            }
        for (const auto& in : inst_) {
            if (!in.local_iq) continue;
            for (const auto& req : in.assignment->app.inputs)
                if (req.kind == DataKind::FreqDomainIQ) {
                    Bits& slot = iq_volume_[in.host->id];
                    slot = std::max(slot, req.volume_bits_per_period);
                }
        }
    }

    void push(Micros time, EventKind kind, const std::string& subject, std::size_t target,
              std::size_t loop) {
        queue_.push({Event{time, seq_++, kind, subject, loop}, target});
    }

    void dispatch(const QueuedEvent& q) {
        const Micros now = q.ev.time;
        switch (q.ev.kind) {
            case EventKind::AppDeployed: {
                Instance& in = inst_[q.target];
                if (in.loops == 0)
                    push(now, EventKind::AppTerminated, q.ev.subject, q.target, 0);
                else
                    push(0, EventKind::DataReady, q.ev.subject, q.target, 0);
                break;
            }
            case EventKind::DataReady: data_ready(q.target, q.ev.loop, now); break;
            case EventKind::TransferDone: transfer_done(q.target, now); break;
            case EventKind::InferenceDone: {
                const Instance& in = inst_[q.target];
                push(now + in.control_latency, EventKind::ControlApplied, q.ev.subject, q.target,
                     q.ev.loop);
                break;
            }
            case EventKind::ControlApplied: control_applied(q.target, q.ev.loop, now); break;
            case EventKind::AppTerminated: break;
        }
    }

    void data_ready(std::size_t i, std::size_t k, Micros now) {
        Instance& in = inst_[i];
        const std::string& id = in.assignment->task_id;
        in.start[k] = now;
        in.pending[k] = 0;

        if (in.local_iq && has_fronthaul(in.host->id) && iq_seen_.emplace(in.host->id, now).second)
            out_.report.fronthaul_bits_total += iq_volume_[in.host->id];

        for (const auto& r : in.remote) {
            auto key = std::make_tuple(r.source, r.kind, in.host->id, now);
            auto it = open_.find(key);
            std::size_t x;
            if (it == open_.end()) {
                x = start_transfer(r, in.host->id, now);
                open_.emplace(key, x);
            } else {
                x = it->second;
            }
            Transfer& tr = transfers_[x];
            ++tr.record.subscribers;
            if (!tr.done) {
                tr.waiting.emplace_back(i, k);
                ++in.pending[k];
            }
        }
        if (in.pending[k] == 0)
            push(now + in.assignment->app.inference_latency, EventKind::InferenceDone, id, i, k);
        if (k + 1 < in.loops)
            push(static_cast<double>(k + 1) * in.assignment->app.control_period,
                 EventKind::DataReady, id, i, k + 1);
    }

    bool has_fronthaul(const std::string& du) const {
        for (const auto& l : t_.links())
            if (l.interface == Interface::OpenFronthaul && l.dst == du) return true;
        return false;
    }

    std::size_t start_transfer(const RemoteInput& r, const std::string& dest, Micros now) {
        Transfer tr;
        tr.route = r.route;
        tr.record.source = r.source;
        tr.record.kind = r.kind;
        tr.record.destination = dest;
        tr.record.volume = stream_volume_.at({r.source, r.kind, dest});
        tr.record.dispatched = now;

        Micros start = now;
        BitsPerSecond bottleneck = std::numeric_limits<double>::infinity();
        Micros fixed = 0;
        for (const auto& l : tr.route) {
            start = std::max(start, busy_until_[l.id()]);
            bottleneck = std::min(bottleneck, l.capacity);
            fixed += l.fixed_latency();
            if (l.interface == Interface::E2) ++tr.record.e2_hops;
            if (l.interface == Interface::OpenFronthaul) ++tr.record.fronthaul_hops;
        }
        const Micros tx = tr.record.volume / bottleneck * 1e6;
        for (const auto& l : tr.route) busy_until_[l.id()] = start + tx;
        tr.record.arrived = start + tx + fixed;

        const std::size_t x = transfers_.size();
        transfers_.push_back(std::move(tr));
        push(transfers_[x].record.arrived, EventKind::TransferDone,
             r.source + ">" + dest + ":" + std::string(to_string(r.kind)), x, 0);
        return x;
    }

    void transfer_done(std::size_t x, Micros now) {
        Transfer& tr = transfers_[x];
        tr.done = true;
        out_.report.e2_bits_total += tr.record.volume * static_cast<double>(tr.record.e2_hops);
        out_.report.fronthaul_bits_total +=
            tr.record.volume * static_cast<double>(tr.record.fronthaul_hops);
        out_.transfers.push_back(tr.record);
        for (auto [i, k] : tr.waiting) {
            Instance& in = inst_[i];
            if (--in.pending[k] == 0)
                push(now + in.assignment->app.inference_latency, EventKind::InferenceDone,
                     in.assignment->task_id, i, k);
        }
        tr.waiting.clear();
    }

    void control_applied(std::size_t i, std::size_t k, Micros now) {
        Instance& in = inst_[i];
        const auto& app = in.assignment->app;
        const Micros latency = now - in.start[k];
        out_.report.loop_latencies.push_back({in.assignment->task_id, in.start[k], latency});
        if (latency > app.control_period) ++out_.report.deadline_violations;
        out_.log.actions.push_back({now, in.assignment->task_id});
        for (const auto& [kpm, delta] : app.kpm_effects) effects_.push_back({now, kpm, delta});
        if (++in.completed == in.loops)
            push(now, EventKind::AppTerminated, in.assignment->task_id, i, 0);
    }

    // Piecewise-constant KPM levels driven by control effects, sampled on a
    // fixed grid. A sample at time t reflects actions strictly before t.
    void sample_kpms() {
        std::set<std::string> kpms;
        for (const auto& e : effects_) kpms.insert(e.kpm);
        if (kpms.empty() || !(cfg_.kpm_sample_period > 0)) return;

        std::mt19937_64 rng(cfg_.seed);
        std::normal_distribution<double> noise(0.0, cfg_.kpm_noise > 0 ? cfg_.kpm_noise : 1.0);
        std::map<std::string, double> level;
        for (const auto& k : kpms) level[k] = 1.0;

        std::size_t next = 0;
        const auto n = static_cast<std::size_t>(std::floor(cfg_.duration / cfg_.kpm_sample_period));
        for (std::size_t j = 0; j <= n; ++j) {
            const Micros ts = static_cast<double>(j) * cfg_.kpm_sample_period;
            while (next < effects_.size() && effects_[next].time < ts) {
                level[effects_[next].kpm] *= 1.0 + effects_[next].delta;
                ++next;
            }
            for (const auto& k : kpms) {
                double v = level[k];
                if (cfg_.kpm_noise > 0) v *= 1.0 + noise(rng);
                out_.log.samples.push_back({ts, k, v});
            }
        }
    }

    struct Effect {
        Micros time;
        std::string kpm;
        double delta;
    };

    const Topology& t_;
    const SimulationConfig& cfg_;
    std::vector<Instance> inst_;
    std::vector<Transfer> transfers_;
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, Later> queue_;
    std::uint64_t seq_ = 0;
    std::map<std::tuple<std::string, DataKind, std::string>, Bits> stream_volume_;
    std::map<std::string, Bits> iq_volume_;
    std::set<std::pair<std::string, Micros>> iq_seen_;
    std::map<std::tuple<std::string, DataKind, std::string, Micros>, std::size_t> open_;
    std::map<std::string, Micros> busy_until_;
    std::vector<Effect> effects_;
    SimulationResult out_;
};

} // namespace

SimulationResult simulate(const Topology& t, const Catalog& catalog, const PlacementPlan& plan,
                          const SimulationConfig& cfg) {
    if (!(cfg.duration > 0)) throw InvalidScenario("simulation duration must be positive");
    if (!cfg.slice.valid()) throw InvalidScenario("URLLC PRB share must lie in [0, 1]");
    if (!validate_topology(t).ok()) throw InvalidScenario("topology does not validate");
    for (const auto& a : plan.assignments)
        if (!catalog.find(a.app.id))
            throw InvalidScenario("task " + a.task_id + " uses unknown app " + a.app.id);
    if (auto direct = detect_direct(plan); !direct.empty())
        throw InvalidScenario("plan has unresolved direct conflict on " + direct.front().subject);
    return Engine(t, plan, cfg).run();
}

} // namespace dapps
