#include "dapps/scenario.hpp"
#include "dapps/errors.hpp"
#include "yaml_util.hpp"

#include <fstream>
#include <sstream>

namespace dapps {

namespace {

ResourceVector parse_resources(const YAML::Node& n, const std::string& path) {
    yaml::check_keys(n, path, {"cpu", "gpu", "memory_mib"});
    return {yaml::get_or<double>(n, path, "cpu", 0), yaml::get_or<double>(n, path, "gpu", 0),
            yaml::get_or<double>(n, path, "memory_mib", 0)};
}

Topology parse_topology(const YAML::Node& n, const std::string& path) {
    yaml::check_keys(n, path, {"nodes", "links"});
    std::vector<Node> nodes;
    auto ns = yaml::require(n, path, "nodes");
    yaml::expect_seq(ns, path + ".nodes");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto p = yaml::item(path + ".nodes", i);
        yaml::check_keys(ns[i], p, {"id", "kind", "resources", "hosted_data"});
        Node node;
        node.id = yaml::get<std::string>(ns[i], p, "id");
        node.kind = yaml::node_kind(yaml::require(ns[i], p, "kind"), p + ".kind");
        if (auto r = ns[i]["resources"]) node.resources = parse_resources(r, p + ".resources");
        if (auto h = ns[i]["hosted_data"]) {
            yaml::expect_seq(h, p + ".hosted_data");
            for (std::size_t k = 0; k < h.size(); ++k)
                node.hosted_data.insert(yaml::data_kind(h[k], yaml::item(p + ".hosted_data", k)));
        } else {
            for (DataKind d : kAllDataKinds)
                if (is_data_local(d, node.kind)) node.hosted_data.insert(d);
        }
        nodes.push_back(std::move(node));
    }

    std::vector<Link> links;
    if (auto ls = n["links"]) {
        yaml::expect_seq(ls, path + ".links");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const auto p = yaml::item(path + ".links", i);
            yaml::check_keys(ls[i], p,
                             {"src", "dst", "interface", "propagation_us", "switching_us",
                              "capacity_bps", "bidirectional"});
            Link l;
            l.src = yaml::get<std::string>(ls[i], p, "src");
            l.dst = yaml::get<std::string>(ls[i], p, "dst");
            l.interface = yaml::enum_value<Interface>(yaml::require(ls[i], p, "interface"),
                                                      p + ".interface", parse_interface);
            l.propagation_latency = yaml::get_or<double>(ls[i], p, "propagation_us", 0);
            l.switching_latency = yaml::get_or<double>(ls[i], p, "switching_us", 0);
            l.capacity = yaml::get<double>(ls[i], p, "capacity_bps");
            const bool both = yaml::get_or<bool>(ls[i], p, "bidirectional", true);
            links.push_back(l);
            if (both) {
                std::swap(l.src, l.dst);
                links.push_back(l);
            }
        }
    }
    return Topology(std::move(nodes), std::move(links));
}

std::vector<AppSpec> parse_apps(const YAML::Node& n, const std::string& path) {
    yaml::expect_seq(n, path);
    std::vector<AppSpec> apps;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const auto p = yaml::item(path, i);
        const auto& an = n[i];
        yaml::check_keys(an, p,
                         {"id", "kind", "control_period_us", "inference_latency_us", "footprint",
                          "inputs", "controls", "kpm_effects"});
        AppSpec a;
        a.id = yaml::get<std::string>(an, p, "id");
        a.kind = yaml::enum_value<AppKind>(yaml::require(an, p, "kind"), p + ".kind", parse_app_kind);
        a.control_period = yaml::get<double>(an, p, "control_period_us");
        a.inference_latency = yaml::get_or<double>(an, p, "inference_latency_us", 0);
        if (auto f = an["footprint"]) a.footprint = parse_resources(f, p + ".footprint");

        if (auto in = an["inputs"]) {
            yaml::expect_seq(in, p + ".inputs");
            for (std::size_t k = 0; k < in.size(); ++k) {
                const auto ip = yaml::item(p + ".inputs", k);
                yaml::check_keys(in[k], ip, {"kind", "volume_bits", "freshness_us"});
                DataRequirement r;
                r.kind = yaml::data_kind(yaml::require(in[k], ip, "kind"), ip + ".kind");
                r.volume_bits_per_period = yaml::get<double>(in[k], ip, "volume_bits");
                r.freshness_deadline =
                    yaml::get_or<double>(in[k], ip, "freshness_us", a.control_period);
                a.inputs.push_back(r);
            }
        }
        if (auto ctl = an["controls"]) {
            yaml::expect_seq(ctl, p + ".controls");
            for (std::size_t k = 0; k < ctl.size(); ++k) {
                const auto cp = yaml::item(p + ".controls", k);
                yaml::check_keys(ctl[k], cp, {"parameter", "controlled_at", "granularity_us"});
                ControlTarget c;
                c.parameter = yaml::get<std::string>(ctl[k], cp, "parameter");
                c.controlled_at =
                    yaml::node_kind(yaml::require(ctl[k], cp, "controlled_at"), cp + ".controlled_at");
                c.granularity_period =
                    yaml::get_or<double>(ctl[k], cp, "granularity_us", a.control_period);
                a.controls.push_back(std::move(c));
            }
        }
        if (auto fx = an["kpm_effects"]) {
            yaml::expect_map(fx, p + ".kpm_effects");
            for (const auto& kv : fx) {
                auto kpm = kv.first.as<std::string>();
                a.kpm_effects[kpm] = yaml::scalar<double>(kv.second, p + ".kpm_effects." + kpm);
            }
        }
        apps.push_back(std::move(a));
    }
    return apps;
}

SimulationConfig parse_simulation(const YAML::Node& n, const std::string& path) {
    yaml::check_keys(n, path,
                     {"duration_us", "seed", "slice", "kpm_sample_us", "kpm_noise",
                      "implicit_window_us", "implicit_threshold"});
    SimulationConfig c;
    c.duration = yaml::get_or<double>(n, path, "duration_us", c.duration);
    c.seed = yaml::get_or<std::uint64_t>(n, path, "seed", c.seed);
    c.kpm_sample_period = yaml::get_or<double>(n, path, "kpm_sample_us", c.kpm_sample_period);
    c.kpm_noise = yaml::get_or<double>(n, path, "kpm_noise", c.kpm_noise);
    c.implicit_window = yaml::get_or<double>(n, path, "implicit_window_us", c.implicit_window);
    c.implicit_threshold = yaml::get_or<double>(n, path, "implicit_threshold", c.implicit_threshold);
    if (!(c.duration > 0)) yaml::fail(n["duration_us"], path + ".duration_us", "must be positive");
    if (auto s = n["slice"]) {
        const auto sp = path + ".slice";
        yaml::check_keys(s, sp, {"urllc_prb_share", "scheduler"});
        c.slice.urllc_prb_share = yaml::get_or<double>(s, sp, "urllc_prb_share", c.slice.urllc_prb_share);
        if (!c.slice.valid())
            yaml::fail(s["urllc_prb_share"], sp + ".urllc_prb_share", "must lie in [0, 1]");
        if (auto sch = s["scheduler"])
            c.slice.scheduler = yaml::enum_value<Scheduler>(sch, sp + ".scheduler", parse_scheduler);
    }
    return c;
}

template <typename T>
std::vector<T> number_list(const YAML::Node& v, const std::string& path) {
    yaml::expect_seq(v, path);
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(yaml::scalar<T>(v[i], yaml::item(path, i)));
    return out;
}

SrsStudy parse_srs(const YAML::Node& n, const std::string& path) {
    yaml::check_keys(n, path,
                     {"subcarriers", "symbols", "beams_monitored", "bits_per_component",
                      "sounding_period_slots", "slot_us", "num_ues", "required_soundings",
                      "deadline_us", "path", "periods", "ue_counts"});
    SrsStudy s;
    auto& c = s.srs;
    c.subcarriers = yaml::get_or<long>(n, path, "subcarriers", c.subcarriers);
    c.symbols = yaml::get_or<long>(n, path, "symbols", c.symbols);
    c.beams_monitored = yaml::get_or<long>(n, path, "beams_monitored", c.beams_monitored);
    c.bits_per_component = yaml::get_or<long>(n, path, "bits_per_component", c.bits_per_component);
    c.sounding_period_slots = yaml::get_or<long>(n, path, "sounding_period_slots", c.sounding_period_slots);
    c.slot_duration = yaml::get_or<double>(n, path, "slot_us", c.slot_duration);
    c.num_ues = yaml::get_or<long>(n, path, "num_ues", c.num_ues);
    if (!c.valid()) yaml::fail(n, path, "every SRS parameter must be positive");
    s.required_soundings = yaml::get_or<long>(n, path, "required_soundings", s.required_soundings);
    if (s.required_soundings < 1)
        yaml::fail(n["required_soundings"], path + ".required_soundings", "must be >= 1");
    s.deadline = yaml::get_or<double>(n, path, "deadline_us", s.deadline);
    if (auto p = n["path"]) {
        const auto pp = path + ".path";
        yaml::check_keys(p, pp, {"src", "dst", "chain"});
        s.src = yaml::get<std::string>(p, pp, "src");
        s.dst = yaml::get<std::string>(p, pp, "dst");
        if (auto ch = p["chain"]) {
            yaml::expect_seq(ch, pp + ".chain");
            s.chain.clear();
            for (std::size_t i = 0; i < ch.size(); ++i)
                s.chain.push_back(yaml::enum_value<Interface>(ch[i], yaml::item(pp + ".chain", i),
                                                              parse_interface));
        }
    }
    if (auto v = n["periods"]) s.periods = number_list<long>(v, path + ".periods");
    if (auto v = n["ue_counts"]) s.ue_counts = number_list<long>(v, path + ".ue_counts");
    return s;
}

SweepSpec parse_sweep(const YAML::Node& n, const std::string& path) {
    yaml::check_keys(n, path, {"axis", "values", "caps", "prb_shares", "srs"});
    SweepSpec s;
    s.axis = yaml::get_or<std::string>(n, path, "axis", "");
    if (auto v = n["values"]) s.values = number_list<double>(v, path + ".values");
    if (auto v = n["caps"]) s.caps = number_list<long>(v, path + ".caps");
    if (auto v = n["prb_shares"]) s.prb_shares = number_list<double>(v, path + ".prb_shares");
    if (auto v = n["srs"]) s.srs = parse_srs(v, path + ".srs");
    return s;
}

} // namespace

Scenario parse_scenario(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ParseError("", e.msg, e.mark.is_null() ? 0 : e.mark.line + 1,
                         e.mark.is_null() ? 0 : e.mark.column + 1);
    }
    if (!root || root.IsNull()) throw ParseError("", "empty scenario document");

    yaml::check_keys(root, "scenario",
                     {"topology", "apps", "intent", "priorities", "simulation", "sweep"});
    Scenario s;
    try {
        s.topology = parse_topology(yaml::require(root, "scenario", "topology"), "topology");
        s.catalog = Catalog(parse_apps(yaml::require(root, "scenario", "apps"), "apps"));
        s.intent = parse_intent(yaml::require(root, "scenario", "intent"), "intent");
        if (auto p = root["priorities"]) {
            yaml::expect_map(p, "priorities");
            for (const auto& kv : p) {
                auto app = kv.first.as<std::string>();
                s.priorities[app] = yaml::scalar<int>(kv.second, "priorities." + app);
            }
        }
        if (auto sim = root["simulation"]) s.simulation = parse_simulation(sim, "simulation");
        if (auto sw = root["sweep"]) s.sweep = parse_sweep(sw, "sweep");
    } catch (const YAML::Exception& e) {
        throw ParseError("", e.msg, e.mark.is_null() ? 0 : e.mark.line + 1,
                         e.mark.is_null() ? 0 : e.mark.column + 1);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport r = validate_topology(s.topology);
    std::set<std::string> ids;
    for (const auto& app : s.catalog.apps()) {
        r.append(validate_app(app));
        if (!ids.insert(app.id).second) r.add("duplicate-app", app.id, "app id declared twice");
    }
    r.append(validate_intent(s.intent, s.topology));
    if (const auto& srs = s.sweep.srs; srs && !srs->src.empty()) {
        if (!s.topology.contains(srs->src)) r.add("unknown-node", srs->src, "SRS path source missing");
        if (!s.topology.contains(srs->dst)) r.add("unknown-node", srs->dst, "SRS path destination missing");
    }
    return r;
}

ScenarioRun run_scenario(const Scenario& s) {
    ScenarioRun out;
    out.placed = place(s.intent, s.topology, s.catalog, s.intent.dapp_cap);
    out.direct = detect_direct(out.placed);
    out.executed = out.placed;
    if (!out.direct.empty()) {
        auto res = resolve(out.direct, out.placed, s.priorities);
        out.vetoes = std::move(res.vetoes);
        out.executed = std::move(res.plan);
        out.executed.objective_value = e2_traffic(out.executed, s.catalog, s.topology).e2_total();
    }
    out.sim = simulate(s.topology, s.catalog, out.executed, s.simulation);
    auto& conflicts = out.sim.report.conflicts;
    conflicts.insert(conflicts.begin(), out.direct.begin(), out.direct.end());
    return out;
}

} // namespace dapps
