#include "dapps/conflicts.hpp"
#include "dapps/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dapps {

std::string_view to_string(ConflictKind k) {
    return k == ConflictKind::Direct ? "Direct" : "Implicit";
}

std::vector<ConflictRecord> detect_direct(const PlacementPlan& plan) {
    std::map<std::string, std::set<std::string>> owners;
    for (const auto& a : plan.assignments)
        for (const auto& b : a.controls) owners[b.parameter + "@" + b.node].insert(a.task_id);

    std::vector<ConflictRecord> out;
    for (auto& [subject, apps] : owners) {
        if (apps.size() < 2) continue;
        out.push_back({ConflictKind::Direct, {apps.begin(), apps.end()}, subject, 0});
    }
    return out;
}

std::vector<ConflictRecord> detect_implicit(const SimulationLog& log, Micros window,
                                            double threshold) {
    if (log.empty()) throw EmptyLog();
    if (!(window > 0)) throw Error("implicit-conflict window must be positive");

    std::map<std::string, std::vector<const KpmSample*>> series;
    for (const auto& s : log.samples) series[s.kpm].push_back(&s);

    std::vector<ConflictRecord> out;
    for (const auto& [kpm, samples] : series) {
        std::map<std::string, std::pair<double, int>> acc; // app -> (sum of deltas, count)
        for (const auto& act : log.actions) {
            // Last sample at or before the action, first one after it.
            auto after = std::upper_bound(samples.begin(), samples.end(), act.time,
                                          [](Micros t, const KpmSample* s) { return t < s->time; });
            if (after == samples.begin() || after == samples.end()) continue;
            const KpmSample* before = *(after - 1);
            if ((*after)->time > act.time + window) continue;
            if (before->value == 0) continue;
            auto& [sum, n] = acc[act.app];
            sum += ((*after)->value - before->value) / std::fabs(before->value);
            ++n;
        }

        std::vector<std::string> apps;
        double weakest = 1.0;
        for (const auto& [app, sn] : acc) {
            double evidence = std::min(1.0, std::fabs(sn.first / sn.second));
            if (evidence >= threshold && evidence > 0) {
                apps.push_back(app);
                weakest = std::min(weakest, evidence);
            }
        }
        if (apps.size() >= 2) out.push_back({ConflictKind::Implicit, apps, kpm, weakest});
    }
    return out;
}

Resolution resolve(const std::vector<ConflictRecord>& conflicts, const PlacementPlan& plan,
                   const std::map<std::string, int>& priority) {
    Resolution res{plan, {}};

    auto rank_of = [&](const std::string& instance) -> int {
        if (auto it = priority.find(instance); it != priority.end()) return it->second;
        if (const Assignment* a = plan.find(instance))
            if (auto it = priority.find(a->app.id); it != priority.end()) return it->second;
        throw MissingPriority("no priority for app '" + instance + "'");
    };

    for (const auto& c : conflicts) {
        if (c.kind != ConflictKind::Direct) continue;
        std::vector<std::pair<int, std::string>> ranked;
        for (const auto& app : c.apps) ranked.emplace_back(rank_of(app), app);
        std::sort(ranked.begin(), ranked.end(), std::greater<>());
        if (ranked.size() >= 2 && ranked[0].first == ranked[1].first)
            throw MissingPriority("apps '" + ranked[0].second + "' and '" + ranked[1].second +
                                  "' share priority " + std::to_string(ranked[0].first) + " on " +
                                  c.subject);

        const auto at = c.subject.rfind('@');
        const ControlBinding lost{c.subject.substr(0, at), c.subject.substr(at + 1)};
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            for (auto& a : res.plan.assignments) {
                if (a.task_id != ranked[i].second) continue;
                std::erase(a.controls, lost);
            }
            res.vetoes.push_back({ranked[i].second, c.subject, false});
        }
    }

    // Instances stripped of every binding they had are unplaced.
    std::set<std::string> unplaced;
    for (const auto& a : res.plan.assignments) {
        const Assignment* orig = plan.find(a.task_id);
        if (a.controls.empty() && orig && !orig->controls.empty()) unplaced.insert(a.task_id);
    }
    std::erase_if(res.plan.assignments,
                  [&](const Assignment& a) { return unplaced.count(a.task_id) > 0; });
    for (auto& v : res.vetoes) v.unplaced = unplaced.count(v.app) > 0;
    return res;
}

} // namespace dapps
