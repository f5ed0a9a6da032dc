#include "dapps/plan.hpp"

#include <algorithm>

namespace dapps {

const Assignment* PlacementPlan::find(const std::string& task_id) const {
    auto it = std::find_if(assignments.begin(), assignments.end(),
                           [&](const Assignment& a) { return a.task_id == task_id; });
    return it == assignments.end() ? nullptr : &*it;
}

std::size_t PlacementPlan::dapp_count() const {
    return static_cast<std::size_t>(std::count_if(
        assignments.begin(), assignments.end(),
        [](const Assignment& a) { return a.kind == AppKind::DApp; }));
}

std::size_t PlacementPlan::dapp_count_at(const std::string& node) const {
    return static_cast<std::size_t>(
        std::count_if(assignments.begin(), assignments.end(), [&](const Assignment& a) {
            return a.kind == AppKind::DApp && a.node_id == node;
        }));
}

} // namespace dapps
