#pragma once

#include "dapps/apps.hpp"

#include <string>
#include <vector>

namespace dapps {

// One parameter of one concrete node that an app instance drives.
struct ControlBinding {
    std::string parameter;
    std::string node;

    friend auto operator<=>(const ControlBinding&, const ControlBinding&) = default;
};

// A placed app instance. The instance is identified by the task it serves.
struct Assignment {
    std::string task_id;
    std::string node_id;
    AppKind kind = AppKind::XApp;
    AppSpec app;
    std::vector<std::string> scope;        // RAN nodes the task operates on
    std::vector<ControlBinding> controls;  // resolved targets of app.controls
};

struct PlacementPlan {
    std::vector<Assignment> assignments;   // intent task order
    BitsPerSecond objective_value = 0;     // total E2 traffic

    const Assignment* find(const std::string& task_id) const;
    std::size_t dapp_count() const;
    std::size_t dapp_count_at(const std::string& node) const;
};

} // namespace dapps
