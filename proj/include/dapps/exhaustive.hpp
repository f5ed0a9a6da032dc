#pragma once

#include "dapps/orchestrator.hpp"

#include <optional>
#include <vector>

namespace dapps {

// Brute-force enumeration of every option combination of a placement problem.
// Used as the reference optimum for `place`; the parallel variant splits the
// combination index space across OpenMP threads and must agree with the
// serial one exactly.
struct ExhaustiveResult {
    std::vector<std::size_t> choice;
    PlanScore score;
    std::size_t enumerated = 0;
};

std::optional<ExhaustiveResult> exhaustive_search_serial(const PlacementProblem& p);
std::optional<ExhaustiveResult> exhaustive_search_parallel(const PlacementProblem& p);

// Convenience wrapper returning the assembled optimal plan; throws Infeasible.
PlacementPlan place_exhaustive(const Intent& intent, const Topology& t, const Catalog& catalog,
                               std::optional<long> dapp_cap, bool parallel = false);

} // namespace dapps
