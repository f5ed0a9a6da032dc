#include "dapps/exhaustive.hpp"
#include "dapps/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dapps {

namespace {

std::size_t combination_count(const PlacementProblem& p) {
    std::size_t total = 1;
    for (const auto& opts : p.options) {
        if (opts.empty()) return 0;
        total *= opts.size();
    }
    return total;
}

// Mixed-radix decode, first task least significant.
void decode(const PlacementProblem& p, std::size_t index, std::vector<std::size_t>& choice) {
    for (std::size_t t = 0; t < p.options.size(); ++t) {
        const std::size_t radix = p.options[t].size();
        choice[t] = index % radix;
        index /= radix;
    }
}

void consider(const PlacementProblem& p, const std::vector<std::size_t>& choice,
              std::optional<ExhaustiveResult>& best) {
    if (!fits(p, choice)) return;
    PlanScore s = score(p, choice);
    if (!best || better(s, best->score)) best = ExhaustiveResult{choice, std::move(s), 0};
}

} // namespace

std::optional<ExhaustiveResult> exhaustive_search_serial(const PlacementProblem& p) {
    const std::size_t total = combination_count(p);
    std::optional<ExhaustiveResult> best;
    std::vector<std::size_t> choice(p.options.size());
    for (std::size_t i = 0; i < total; ++i) {
        decode(p, i, choice);
        consider(p, choice, best);
    }
    if (best) best->enumerated = total;
    return best;
}

std::optional<ExhaustiveResult> exhaustive_search_parallel(const PlacementProblem& p) {
    const std::size_t total = combination_count(p);
    std::optional<ExhaustiveResult> best;

#pragma omp parallel
    {
        std::optional<ExhaustiveResult> local;
        std::vector<std::size_t> choice(p.options.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
            decode(p, static_cast<std::size_t>(i), choice);
            consider(p, choice, local);
        }
        // `better` is a strict total order, so the merge order cannot change the winner.
#pragma omp critical(dapps_exhaustive_merge)
        {
            if (local && (!best || better(local->score, best->score))) best = std::move(local);
        }
    }
    if (best) best->enumerated = total;
    return best;
}

PlacementPlan place_exhaustive(const Intent& intent, const Topology& t, const Catalog& catalog,
                               std::optional<long> dapp_cap, bool parallel) {
    PlacementProblem p = prepare_placement(intent, t, catalog, dapp_cap);
    if (!p.infeasible_tasks.empty()) throw Infeasible(p.infeasible_tasks);
    if (p.task_ids.empty()) return {};
    auto best = parallel ? exhaustive_search_parallel(p) : exhaustive_search_serial(p);
    if (!best) throw Infeasible(p.task_ids);
    return assemble(p, best->choice);
}

} // namespace dapps
