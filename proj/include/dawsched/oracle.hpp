#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dawsched/chromosome.hpp"
#include "dawsched/evaluator.hpp"
#include "dawsched/placement.hpp"
#include "dawsched/platform.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

struct oracle_options {
    int max_tasks = 8;
    int max_processors = 3;
    // Skip an assignment whose zero-communication bound (heaviest processor
    // load or longest exec path) cannot beat the incumbent.
    bool prune = true;
    const placement* stage_in = nullptr;
};

struct oracle_result {
    schedule best_schedule;
    ordered_schedule best_order;
    double best_makespan = 0.0;
    std::uint64_t states_explored = 0;
};

// Every linear extension of the non-dummy tasks, in lexicographic order.
std::vector<std::vector<task_id>> linear_extensions(const workflow& w);

// Calls visit for every (processor assignment, linear extension) pair; per-
// processor orders are the extension's projection. Returns the number of
// candidates. Throws too_large beyond the configured limits.
std::uint64_t enumerate_schedules(const workflow& w, const platform& p, const oracle_options& options,
                                  const std::function<void(const ordered_schedule&)>& visit);

// Exact minimum makespan over the enumerated space. The first minimum in
// enumeration order wins ties.
oracle_result optimal_makespan(const workflow& w, const platform& p, const oracle_options& options = {});

} // namespace dawsched
