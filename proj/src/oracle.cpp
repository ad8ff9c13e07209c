#include "dawsched/oracle.hpp"

#include <algorithm>
#include <limits>

#include "dawsched/error.hpp"

namespace dawsched {

namespace {

void check_limits(const workflow& w, const platform& p, const oracle_options& options) {
    const auto n = static_cast<int>(w.real_tasks().size());
    if (n > options.max_tasks) {
        throw error(error_kind::too_large, std::to_string(n) + " tasks exceed the oracle limit of " +
                                               std::to_string(options.max_tasks));
    }
    if (p.processors > options.max_processors) {
        throw error(error_kind::too_large, std::to_string(p.processors) + " processors exceed the oracle limit of " +
                                               std::to_string(options.max_processors));
    }
}

void extend(const workflow& w, std::vector<int>& indeg, std::vector<task_id>& prefix,
            std::vector<std::vector<task_id>>& out) {
    if (prefix.size() == w.real_tasks().size()) {
        out.push_back(prefix);
        return;
    }
    for (task_id t : w.real_tasks()) {
        if (indeg[t] != 0) continue;
        indeg[t] = -1;
        for (const auto& s : w.successors(t)) --indeg[s.task];
        prefix.push_back(t);
        extend(w, indeg, prefix, out);
        prefix.pop_back();
        for (const auto& s : w.successors(t)) ++indeg[s.task];
        indeg[t] = 0;
    }
}

// Odometer over task -> processor maps of the real tasks.
bool next_assignment(const std::vector<task_id>& tasks, task_vector<processor_id>& proc, int processors) {
    for (task_id t : tasks) {
        if (proc[t] < processors) {
            ++proc[t];
            return true;
        }
        proc[t] = 1;
    }
    return false;
}

double compute_bound(const workflow& w, const platform& p, const task_vector<processor_id>& proc) {
    std::vector<double> load(static_cast<std::size_t>(p.processors), 0.0);
    task_vector<double> path(static_cast<std::size_t>(w.task_count()), 0.0);
    double bound = 0.0;
    for (task_id t : w.topological_order()) {
        double ready = 0.0;
        for (const auto& pr : w.predecessors(t)) ready = std::max(ready, path[pr.task]);
        const double exec = w.at(t).is_dummy ? 0.0 : p.exec(t, proc[t]);
        path[t] = ready + exec;
        bound = std::max(bound, path[t]);
        if (!w.at(t).is_dummy) load[proc[t] - 1] += exec;
    }
    for (double l : load) bound = std::max(bound, l);
    return bound;
}

} // namespace

std::vector<std::vector<task_id>> linear_extensions(const workflow& w) {
    std::vector<int> indeg(static_cast<std::size_t>(w.task_count() + 1), 0);
    for (const auto& e : w.edges()) {
        if (!w.at(e.from).is_dummy && !w.at(e.to).is_dummy) ++indeg[e.to];
    }
    std::vector<std::vector<task_id>> out;
    std::vector<task_id> prefix;
    extend(w, indeg, prefix, out);
    return out;
}

std::uint64_t enumerate_schedules(const workflow& w, const platform& p, const oracle_options& options,
                                  const std::function<void(const ordered_schedule&)>& visit) {
    check_limits(w, p, options);
    const auto extensions = linear_extensions(w);
    ordered_schedule cand;
    cand.processor = task_vector<processor_id>(static_cast<std::size_t>(w.task_count()), 0);
    for (task_id t : w.real_tasks()) cand.processor[t] = 1;
    std::uint64_t count = 0;
    do {
        for (const auto& ext : extensions) {
            cand.sequence = ext;
            visit(cand);
            ++count;
        }
    } while (next_assignment(w.real_tasks(), cand.processor, p.processors));
    return count;
}

oracle_result optimal_makespan(const workflow& w, const platform& p, const oracle_options& options) {
    check_limits(w, p, options);
    const auto extensions = linear_extensions(w);
    evaluation_options eval;
    eval.stage_in = options.stage_in;

    oracle_result result;
    result.best_makespan = std::numeric_limits<double>::infinity();
    ordered_schedule cand;
    cand.processor = task_vector<processor_id>(static_cast<std::size_t>(w.task_count()), 0);
    for (task_id t : w.real_tasks()) cand.processor[t] = 1;
    do {
        if (options.prune && compute_bound(w, p, cand.processor) >= result.best_makespan) continue;
        for (const auto& ext : extensions) {
            cand.sequence = ext;
            const double ms = evaluate(cand, w, p, eval).makespan;
            ++result.states_explored;
            if (ms < result.best_makespan) {
                result.best_makespan = ms;
                result.best_order = cand;
            }
        }
    } while (next_assignment(w.real_tasks(), cand.processor, p.processors));
    result.best_schedule = project(result.best_order, p.processors);
    return result;
}

} // namespace dawsched
