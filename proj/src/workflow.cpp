#include "dawsched/workflow.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <utility>

#include "dawsched/error.hpp"

namespace dawsched {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw error(error_kind::invalid_workflow, msg); }

void check_files(const task& t) {
    for (const auto* list : {&t.stage_in, &t.stage_out}) {
        for (const auto& f : *list) {
            if (!(f.size >= 0.0)) {
                invalid("task " + std::to_string(t.id) + " file '" + f.file_id + "' has negative size");
            }
        }
    }
    if (t.is_dummy && (!t.stage_in.empty() || !t.stage_out.empty())) {
        invalid("dummy task " + std::to_string(t.id) + " carries stage-in/stage-out data");
    }
}

// Kahn's algorithm over 1-based ids with a min-heap so the order is canonical.
std::vector<task_id> kahn_order(int n, const std::vector<edge>& edges) {
    std::vector<std::vector<task_id>> out(static_cast<std::size_t>(n + 1));
    std::vector<int> indeg(static_cast<std::size_t>(n + 1), 0);
    for (const auto& e : edges) {
        out[e.from].push_back(e.to);
        ++indeg[e.to];
    }
    std::priority_queue<task_id, std::vector<task_id>, std::greater<>> ready;
    for (task_id id = 1; id <= n; ++id) {
        if (indeg[id] == 0) {
            ready.push(id);
        }
    }
    std::vector<task_id> order;
    order.reserve(static_cast<std::size_t>(n));
    while (!ready.empty()) {
        task_id id = ready.top();
        ready.pop();
        order.push_back(id);
        for (task_id next : out[id]) {
            if (--indeg[next] == 0) {
                ready.push(next);
            }
        }
    }
    if (static_cast<int>(order.size()) != n) {
        throw error(error_kind::cyclic_workflow, "workflow graph contains a cycle");
    }
    return order;
}

} // namespace

workflow normalize_workflow(const raw_workflow& raw) {
    const int n = static_cast<int>(raw.tasks.size());
    if (n == 0) {
        invalid("workflow has no tasks");
    }

    std::vector<const task*> by_id(static_cast<std::size_t>(n + 1), nullptr);
    for (const auto& t : raw.tasks) {
        if (t.id < 1 || t.id > n) {
            invalid("task ids must be contiguous from 1; found id " + std::to_string(t.id));
        }
        if (by_id[t.id] != nullptr) {
            invalid("duplicate task id " + std::to_string(t.id));
        }
        by_id[t.id] = &t;
        check_files(t);
    }

    std::set<std::pair<task_id, task_id>> seen;
    std::vector<int> indeg(static_cast<std::size_t>(n + 1), 0), outdeg(static_cast<std::size_t>(n + 1), 0);
    for (const auto& e : raw.edges) {
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
            invalid("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " references an unknown task");
        }
        if (e.from == e.to) {
            throw error(error_kind::cyclic_workflow, "self loop on task " + std::to_string(e.from));
        }
        if (!(e.size >= 0.0)) {
            invalid("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " has negative size");
        }
        if (!seen.emplace(e.from, e.to).second) {
            invalid("duplicate edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
        }
        if ((by_id[e.from]->is_dummy || by_id[e.to]->is_dummy) && e.size != 0.0) {
            invalid("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                    " touches a dummy task but carries data");
        }
        ++outdeg[e.from];
        ++indeg[e.to];
    }
    kahn_order(n, raw.edges);

    std::vector<task_id> sources, sinks;
    for (task_id id = 1; id <= n; ++id) {
        if (indeg[id] == 0) sources.push_back(id);
        if (outdeg[id] == 0) sinks.push_back(id);
    }
    const bool has_start = n > 1 && sources.size() == 1 && sources.front() == 1 && by_id[1]->is_dummy;
    const bool has_end = n > 1 && sinks.size() == 1 && sinks.front() == n && by_id[n]->is_dummy;
    for (task_id id = 1; id <= n; ++id) {
        if (by_id[id]->is_dummy && !((id == 1 && has_start) || (id == n && has_end))) {
            invalid("dummy task " + std::to_string(id) + " is not the unique start (id 1) or end (id n)");
        }
    }

    const int offset = has_start ? 0 : 1;
    const int total = n + offset + (has_end ? 0 : 1);

    workflow w;
    w.source_task_count_ = n;
    w.id_offset_ = offset;
    w.tasks_.reserve(static_cast<std::size_t>(total));
    if (!has_start) {
        w.tasks_.push_back(task{1, {}, {}, true});
    }
    for (task_id id = 1; id <= n; ++id) {
        task t = *by_id[id];
        t.id = id + offset;
        w.tasks_.push_back(std::move(t));
    }
    if (!has_end) {
        w.tasks_.push_back(task{total, {}, {}, true});
    }

    if (!has_start) {
        for (task_id s : sources) w.edges_.push_back({1, s + offset, 0.0});
    }
    for (const auto& e : raw.edges) {
        w.edges_.push_back({e.from + offset, e.to + offset, e.size});
    }
    if (!has_end) {
        for (task_id s : sinks) w.edges_.push_back({s + offset, total, 0.0});
    }

    w.preds_ = task_vector<std::vector<neighbor>>(static_cast<std::size_t>(total));
    w.succs_ = task_vector<std::vector<neighbor>>(static_cast<std::size_t>(total));
    for (const auto& e : w.edges_) {
        w.succs_[e.from].push_back({e.to, e.size});
        w.preds_[e.to].push_back({e.from, e.size});
    }
    w.topo_ = kahn_order(total, w.edges_);
    for (const auto& t : w.tasks_) {
        if (!t.is_dummy) w.real_.push_back(t.id);
    }
    return w;
}

task_vector<int> compute_heights(const workflow& w) {
    task_vector<int> h(static_cast<std::size_t>(w.task_count()), 0);
    for (task_id t : w.topological_order()) {
        int best = -1;
        for (const auto& p : w.predecessors(t)) best = std::max(best, h[p.task]);
        h[t] = best + 1;
    }
    return h;
}

task_vector<int> compute_equivalent_heights(const workflow& w, const task_vector<int>& heights) {
    task_vector<int> eq(static_cast<std::size_t>(w.task_count()), 0);
    const auto& order = w.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const task_id t = *it;
        auto succ = w.successors(t);
        if (succ.empty()) {
            eq[t] = heights[t];
            continue;
        }
        int best = eq[succ.front().task];
        for (const auto& s : succ) best = std::min(best, eq[s.task]);
        eq[t] = best - 1;
    }
    return eq;
}

task_vector<int> sample_soft_heights(const workflow& w, const task_vector<int>& heights,
                                     const task_vector<int>& eq_heights, rng_type& rng) {
    task_vector<int> soft(static_cast<std::size_t>(w.task_count()), 0);
    for (task_id t : w.topological_order()) {
        if (t == w.start_id()) {
            soft[t] = heights[t];
            continue;
        }
        int lo = heights[t];
        for (const auto& p : w.predecessors(t)) lo = std::max(lo, soft[p.task] + 1);
        const auto span = static_cast<std::uint64_t>(eq_heights[t] - lo + 1);
        soft[t] = lo + static_cast<int>(draw_below(rng, span));
    }
    return soft;
}

} // namespace dawsched
