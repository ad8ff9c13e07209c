#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dawsched/random.hpp"
#include "dawsched/task_vector.hpp"

namespace dawsched {

// A file moved between a storage site and a compute site. For stage-in files the
// destination is the processor running the task; stage-out files may name a
// target storage site, otherwise the best-connected one is used.
struct file_ref {
    std::string file_id;
    double size = 0.0;
    std::optional<int> dest;

    friend bool operator==(const file_ref&, const file_ref&) = default;
};

struct task {
    task_id id = 0;
    std::vector<file_ref> stage_in;
    std::vector<file_ref> stage_out;
    bool is_dummy = false;

    friend bool operator==(const task&, const task&) = default;
};

struct edge {
    task_id from = 0;
    task_id to = 0;
    double size = 0.0;

    friend bool operator==(const edge&, const edge&) = default;
};

// Unvalidated input graph, as read from a file or built by hand.
struct raw_workflow {
    std::vector<task> tasks;
    std::vector<edge> edges;

    friend bool operator==(const raw_workflow&, const raw_workflow&) = default;
};

struct neighbor {
    task_id task = 0;
    double size = 0.0;
};

// Normalized workflow: contiguous ids 1..n, acyclic, dummy start with id 1 and
// dummy end with id n. Only normalize_workflow() constructs one.
class workflow {
public:
    int task_count() const noexcept { return static_cast<int>(tasks_.size()); }
    task_id start_id() const noexcept { return 1; }
    task_id end_id() const noexcept { return task_count(); }

    const task& at(task_id id) const { return tasks_[static_cast<std::size_t>(id - 1)]; }
    const std::vector<task>& tasks() const noexcept { return tasks_; }
    const std::vector<edge>& edges() const noexcept { return edges_; }

    std::span<const neighbor> predecessors(task_id id) const { return preds_[id]; }
    std::span<const neighbor> successors(task_id id) const { return succs_[id]; }

    // Kahn order, smallest ready id first.
    const std::vector<task_id>& topological_order() const noexcept { return topo_; }

    // Non-dummy task ids in ascending order.
    const std::vector<task_id>& real_tasks() const noexcept { return real_; }

    // Number of tasks in the raw input and the id shift applied by normalization.
    int source_task_count() const noexcept { return source_task_count_; }
    int id_offset() const noexcept { return id_offset_; }

    raw_workflow to_raw() const { return {tasks_, edges_}; }

    friend bool operator==(const workflow& a, const workflow& b) {
        return a.tasks_ == b.tasks_ && a.edges_ == b.edges_;
    }

private:
    friend workflow normalize_workflow(const raw_workflow& raw);

    std::vector<task> tasks_;
    std::vector<edge> edges_;
    task_vector<std::vector<neighbor>> preds_;
    task_vector<std::vector<neighbor>> succs_;
    std::vector<task_id> topo_;
    std::vector<task_id> real_;
    int source_task_count_ = 0;
    int id_offset_ = 0;
};

// Adds a dummy start connected to every source and a dummy end fed by every
// sink. Existing dummy endpoints are kept. Throws cyclic_workflow or
// invalid_workflow.
workflow normalize_workflow(const raw_workflow& raw);

// Height along the longest path from the start task (start = 0).
task_vector<int> compute_heights(const workflow& w);

// Latest height a task may take: end task keeps its height, others take the
// minimum over successors minus one.
task_vector<int> compute_equivalent_heights(const workflow& w, const task_vector<int>& heights);

// Draws a soft height per task in [height, height_eq] as
// lo + rng() % (height_eq - lo + 1), visiting tasks in topological order.
// lo is the task height raised to one above the largest soft height drawn for
// a predecessor, so every edge strictly increases soft height. Tasks whose
// predecessors never bind are drawn exactly uniformly on [height, height_eq].
// The dummy start is pinned to height 0.
task_vector<int> sample_soft_heights(const workflow& w, const task_vector<int>& heights,
                                     const task_vector<int>& eq_heights, rng_type& rng);

} // namespace dawsched
