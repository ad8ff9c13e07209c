#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "dawsched/chromosome.hpp"
#include "dawsched/placement.hpp"
#include "dawsched/platform.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

struct task_timing {
    double stage_in_ready = 0.0;
    double data_ready = 0.0;
    double start = 0.0;
    double finish = 0.0;
    double stage_out_finish = 0.0; // 0 when the task stages nothing out

    friend bool operator==(const task_timing&, const task_timing&) = default;
};

struct timeline {
    task_vector<task_timing> tasks;
    task_vector<processor_id> processor; // 0 for dummies
    double makespan = 0.0;

    friend bool operator==(const timeline&, const timeline&) = default;
};

// A global execution order plus the processor of every task.
struct ordered_schedule {
    std::vector<task_id> sequence;
    task_vector<processor_id> processor;

    friend bool operator==(const ordered_schedule&, const ordered_schedule&) = default;
};

// k-way merge of the chromosome's processor segments by soft height. Ties go
// to the lower processor id, then to the earlier position within a segment.
ordered_schedule retrieve_schedule(const chromosome& c, const workflow& w, int processors);

// Per-processor lists projected from a global order.
schedule project(const ordered_schedule& order, int processors);

struct evaluation_options {
    // Hosting of stage-in copies; files it does not cover use the storage
    // site with the best link to the destination.
    const placement* stage_in = nullptr;
    // Called for every inter-task transfer that crosses processors.
    std::function<void(processor_id from, processor_id to)> on_edge_transfer;
};

// Data-aware makespan of an ordered schedule. Transfers overlap computation:
//  - stage-in copies start at time 0 and share each storage->processor link
//    one after another in sequence order; a file already delivered to a
//    processor is not sent again;
//  - inter-task data leaves when the producer finishes and never contends;
//  - a task starts once its stage-in data, its inputs, and its processor are ready;
//  - stage-out copies leave at task finish and share each processor->storage link.
// Throws invalid_schedule if the order is not a linear extension of w, and
// no_route when data has to use a missing link.
timeline evaluate(const ordered_schedule& order, const workflow& w, const platform& p,
                  const evaluation_options& options = {});

// task_id,processor,stage_in_ready,data_ready,start,finish,stage_out_finish
void write_timeline_csv(std::ostream& out, const timeline& tl, const workflow& w);

} // namespace dawsched
