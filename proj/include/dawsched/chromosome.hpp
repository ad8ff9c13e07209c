#pragma once

#include <span>
#include <string>
#include <vector>

#include "dawsched/task_vector.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

// Per-processor ordered task lists; element q-1 belongs to processor q.
using schedule = std::vector<std::vector<task_id>>;

// Gene layout: 0, processor id, its task ids in execution order, repeated for
// every processor. Dummy tasks never appear. soft_height covers every task of
// the workflow, dummies included.
struct chromosome {
    std::vector<int> genes;
    task_vector<int> soft_height;

    friend bool operator==(const chromosome&, const chromosome&) = default;
};

// Throws invalid_schedule if a real task is missing, duplicated, or unknown.
std::vector<int> encode(const schedule& s, const workflow& w);

// Exact inverse of encode. Throws corrupt_chromosome on a malformed stream.
schedule decode(std::span<const int> genes, const workflow& w, int processors);

// Task -> processor map (0 for dummies) of a decoded schedule.
task_vector<processor_id> assignment_of(const schedule& s, const workflow& w);

// Soft-height order of each segment, ties by ascending task id.
schedule sort_by_soft_height(schedule s, const task_vector<int>& soft);

std::string genes_to_string(std::span<const int> genes);
std::vector<int> genes_from_string(const std::string& text);

// Lists every violated chromosome invariant; empty when the chromosome is valid.
std::vector<std::string> check_chromosome(const chromosome& c, const workflow& w, int processors,
                                          const task_vector<int>& heights, const task_vector<int>& eq_heights);

} // namespace dawsched
