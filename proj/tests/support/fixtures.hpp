#pragma once

#include <string>
#include <vector>

#include "dawsched/chromosome.hpp"
#include "dawsched/evaluator.hpp"
#include "dawsched/platform.hpp"
#include "dawsched/random.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched::testing {

// Ten-task sample workflow (tasks 1 and 10 are the dummy endpoints) whose
// height tables are Height = 0,1,1,1,3,2,3,2,4,5 and Height_eq = 0,3,2,1,4,3,3,2,4,5.
raw_workflow sample_raw_workflow();
workflow sample_workflow();

// Soft heights 0,2,1,1,3,3,3,2,4,5: one admissible draw for the sample workflow.
task_vector<int> sample_soft_heights();

// {P1: [2, 5], P2: [3, 6, 9], P3: [4, 8, 7]}
schedule sample_schedule();

inline const std::string chrom1_genes = "0 1 2 5 0 2 3 6 9 0 3 4 8 7";
inline const std::string chrom2_genes = "0 1 2 9 0 2 3 6 7 0 3 4 8 5";

// n processors, s storages; every exec time, bandwidth and link is `value`.
platform uniform_platform(const workflow& w, int processors, int storages, double exec, double bw);

// Erdos-Renyi style DAG over ids 1..n (edges only from lower to higher id),
// with random stage-in/stage-out files and edge sizes.
raw_workflow random_raw_dag(rng_type& rng, int n, double edge_probability, double max_size = 30.0);

// Fully random heterogeneous platform.
platform random_platform(rng_type& rng, const workflow& w, int processors, int storages);

// A uniformly random ready task at each step, on a uniformly random processor.
ordered_schedule random_order(rng_type& rng, const workflow& w, int processors);

} // namespace dawsched::testing
