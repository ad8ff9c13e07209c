#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dawsched/chromosome.hpp"
#include "dawsched/evaluator.hpp"
#include "dawsched/placement.hpp"
#include "dawsched/platform.hpp"
#include "dawsched/random.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

struct ga_params {
    int population_size = 50; // even, >= 2
    int generations = 100;
    double mutation_rate = 0.2; // per non-elite chromosome per generation
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

// Workflow, platform and the fixed height tables shared by every chromosome.
// Holds references: the workflow, platform and placement must outlive it.
class scheduling_problem {
public:
    scheduling_problem(const workflow& w, const platform& p, const placement* stage_in = nullptr);

    const workflow& graph() const noexcept { return *workflow_; }
    const platform& machines() const noexcept { return *platform_; }
    int processors() const noexcept { return platform_->processors; }
    const task_vector<int>& heights() const noexcept { return heights_; }
    const task_vector<int>& eq_heights() const noexcept { return eq_heights_; }

    timeline evaluate(const chromosome& c) const;
    double makespan(const chromosome& c) const { return evaluate(c).makespan; }

private:
    const workflow* workflow_;
    const platform* platform_;
    const placement* stage_in_;
    task_vector<int> heights_;
    task_vector<int> eq_heights_;
};

struct individual {
    chromosome genome;
    double makespan = 0.0;
};

using population = std::vector<individual>;

// Builds a chromosome from a task -> processor map, placing tasks into their
// segments in soft-height order (ties by task id).
chromosome assemble(const task_vector<processor_id>& assignment, task_vector<int> soft, const workflow& w,
                    int processors);

// Fresh soft heights, then every task to a uniformly random processor.
chromosome random_chromosome(const scheduling_problem& problem, rng_type& rng);

population generate_population(const scheduling_problem& problem, int size, rng_type& rng);

// Tasks placed on the same processor by both parents keep it; the rest get a
// uniformly random processor. Soft heights are inherited per task from a
// random parent. Throws mismatch if the parents belong to different problems.
chromosome generate_offspring(const chromosome& a, const chromosome& b, const scheduling_problem& problem,
                              rng_type& rng);

// Disjoint random pairs; each pair contributes its offspring followed by both
// parents, so the pool is 1.5x the population.
population breed(const population& pop, const scheduling_problem& problem, rng_type& rng);

// Ranking selection: the `size` lowest makespans, ties in pool order.
population select_best(population pool, std::size_t size);

// breed() followed by select_best() back to the original size.
population crossover_generation(population pop, const scheduling_problem& problem, rng_type& rng);

// Merges two random processors' segments by soft height and deals the merged
// tasks back to the pair at random. Identity on a single processor.
chromosome mutate(const chromosome& c, const scheduling_problem& problem, rng_type& rng);

// max(turnaround) - turnaround_i.
std::vector<double> fitness(std::span<const double> turnarounds);

struct ga_result {
    schedule best_schedule;
    chromosome best;
    timeline best_timeline;
    double best_makespan = 0.0;
    std::vector<double> history; // best-ever makespan after generation 0..G
};

ga_result run_ga(const scheduling_problem& problem, const ga_params& params);

} // namespace dawsched
