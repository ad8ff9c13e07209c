#include "dawsched/ga.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dawsched/error.hpp"

namespace dawsched {

void ga_params::validate() const {
    if (population_size < 2 || population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and at least 2");
    }
    if (generations < 0) {
        throw std::invalid_argument("generation count must be non-negative");
    }
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw std::invalid_argument("mutation rate must lie in [0, 1]");
    }
}

scheduling_problem::scheduling_problem(const workflow& w, const platform& p, const placement* stage_in)
    : workflow_(&w), platform_(&p), stage_in_(stage_in), heights_(compute_heights(w)),
      eq_heights_(compute_equivalent_heights(w, heights_)) {}

timeline scheduling_problem::evaluate(const chromosome& c) const {
    evaluation_options opts;
    opts.stage_in = stage_in_;
    return dawsched::evaluate(retrieve_schedule(c, *workflow_, processors()), *workflow_, *platform_, opts);
}

namespace {

std::vector<task_id> by_soft_height(const workflow& w, const task_vector<int>& soft) {
    std::vector<task_id> order = w.real_tasks();
    std::ranges::stable_sort(order, [&](task_id a, task_id b) { return soft[a] < soft[b]; });
    return order;
}

processor_id random_processor(rng_type& rng, int processors) {
    return 1 + static_cast<processor_id>(draw_below(rng, static_cast<std::uint64_t>(processors)));
}

} // namespace

chromosome assemble(const task_vector<processor_id>& assignment, task_vector<int> soft, const workflow& w,
                    int processors) {
    schedule s(static_cast<std::size_t>(processors));
    for (task_id t : by_soft_height(w, soft)) s[static_cast<std::size_t>(assignment[t] - 1)].push_back(t);
    return chromosome{encode(s, w), std::move(soft)};
}

chromosome random_chromosome(const scheduling_problem& problem, rng_type& rng) {
    const workflow& w = problem.graph();
    auto soft = sample_soft_heights(w, problem.heights(), problem.eq_heights(), rng);
    task_vector<processor_id> assignment(static_cast<std::size_t>(w.task_count()), 0);
    for (task_id t : by_soft_height(w, soft)) assignment[t] = random_processor(rng, problem.processors());
    return assemble(assignment, std::move(soft), w, problem.processors());
}

population generate_population(const scheduling_problem& problem, int size, rng_type& rng) {
    population pop;
    pop.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        chromosome c = random_chromosome(problem, rng);
        const double ms = problem.makespan(c);
        pop.push_back({std::move(c), ms});
    }
    return pop;
}

chromosome generate_offspring(const chromosome& a, const chromosome& b, const scheduling_problem& problem,
                              rng_type& rng) {
    const workflow& w = problem.graph();
    const int procs = problem.processors();
    const auto n = static_cast<std::size_t>(w.task_count());
    if (a.soft_height.size() != n || b.soft_height.size() != n) {
        throw error(error_kind::mismatch, "parent soft height arrays do not match the workflow");
    }
    task_vector<processor_id> pa, pb;
    try {
        pa = assignment_of(decode(a.genes, w, procs), w);
        pb = assignment_of(decode(b.genes, w, procs), w);
    } catch (const error& e) {
        throw error(error_kind::mismatch, std::string("parent does not fit this problem: ") + e.what());
    }

    // Inherit soft heights in topological order. A value that would not sit
    // above every predecessor's falls back to the other parent, then to the
    // smallest admissible value; all stay inside [height, height_eq].
    const auto& heights = problem.heights();
    task_vector<int> soft(n, 0);
    for (task_id t : w.topological_order()) {
        if (t == w.start_id()) {
            soft[t] = heights[t];
            continue;
        }
        int lo = heights[t];
        for (const auto& p : w.predecessors(t)) lo = std::max(lo, soft[p.task] + 1);
        const bool from_b = draw_below(rng, 2) == 1;
        int v = from_b ? b.soft_height[t] : a.soft_height[t];
        if (v < lo) {
            const int other = from_b ? a.soft_height[t] : b.soft_height[t];
            v = other >= lo ? other : lo;
        }
        soft[t] = v;
    }

    task_vector<processor_id> assignment(n, 0);
    for (task_id t : by_soft_height(w, soft)) {
        assignment[t] = pa[t] == pb[t] ? pa[t] : random_processor(rng, procs);
    }
    return assemble(assignment, std::move(soft), w, procs);
}

population breed(const population& pop, const scheduling_problem& problem, rng_type& rng) {
    const std::size_t size = pop.size();
    std::vector<std::size_t> order(size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = size; i > 1; --i) {
        std::swap(order[i - 1], order[draw_below(rng, i)]);
    }

    population pool;
    pool.reserve(size + size / 2);
    for (std::size_t k = 0; k + 1 < size; k += 2) {
        const individual& a = pop[order[k]];
        const individual& b = pop[order[k + 1]];
        chromosome child = generate_offspring(a.genome, b.genome, problem, rng);
        const double ms = problem.makespan(child);
        pool.push_back({std::move(child), ms});
        pool.push_back(a);
        pool.push_back(b);
    }
    if (size % 2 == 1) pool.push_back(pop[order.back()]);
    return pool;
}

population select_best(population pool, std::size_t size) {
    std::ranges::stable_sort(pool, [](const individual& x, const individual& y) { return x.makespan < y.makespan; });
    if (pool.size() > size) pool.resize(size);
    return pool;
}

population crossover_generation(population pop, const scheduling_problem& problem, rng_type& rng) {
    const std::size_t size = pop.size();
    return select_best(breed(pop, problem, rng), size);
}

chromosome mutate(const chromosome& c, const scheduling_problem& problem, rng_type& rng) {
    const int procs = problem.processors();
    if (procs < 2) {
        return c;
    }
    const workflow& w = problem.graph();
    schedule s = decode(c.genes, w, procs);

    const auto i = static_cast<std::size_t>(draw_below(rng, static_cast<std::uint64_t>(procs)));
    auto j = static_cast<std::size_t>(draw_below(rng, static_cast<std::uint64_t>(procs - 1)));
    if (j >= i) ++j;

    std::vector<task_id> merged;
    merged.reserve(s[i].size() + s[j].size());
    std::ranges::merge(s[i], s[j], std::back_inserter(merged),
                       [&](task_id x, task_id y) { return c.soft_height[x] < c.soft_height[y]; });
    s[i].clear();
    s[j].clear();
    for (task_id t : merged) {
        (draw_below(rng, 2) == 0 ? s[i] : s[j]).push_back(t);
    }
    return chromosome{encode(s, w), c.soft_height};
}

std::vector<double> fitness(std::span<const double> turnarounds) {
    if (turnarounds.empty()) {
        return {};
    }
    const double worst = *std::ranges::max_element(turnarounds);
    std::vector<double> out;
    out.reserve(turnarounds.size());
    for (double t : turnarounds) out.push_back(worst - t);
    return out;
}

ga_result run_ga(const scheduling_problem& problem, const ga_params& params) {
    params.validate();
    rng_type rng(params.seed);

    population pop = generate_population(problem, params.population_size, rng);
    const auto better = [](const individual& x, const individual& y) { return x.makespan < y.makespan; };
    individual best = *std::ranges::min_element(pop, better);

    ga_result result;
    result.history.push_back(best.makespan);
    for (int g = 0; g < params.generations; ++g) {
        pop = crossover_generation(std::move(pop), problem, rng);
        // pop[0] is the elite after selection.
        for (std::size_t k = 1; k < pop.size(); ++k) {
            if (draw_unit(rng) < params.mutation_rate) {
                pop[k].genome = mutate(pop[k].genome, problem, rng);
                pop[k].makespan = problem.makespan(pop[k].genome);
            }
        }
        const individual& gen_best = *std::ranges::min_element(pop, better);
        if (gen_best.makespan < best.makespan) best = gen_best;
        result.history.push_back(best.makespan);
    }

    result.best_schedule = decode(best.genome.genes, problem.graph(), problem.processors());
    result.best_timeline = problem.evaluate(best.genome);
    result.best_makespan = best.makespan;
    result.best = std::move(best.genome);
    return result;
}

} // namespace dawsched
