#include "fixtures.hpp"

#include <algorithm>

namespace dawsched::testing {

raw_workflow sample_raw_workflow() {
    raw_workflow w;
    for (task_id id = 1; id <= 10; ++id) w.tasks.push_back(task{id, {}, {}, id == 1 || id == 10});
    w.tasks[1].stage_in.push_back({"calib", 20.0, std::nullopt});
    w.tasks[2].stage_in.push_back({"raw_a", 10.0, std::nullopt});
    w.tasks[3].stage_in.push_back({"raw_b", 15.0, std::nullopt});
    w.tasks[4].stage_out.push_back({"summary", 8.0, std::nullopt});
    w.tasks[6].stage_in.push_back({"calib", 20.0, std::nullopt});
    w.tasks[8].stage_out.push_back({"mosaic", 12.0, std::nullopt});
    w.edges = {{1, 2, 0}, {1, 3, 0}, {1, 4, 0}, {2, 5, 6},  {3, 6, 12}, {4, 8, 9},
               {8, 5, 4}, {8, 7, 7}, {6, 9, 10}, {7, 9, 5}, {5, 10, 0}, {9, 10, 0}};
    return w;
}

workflow sample_workflow() { return normalize_workflow(sample_raw_workflow()); }

task_vector<int> sample_soft_heights() {
    task_vector<int> soft(10);
    const int values[] = {0, 2, 1, 1, 3, 3, 3, 2, 4, 5};
    for (task_id t = 1; t <= 10; ++t) soft[t] = values[t - 1];
    return soft;
}

schedule sample_schedule() { return {{2, 5}, {3, 6, 9}, {4, 8, 7}}; }

platform uniform_platform(const workflow& w, int processors, int storages, double exec, double bw) {
    platform p;
    p.processors = processors;
    p.storages = storages;
    const auto P = static_cast<std::size_t>(processors);
    const auto S = static_cast<std::size_t>(storages);
    p.exec_time.assign(static_cast<std::size_t>(w.task_count()), std::vector<double>(P, exec));
    for (const auto& t : w.tasks()) {
        if (t.is_dummy) std::ranges::fill(p.exec_time[static_cast<std::size_t>(t.id - 1)], 0.0);
    }
    p.bw_pp.assign(P, std::vector<double>(P, bw));
    p.bw_sp.assign(S, std::vector<double>(P, bw));
    p.bw_ps.assign(P, std::vector<double>(S, bw));
    return p;
}

raw_workflow random_raw_dag(rng_type& rng, int n, double edge_probability, double max_size) {
    raw_workflow w;
    for (task_id id = 1; id <= n; ++id) {
        task t{id, {}, {}, false};
        if (draw_unit(rng) < 0.4) t.stage_in.push_back({"in" + std::to_string(id), draw_real(rng, 0, max_size), {}});
        if (draw_unit(rng) < 0.15) {
            // shared input, exercises replica reuse on one processor
            t.stage_in.push_back({"shared", 5.0, {}});
        }
        if (draw_unit(rng) < 0.3) t.stage_out.push_back({"out" + std::to_string(id), draw_real(rng, 0, max_size), {}});
        w.tasks.push_back(std::move(t));
    }
    for (task_id a = 1; a <= n; ++a) {
        for (task_id b = a + 1; b <= n; ++b) {
            if (draw_unit(rng) < edge_probability) w.edges.push_back({a, b, draw_real(rng, 0, max_size)});
        }
    }
    return w;
}

platform random_platform(rng_type& rng, const workflow& w, int processors, int storages) {
    platform p = uniform_platform(w, processors, storages, 1.0, 1.0);
    for (const auto& t : w.tasks()) {
        if (t.is_dummy) continue;
        for (auto& v : p.exec_time[static_cast<std::size_t>(t.id - 1)]) v = draw_real(rng, 1.0, 20.0);
    }
    for (auto* m : {&p.bw_pp, &p.bw_sp, &p.bw_ps}) {
        for (auto& row : *m) {
            for (auto& v : row) v = draw_real(rng, 0.5, 10.0);
        }
    }
    return p;
}

ordered_schedule random_order(rng_type& rng, const workflow& w, int processors) {
    ordered_schedule o;
    o.processor = task_vector<processor_id>(static_cast<std::size_t>(w.task_count()), 0);
    std::vector<int> indeg(static_cast<std::size_t>(w.task_count() + 1), 0);
    for (const auto& e : w.edges()) {
        if (!w.at(e.from).is_dummy && !w.at(e.to).is_dummy) ++indeg[e.to];
    }
    std::vector<task_id> ready;
    for (task_id t : w.real_tasks()) {
        if (indeg[t] == 0) ready.push_back(t);
    }
    while (!ready.empty()) {
        const auto k = draw_below(rng, ready.size());
        const task_id t = ready[k];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(k));
        o.sequence.push_back(t);
        o.processor[t] = 1 + static_cast<processor_id>(draw_below(rng, static_cast<std::uint64_t>(processors)));
        for (const auto& s : w.successors(t)) {
            if (!w.at(s.task).is_dummy && --indeg[s.task] == 0) ready.push_back(s.task);
        }
    }
    return o;
}

} // namespace dawsched::testing
