#include "dawsched/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "dawsched/error.hpp"

namespace dawsched {

ordered_schedule retrieve_schedule(const chromosome& c, const workflow& w, int processors) {
    const schedule s = decode(c.genes, w, processors);
    ordered_schedule out;
    out.processor = assignment_of(s, w);
    out.sequence.reserve(w.real_tasks().size());
    std::vector<std::size_t> head(s.size(), 0);
    while (true) {
        int pick = -1;
        for (std::size_t q = 0; q < s.size(); ++q) {
            if (head[q] == s[q].size()) continue;
            if (pick < 0 || c.soft_height[s[q][head[q]]] < c.soft_height[s[pick][head[pick]]]) {
                pick = static_cast<int>(q);
            }
        }
        if (pick < 0) break;
        out.sequence.push_back(s[pick][head[pick]++]);
    }
    return out;
}

schedule project(const ordered_schedule& order, int processors) {
    schedule s(static_cast<std::size_t>(processors));
    for (task_id t : order.sequence) s[static_cast<std::size_t>(order.processor[t] - 1)].push_back(t);
    return s;
}

namespace {

void check_order(const ordered_schedule& order, const workflow& w, const platform& p) {
    const int n = w.task_count();
    if (static_cast<int>(order.processor.size()) != n) {
        throw error(error_kind::invalid_schedule, "processor map does not cover every task");
    }
    std::vector<int> pos(static_cast<std::size_t>(n + 1), -1);
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
        const task_id t = order.sequence[i];
        if (t < 1 || t > n || w.at(t).is_dummy) {
            throw error(error_kind::invalid_schedule, "sequence holds non-schedulable task " + std::to_string(t));
        }
        if (pos[t] >= 0) {
            throw error(error_kind::invalid_schedule, "task " + std::to_string(t) + " sequenced twice");
        }
        const processor_id q = order.processor[t];
        if (q < 1 || q > p.processors) {
            throw error(error_kind::invalid_schedule, "task " + std::to_string(t) + " on unknown processor");
        }
        pos[t] = static_cast<int>(i);
    }
    if (order.sequence.size() != w.real_tasks().size()) {
        throw error(error_kind::invalid_schedule, "sequence does not cover every task");
    }
    for (const auto& e : w.edges()) {
        if (w.at(e.from).is_dummy || w.at(e.to).is_dummy) continue;
        if (pos[e.from] > pos[e.to]) {
            throw error(error_kind::invalid_schedule, "edge " + std::to_string(e.from) + "->" +
                                                          std::to_string(e.to) + " violated by sequence");
        }
    }
}

} // namespace

timeline evaluate(const ordered_schedule& order, const workflow& w, const platform& p,
                  const evaluation_options& options) {
    check_order(order, w, p);
    const int n = w.task_count();
    const auto procs = static_cast<std::size_t>(p.processors);
    const auto stores = static_cast<std::size_t>(p.storages);

    timeline tl;
    tl.tasks = task_vector<task_timing>(static_cast<std::size_t>(n));
    tl.processor = task_vector<processor_id>(static_cast<std::size_t>(n), 0);

    std::vector<double> sp_free(stores * procs, 0.0);
    std::vector<double> ps_free(procs * stores, 0.0);
    std::vector<double> proc_free(procs, 0.0);
    std::map<std::pair<std::string, processor_id>, double> delivered;

    auto arrival_from = [&](const neighbor& pred, processor_id q) {
        const double done = tl.tasks[pred.task].finish;
        if (w.at(pred.task).is_dummy) return done;
        const processor_id from = order.processor[pred.task];
        if (from == q) return done;
        if (options.on_edge_transfer) options.on_edge_transfer(from, q);
        return done + transfer_time(pred.size, p.link_pp(from, q));
    };

    for (task_id t : order.sequence) {
        const processor_id q = order.processor[t];
        const task& tk = w.at(t);
        task_timing& tm = tl.tasks[t];
        tl.processor[t] = q;

        for (const auto& f : tk.stage_in) {
            auto [it, fresh] = delivered.try_emplace({f.file_id, q}, 0.0);
            if (fresh && f.size > 0.0) {
                storage_id s = 0;
                if (options.stage_in) s = options.stage_in->site(f.file_id, q).value_or(0);
                if (s == 0) s = best_stage_in_site(p, q);
                if (s == 0) {
                    throw error(error_kind::no_route, "no storage site for stage-in file '" + f.file_id + "'");
                }
                double& link = sp_free[static_cast<std::size_t>(s - 1) * procs + (q - 1)];
                link += transfer_time(f.size, p.link_sp(s, q));
                it->second = link;
            }
            tm.stage_in_ready = std::max(tm.stage_in_ready, it->second);
        }
        for (const auto& pred : w.predecessors(t)) {
            tm.data_ready = std::max(tm.data_ready, arrival_from(pred, q));
        }
        tm.start = std::max({tm.stage_in_ready, tm.data_ready, proc_free[q - 1]});
        tm.finish = tm.start + p.exec(t, q);
        proc_free[q - 1] = tm.finish;

        for (const auto& g : tk.stage_out) {
            if (g.size == 0.0) {
                tm.stage_out_finish = std::max(tm.stage_out_finish, tm.finish);
                continue;
            }
            const storage_id d = g.dest ? *g.dest : best_stage_out_site(p, q);
            if (d == 0) {
                throw error(error_kind::no_route, "no storage site for stage-out file '" + g.file_id + "'");
            }
            const double dur = transfer_time(g.size, p.link_ps(q, d));
            double& link = ps_free[static_cast<std::size_t>(q - 1) * stores + (d - 1)];
            link = std::max(link, tm.finish) + dur;
            tm.stage_out_finish = std::max(tm.stage_out_finish, link);
        }
        tl.makespan = std::max({tl.makespan, tm.finish, tm.stage_out_finish});
    }

    // The dummy end completes once every sink's data is in.
    task_timing& end = tl.tasks[w.end_id()];
    for (const auto& pred : w.predecessors(w.end_id())) {
        end.data_ready = std::max(end.data_ready, tl.tasks[pred.task].finish);
    }
    end.start = end.finish = end.data_ready;
    return tl;
}

void write_timeline_csv(std::ostream& out, const timeline& tl, const workflow& w) {
    out << "task_id,processor,stage_in_ready,data_ready,start,finish,stage_out_finish\n";
    char buf[256];
    for (task_id t : w.real_tasks()) {
        const auto& tm = tl.tasks[t];
        std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", t, tl.processor[t], tm.stage_in_ready,
                      tm.data_ready, tm.start, tm.finish, tm.stage_out_finish);
        out << buf;
    }
}

} // namespace dawsched
