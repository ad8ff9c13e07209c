#include "dawsched/chromosome.hpp"

#include <algorithm>
#include <sstream>

#include "dawsched/error.hpp"

namespace dawsched {

std::vector<int> encode(const schedule& s, const workflow& w) {
    if (s.empty()) {
        throw error(error_kind::invalid_schedule, "schedule has no processors");
    }
    std::vector<char> seen(static_cast<std::size_t>(w.task_count() + 1), 0);
    std::vector<int> genes;
    for (std::size_t q = 0; q < s.size(); ++q) {
        genes.push_back(0);
        genes.push_back(static_cast<int>(q + 1));
        for (task_id t : s[q]) {
            if (t < 1 || t > w.task_count() || w.at(t).is_dummy) {
                throw error(error_kind::invalid_schedule, "task " + std::to_string(t) + " is not a schedulable task");
            }
            if (seen[t]) {
                throw error(error_kind::invalid_schedule, "task " + std::to_string(t) + " assigned twice");
            }
            seen[t] = 1;
            genes.push_back(t);
        }
    }
    for (task_id t : w.real_tasks()) {
        if (!seen[t]) {
            throw error(error_kind::invalid_schedule, "task " + std::to_string(t) + " is not assigned");
        }
    }
    return genes;
}

schedule decode(std::span<const int> genes, const workflow& w, int processors) {
    auto corrupt = [](const std::string& msg) { return error(error_kind::corrupt_chromosome, msg); };
    if (processors < 1) {
        throw corrupt("processor count must be positive");
    }
    schedule s(static_cast<std::size_t>(processors));
    std::vector<char> head_seen(static_cast<std::size_t>(processors + 1), 0);
    std::vector<char> task_seen(static_cast<std::size_t>(w.task_count() + 1), 0);
    std::size_t i = 0;
    while (i < genes.size()) {
        if (genes[i] != 0) {
            throw corrupt("expected delimiter at gene " + std::to_string(i));
        }
        if (i + 1 >= genes.size()) {
            throw corrupt("delimiter without processor id at end of stream");
        }
        const int q = genes[i + 1];
        if (q < 1 || q > processors) {
            throw corrupt("unknown processor id " + std::to_string(q));
        }
        if (head_seen[q]) {
            throw corrupt("processor " + std::to_string(q) + " appears twice");
        }
        head_seen[q] = 1;
        i += 2;
        while (i < genes.size() && genes[i] != 0) {
            const int t = genes[i];
            if (t < 1 || t > w.task_count() || w.at(t).is_dummy) {
                throw corrupt("unknown task id " + std::to_string(t));
            }
            if (task_seen[t]) {
                throw corrupt("task " + std::to_string(t) + " appears twice");
            }
            task_seen[t] = 1;
            s[static_cast<std::size_t>(q - 1)].push_back(t);
            ++i;
        }
    }
    for (int q = 1; q <= processors; ++q) {
        if (!head_seen[q]) {
            throw corrupt("processor " + std::to_string(q) + " has no segment");
        }
    }
    for (task_id t : w.real_tasks()) {
        if (!task_seen[t]) {
            throw corrupt("task " + std::to_string(t) + " is missing");
        }
    }
    return s;
}

task_vector<processor_id> assignment_of(const schedule& s, const workflow& w) {
    task_vector<processor_id> proc(static_cast<std::size_t>(w.task_count()), 0);
    for (std::size_t q = 0; q < s.size(); ++q) {
        for (task_id t : s[q]) proc[t] = static_cast<processor_id>(q + 1);
    }
    return proc;
}

schedule sort_by_soft_height(schedule s, const task_vector<int>& soft) {
    for (auto& list : s) {
        std::ranges::sort(list, [&](task_id a, task_id b) {
            return soft[a] != soft[b] ? soft[a] < soft[b] : a < b;
        });
    }
    return s;
}

std::string genes_to_string(std::span<const int> genes) {
    std::string out;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(genes[i]);
    }
    return out;
}

std::vector<int> genes_from_string(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> genes;
    int g = 0;
    while (in >> g) genes.push_back(g);
    if (!in.eof()) {
        throw error(error_kind::corrupt_chromosome, "non-integer token in gene string");
    }
    return genes;
}

std::vector<std::string> check_chromosome(const chromosome& c, const workflow& w, int processors,
                                          const task_vector<int>& heights, const task_vector<int>& eq_heights) {
    std::vector<std::string> problems;
    schedule s;
    try {
        s = decode(c.genes, w, processors);
    } catch (const error& e) {
        problems.emplace_back(e.what());
        return problems;
    }
    // Segment heads must come in ascending processor order to match encode().
    if (c.genes != encode(s, w)) {
        problems.emplace_back("segments are not in ascending processor order");
    }
    if (static_cast<int>(c.soft_height.size()) != w.task_count()) {
        problems.emplace_back("soft height array does not cover every task");
        return problems;
    }
    for (const auto& t : w.tasks()) {
        const int v = c.soft_height[t.id];
        if (v < heights[t.id] || v > eq_heights[t.id]) {
            problems.push_back("soft height of task " + std::to_string(t.id) + " outside [height, height_eq]");
        }
    }
    for (std::size_t q = 0; q < s.size(); ++q) {
        for (std::size_t k = 1; k < s[q].size(); ++k) {
            if (c.soft_height[s[q][k - 1]] > c.soft_height[s[q][k]]) {
                problems.push_back("processor " + std::to_string(q + 1) + " segment not ordered by soft height");
                break;
            }
        }
    }
    for (const auto& e : w.edges()) {
        if (c.soft_height[e.from] >= c.soft_height[e.to]) {
            problems.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                               " does not increase soft height");
        }
    }
    return problems;
}

} // namespace dawsched
