#include "dawsched/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dawsched/random.hpp"

namespace dawsched {

std::string_view to_string(shape s) noexcept {
    switch (s) {
    case shape::linear: return "linear";
    case shape::merging: return "merging";
    case shape::emission: return "emission";
    case shape::merging_emission: return "merging_emission";
    case shape::random: return "random";
    }
    return "unknown";
}

std::optional<shape> parse_shape(std::string_view name) noexcept {
    for (shape s : {shape::linear, shape::merging, shape::emission, shape::merging_emission, shape::random}) {
        if (name == to_string(s)) return s;
    }
    if (name == "merging-emission") return shape::merging_emission;
    return std::nullopt;
}

void gen_spec::validate() const {
    if (task_count < 1) throw std::invalid_argument("task count must be at least 1");
    if (fan < 1) throw std::invalid_argument("fan must be at least 1");
    for (const auto& r : {exec_range, edge_size_range, stagein_range}) {
        if (!(r.min >= 0.0 && r.min <= r.max)) throw std::invalid_argument("ranges must satisfy 0 <= min <= max");
    }
}

namespace {

using edge_list = std::vector<std::pair<int, int>>; // 0-based node pairs

edge_list tree_edges(int nodes, int fan, int base) {
    edge_list out;
    for (int k = 1; k < nodes; ++k) out.emplace_back(base + (k - 1) / fan, base + k);
    return out;
}

edge_list structure(const gen_spec& spec, rng_type& rng) {
    const int n = spec.task_count;
    switch (spec.kind) {
    case shape::linear: {
        edge_list out;
        for (int k = 1; k < n; ++k) out.emplace_back(k - 1, k);
        return out;
    }
    case shape::emission:
        return tree_edges(n, spec.fan, 0);
    case shape::merging: {
        edge_list out = tree_edges(n, spec.fan, 0);
        for (auto& [a, b] : out) std::swap(a, b);
        return out;
    }
    case shape::merging_emission: {
        const int top = (n + 1) / 2;
        const int bottom = n - top;
        edge_list out = tree_edges(top, spec.fan, 0);
        if (bottom == 0) return out;
        edge_list merge = tree_edges(bottom, spec.fan, top);
        for (auto& [a, b] : merge) std::swap(a, b);
        out.insert(out.end(), merge.begin(), merge.end());
        auto leaves = [&](int first, int count) {
            std::vector<int> l;
            for (int k = 0; k < count; ++k) {
                if (k * spec.fan + 1 >= count) l.push_back(first + k);
            }
            return l;
        };
        const auto top_leaves = leaves(0, top);
        const auto bottom_leaves = leaves(top, bottom);
        const std::size_t links = std::max(top_leaves.size(), bottom_leaves.size());
        for (std::size_t i = 0; i < links; ++i) {
            out.emplace_back(top_leaves[i % top_leaves.size()], bottom_leaves[i % bottom_leaves.size()]);
        }
        return out;
    }
    case shape::random: {
        edge_list out;
        std::vector<std::vector<int>> layers;
        int next = 0;
        while (next < n) {
            const int width = 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(spec.fan)));
            std::vector<int> layer;
            for (int k = 0; k < width && next < n; ++k) layer.push_back(next++);
            if (!layers.empty()) {
                const auto& prev = layers.back();
                for (int v : layer) {
                    const int anchor = prev[draw_below(rng, prev.size())];
                    out.emplace_back(anchor, v);
                    for (const auto& earlier : layers) {
                        for (int u : earlier) {
                            if (u != anchor && draw_below(rng, 4) == 0) out.emplace_back(u, v);
                        }
                    }
                }
            }
            layers.push_back(std::move(layer));
        }
        std::ranges::sort(out);
        return out;
    }
    }
    return {};
}

} // namespace

raw_workflow generate_raw_workflow(const gen_spec& spec) {
    spec.validate();
    rng_type rng(spec.seed);
    const int n = spec.task_count;
    const edge_list links = structure(spec, rng);

    std::vector<int> indeg(static_cast<std::size_t>(n), 0), outdeg(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : links) {
        ++outdeg[a];
        ++indeg[b];
    }

    raw_workflow raw;
    for (int k = 0; k < n; ++k) {
        task t;
        t.id = k + 1;
        const bool stage_in = indeg[k] == 0 || draw_below(rng, 2) == 0;
        if (stage_in) {
            const double size = draw_real(rng, spec.stagein_range.min, spec.stagein_range.max);
            t.stage_in.push_back({"in" + std::to_string(k + 1), size, std::nullopt});
        }
        if (outdeg[k] == 0) {
            const double size = draw_real(rng, spec.edge_size_range.min, spec.edge_size_range.max);
            t.stage_out.push_back({"out" + std::to_string(k + 1), size, std::nullopt});
        }
        raw.tasks.push_back(std::move(t));
    }
    for (const auto& [a, b] : links) {
        raw.edges.push_back({a + 1, b + 1, draw_real(rng, spec.edge_size_range.min, spec.edge_size_range.max)});
    }
    return raw;
}

workflow generate_workflow(const gen_spec& spec) { return normalize_workflow(generate_raw_workflow(spec)); }

platform generate_platform(const workflow& w, const platform_spec& spec) {
    if (spec.processors < 1 || spec.storages < 1) {
        throw std::invalid_argument("platform needs at least one processor and one storage site");
    }
    rng_type rng(spec.seed);
    const auto P = static_cast<std::size_t>(spec.processors);
    const auto S = static_cast<std::size_t>(spec.storages);
    auto draw_bw = [&] { return draw_real(rng, spec.bandwidth_range.min, spec.bandwidth_range.max); };

    platform p;
    p.processors = spec.processors;
    p.storages = spec.storages;
    p.exec_time.assign(static_cast<std::size_t>(w.task_count()), std::vector<double>(P, 0.0));
    for (const auto& t : w.tasks()) {
        if (t.is_dummy) continue;
        auto& row = p.exec_time[static_cast<std::size_t>(t.id - 1)];
        if (spec.hetero) {
            for (auto& v : row) v = draw_real(rng, spec.exec_range.min, spec.exec_range.max);
        } else {
            std::ranges::fill(row, draw_real(rng, spec.exec_range.min, spec.exec_range.max));
        }
    }
    auto fill = [&](std::size_t rows, std::size_t cols) {
        matrix m(rows, std::vector<double>(cols, 0.0));
        const double shared = spec.hetero ? 0.0 : draw_bw();
        for (auto& row : m) {
            for (auto& v : row) v = spec.hetero ? draw_bw() : shared;
        }
        return m;
    };
    p.bw_pp = fill(P, P);
    for (std::size_t q = 0; q < P; ++q) p.bw_pp[q][q] = 0.0;
    p.bw_sp = fill(S, P);
    p.bw_ps.assign(P, std::vector<double>(S, 0.0));
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t q = 0; q < P; ++q) p.bw_ps[q][s] = p.bw_sp[s][q];
    }
    return p;
}

} // namespace dawsched
