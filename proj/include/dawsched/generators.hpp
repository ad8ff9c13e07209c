#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dawsched/platform.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

enum class shape { linear, merging, emission, merging_emission, random };

std::string_view to_string(shape s) noexcept;
std::optional<shape> parse_shape(std::string_view name) noexcept;

struct value_range {
    double min = 0.0;
    double max = 0.0;
};

struct gen_spec {
    shape kind = shape::linear;
    int task_count = 10; // non-dummy tasks
    int fan = 3;
    value_range exec_range{1.0, 20.0};
    value_range edge_size_range{1.0, 50.0};
    value_range stagein_range{1.0, 50.0};
    bool hetero = false;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on empty ranges or non-positive counts.
    void validate() const;
};

// Raw graph of the requested shape, before normalization. Node k (0-based)
// becomes task k + 1.
//  - linear: one chain;
//  - emission: breadth-first fan-out tree, node k's parent is (k - 1) / fan;
//  - merging: the emission tree with every edge reversed;
//  - merging_emission: an emission tree whose leaves feed a merging tree;
//  - random: layers of up to fan tasks, each wired to at least one task of the
//    previous layer and occasionally to earlier ones.
// Every source stages in one file; further tasks stage in with probability
// 1/2. Every sink stages out one file.
raw_workflow generate_raw_workflow(const gen_spec& spec);

workflow generate_workflow(const gen_spec& spec);

struct platform_spec {
    int processors = 3;
    int storages = 2;
    bool hetero = false;
    std::uint64_t seed = 0;
    value_range exec_range{1.0, 20.0};
    value_range bandwidth_range{1.0, 10.0};
};

// Homogeneous: one draw per task for exec_time, repeated across processors,
// and one draw per bandwidth matrix. Heterogeneous: every entry drawn
// independently. Stage-out bandwidths mirror stage-in bandwidths.
platform generate_platform(const workflow& w, const platform_spec& spec);

} // namespace dawsched
