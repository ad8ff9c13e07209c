#pragma once

#include <string>
#include <vector>

#include "dawsched/error.hpp"
#include "dawsched/task_vector.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

using matrix = std::vector<std::vector<double>>;

// Heterogeneous compute and storage sites. Matrices are stored 0-based; the
// accessors take the 1-based ids used everywhere else. A bandwidth of 0 means
// "no link". Bandwidths are MB/s, execution times seconds.
struct platform {
    int processors = 1;
    int storages = 0;
    matrix exec_time; // [task][processor]
    matrix bw_pp;     // [processor][processor], diagonal ignored
    matrix bw_sp;     // [storage][processor], stage-in
    matrix bw_ps;     // [processor][storage], stage-out

    double exec(task_id t, processor_id q) const { return exec_time[t - 1][q - 1]; }
    double link_pp(processor_id from, processor_id to) const { return bw_pp[from - 1][to - 1]; }
    double link_sp(storage_id s, processor_id q) const { return bw_sp[s - 1][q - 1]; }
    double link_ps(processor_id q, storage_id s) const { return bw_ps[q - 1][s - 1]; }

    friend bool operator==(const platform&, const platform&) = default;
};

// size / bandwidth; zero-size transfers cost nothing even without a link.
// Throws no_route when data must cross a missing link.
double transfer_time(double size, double bandwidth);

// Storage site with the highest bandwidth into / out of q; ties go to the
// lowest id. Returns 0 when the platform has no storage.
storage_id best_stage_in_site(const platform& p, processor_id q);
storage_id best_stage_out_site(const platform& p, processor_id q);

struct diagnostic {
    error_kind kind;
    std::string message;
};

// Empty result means the platform is usable for every processor assignment of w.
std::vector<diagnostic> validate_platform(const platform& p, const workflow& w);

// Throws an error of the first diagnostic's kind listing every diagnostic.
void require_valid(const platform& p, const workflow& w);

// Accepts exec_time tables written against the un-normalized task list and
// inserts zero rows for the dummy endpoints added by normalization.
platform align_exec_rows(platform p, const workflow& w);

} // namespace dawsched
