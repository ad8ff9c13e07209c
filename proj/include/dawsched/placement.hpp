#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dawsched/platform.hpp"
#include "dawsched/task_vector.hpp"

namespace dawsched {

// One stage-in file bound for one compute site. The same id listed under
// several destinations is replicated, one copy per destination.
struct placement_file {
    std::string id;
    double size = 0.0;
    processor_id dest = 0;
};

struct placement_instance {
    std::vector<placement_file> files;
    matrix bw_sp; // [storage][processor]

    int storages() const noexcept { return static_cast<int>(bw_sp.size()); }
    int processors() const noexcept { return bw_sp.empty() ? 0 : static_cast<int>(bw_sp.front().size()); }
    double link(storage_id s, processor_id q) const { return bw_sp[s - 1][q - 1]; }
};

// Which storage site hosts each (file, destination) copy.
class placement {
public:
    void assign(const std::string& file, processor_id dest, storage_id site) { sites_[{file, dest}] = site; }

    std::optional<storage_id> site(const std::string& file, processor_id dest) const {
        auto it = sites_.find({file, dest});
        if (it == sites_.end()) return std::nullopt;
        return it->second;
    }

    // Number of destinations holding a copy of the file.
    int replica_count(const std::string& file) const;

    std::size_t size() const noexcept { return sites_.size(); }
    const std::map<std::pair<std::string, processor_id>, storage_id>& entries() const noexcept { return sites_; }

    friend bool operator==(const placement&, const placement&) = default;

private:
    std::map<std::pair<std::string, processor_id>, storage_id> sites_;
};

struct link_load {
    storage_id storage = 0;
    processor_id dest = 0;
    double load = 0.0;   // MB
    double finish = 0.0; // seconds
};

// Throws no_route if any file is bound for a destination without storage
// links, or the instance is malformed.
void check_instance(const placement_instance& inst);

// max over destinations of (total MB bound there) / (aggregate incoming bandwidth).
double lower_bound(const placement_instance& inst);

struct placement_options {
    // After the greedy pass, move or swap files off the slowest link of each
    // destination while that strictly lowers its finish time.
    bool refine = true;
};

// Bandwidth-proportional greedy placement.
placement place_stage_in(const placement_instance& inst, const placement_options& options = {});

// Per-link finish times when each link moves its files back to back and links
// run in parallel. Only links carrying data are listed, ordered by (dest, storage).
std::vector<link_load> link_loads(const placement& pl, const placement_instance& inst);

// Slowest link of link_loads(); 0 for an empty placement.
double placement_transfer_time(const placement& pl, const placement_instance& inst);

// Stage-in files of a processor assignment, as a placement instance over p.bw_sp.
placement_instance stage_in_instance(const workflow& w, const platform& p,
                                     const task_vector<processor_id>& assignment);

} // namespace dawsched
