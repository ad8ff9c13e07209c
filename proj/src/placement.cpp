#include "dawsched/placement.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dawsched/error.hpp"

namespace dawsched {

int placement::replica_count(const std::string& file) const {
    int n = 0;
    for (auto it = sites_.lower_bound({file, 0}); it != sites_.end() && it->first.first == file; ++it) ++n;
    return n;
}

namespace {

double incoming_bandwidth(const placement_instance& inst, processor_id q) {
    double sum = 0.0;
    for (storage_id s = 1; s <= inst.storages(); ++s) sum += inst.link(s, q);
    return sum;
}

// Files bound for each destination, as indices into inst.files.
std::map<processor_id, std::vector<std::size_t>> by_destination(const placement_instance& inst) {
    std::map<processor_id, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < inst.files.size(); ++i) groups[inst.files[i].dest].push_back(i);
    return groups;
}

} // namespace

void check_instance(const placement_instance& inst) {
    const int procs = inst.processors();
    for (const auto& row : inst.bw_sp) {
        if (static_cast<int>(row.size()) != procs) {
            throw error(error_kind::shape_mismatch, "bw_sp rows differ in length");
        }
        for (double v : row) {
            if (!(v >= 0.0)) throw error(error_kind::shape_mismatch, "bw_sp holds a negative bandwidth");
        }
    }
    std::set<std::pair<std::string, processor_id>> seen;
    for (const auto& f : inst.files) {
        if (!(f.size >= 0.0)) {
            throw error(error_kind::shape_mismatch, "file '" + f.id + "' has negative size");
        }
        if (f.dest < 1 || f.dest > procs) {
            throw error(error_kind::no_route, "file '" + f.id + "' bound for unknown processor " +
                                                  std::to_string(f.dest));
        }
        if (!seen.emplace(f.id, f.dest).second) {
            throw error(error_kind::shape_mismatch, "file '" + f.id + "' listed twice for processor " +
                                                        std::to_string(f.dest));
        }
        if (!(incoming_bandwidth(inst, f.dest) > 0.0)) {
            throw error(error_kind::no_route, "file '" + f.id + "' cannot reach processor " +
                                                  std::to_string(f.dest));
        }
    }
}

double lower_bound(const placement_instance& inst) {
    check_instance(inst);
    double bound = 0.0;
    for (const auto& [q, idx] : by_destination(inst)) {
        double total = 0.0;
        for (std::size_t i : idx) total += inst.files[i].size;
        bound = std::max(bound, total / incoming_bandwidth(inst, q));
    }
    return bound;
}

namespace {

// Local search on one destination; site[i] hosts sizes[i].
void refine_sites(const std::vector<double>& sizes, const std::vector<double>& bw, std::vector<std::size_t>& site) {
    std::vector<double> load(bw.size(), 0.0);
    for (std::size_t i = 0; i < sizes.size(); ++i) load[site[i]] += sizes[i];
    auto slowest = [&] {
        double m = 0.0;
        for (std::size_t s = 0; s < bw.size(); ++s) m = std::max(m, load[s] / bw[s]);
        return m;
    };
    auto try_exchange = [&](std::size_t from, std::size_t to, double delta, double current) {
        load[from] -= delta;
        load[to] += delta;
        if (slowest() < current) return true;
        load[from] += delta;
        load[to] -= delta;
        return false;
    };

    bool improved = true;
    while (improved) {
        improved = false;
        const double current = slowest();
        for (std::size_t i = 0; i < sizes.size() && !improved; ++i) {
            const std::size_t from = site[i];
            if (load[from] / bw[from] < current) continue;
            for (std::size_t to = 0; to < bw.size() && !improved; ++to) {
                if (to == from) continue;
                if (try_exchange(from, to, sizes[i], current)) {
                    site[i] = to;
                    improved = true;
                    break;
                }
                for (std::size_t j = 0; j < sizes.size(); ++j) {
                    if (site[j] != to || sizes[j] >= sizes[i]) continue;
                    if (try_exchange(from, to, sizes[i] - sizes[j], current)) {
                        site[i] = to;
                        site[j] = from;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }
}

} // namespace

placement place_stage_in(const placement_instance& inst, const placement_options& options) {
    check_instance(inst);
    placement out;
    for (const auto& [q, idx] : by_destination(inst)) {
        std::vector<std::size_t> files = idx;
        std::ranges::sort(files, [&](std::size_t a, std::size_t b) {
            const auto& fa = inst.files[a];
            const auto& fb = inst.files[b];
            return fa.size != fb.size ? fa.size > fb.size : fa.id < fb.id;
        });
        const std::vector<std::size_t> sorted = files;
        std::vector<storage_id> sites;
        for (storage_id s = 1; s <= inst.storages(); ++s) {
            if (inst.link(s, q) > 0.0) sites.push_back(s);
        }
        std::ranges::stable_sort(sites, [&](storage_id a, storage_id b) { return inst.link(a, q) > inst.link(b, q); });

        const double total = std::accumulate(files.begin(), files.end(), 0.0,
                                             [&](double acc, std::size_t i) { return acc + inst.files[i].size; });
        const double bw_sum = incoming_bandwidth(inst, q);
        std::vector<double> load(static_cast<std::size_t>(inst.storages() + 1), 0.0);
        std::map<std::size_t, storage_id> chosen;

        // files stays sorted by descending size as entries are removed.
        for (storage_id s : sites) {
            if (files.empty()) break;
            const double quota = total * inst.link(s, q) / bw_sum;
            double taken = 0.0;
            std::size_t k = 0;
            while (k < files.size() && taken + inst.files[files[k]].size <= quota) {
                taken += inst.files[files[k]].size;
                ++k;
            }
            for (std::size_t j = 0; j < k; ++j) chosen[files[j]] = s;
            files.erase(files.begin(), files.begin() + static_cast<std::ptrdiff_t>(k));

            const double gap = quota - taken;
            if (!files.empty() && gap > 0.0) {
                // Descending order: first element not larger than gap, and its left neighbour.
                auto it = std::partition_point(files.begin(), files.end(),
                                               [&](std::size_t i) { return inst.files[i].size > gap; });
                auto best = files.end();
                if (it != files.end()) best = it;
                if (it != files.begin()) {
                    auto above = std::prev(it);
                    if (best == files.end() ||
                        inst.files[*above].size - gap < gap - inst.files[*best].size) {
                        best = above;
                    }
                }
                const double size = inst.files[*best].size;
                const bool accept = size <= gap || size - gap < gap;
                if (accept) {
                    chosen[*best] = s;
                    taken += size;
                    files.erase(best);
                }
            }
            load[s] = taken;
        }
        // Leftovers go to the link that currently finishes first.
        for (std::size_t i : files) {
            storage_id best = sites.front();
            for (storage_id s : sites) {
                if (load[s] / inst.link(s, q) < load[best] / inst.link(best, q)) best = s;
            }
            chosen[i] = best;
            load[best] += inst.files[i].size;
        }

        if (options.refine && sites.size() > 1) {
            std::vector<double> sizes, bw;
            std::vector<std::size_t> site;
            for (storage_id s : sites) bw.push_back(inst.link(s, q));
            for (std::size_t i : sorted) {
                sizes.push_back(inst.files[i].size);
                site.push_back(static_cast<std::size_t>(std::ranges::find(sites, chosen[i]) - sites.begin()));
            }
            refine_sites(sizes, bw, site);
            for (std::size_t k = 0; k < sorted.size(); ++k) chosen[sorted[k]] = sites[site[k]];
        }
        for (const auto& [i, s] : chosen) out.assign(inst.files[i].id, q, s);
    }
    return out;
}

std::vector<link_load> link_loads(const placement& pl, const placement_instance& inst) {
    std::map<std::pair<processor_id, storage_id>, double> load;
    for (const auto& f : inst.files) {
        auto s = pl.site(f.id, f.dest);
        if (!s) {
            throw error(error_kind::mismatch, "file '" + f.id + "' for processor " + std::to_string(f.dest) +
                                                  " has no storage site");
        }
        load[{f.dest, *s}] += f.size;
    }
    std::vector<link_load> out;
    for (const auto& [key, mb] : load) {
        const auto [q, s] = key;
        out.push_back({s, q, mb, transfer_time(mb, inst.link(s, q))});
    }
    return out;
}

double placement_transfer_time(const placement& pl, const placement_instance& inst) {
    double t = 0.0;
    for (const auto& l : link_loads(pl, inst)) t = std::max(t, l.finish);
    return t;
}

placement_instance stage_in_instance(const workflow& w, const platform& p,
                                     const task_vector<processor_id>& assignment) {
    placement_instance inst;
    inst.bw_sp = p.bw_sp;
    std::set<std::pair<std::string, processor_id>> seen;
    for (task_id t : w.real_tasks()) {
        for (const auto& f : w.at(t).stage_in) {
            const processor_id q = assignment[t];
            if (seen.emplace(f.file_id, q).second) {
                inst.files.push_back({f.file_id, f.size, q});
            } else {
                // Same file feeding several tasks on one site travels once.
                for (auto& pf : inst.files) {
                    if (pf.id == f.file_id && pf.dest == q) pf.size = std::max(pf.size, f.size);
                }
            }
        }
    }
    return inst;
}

} // namespace dawsched
