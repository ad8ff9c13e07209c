#include "dawsched/platform.hpp"

#include <cmath>

namespace dawsched {

double transfer_time(double size, double bandwidth) {
    if (size == 0.0) {
        return 0.0;
    }
    if (!(bandwidth > 0.0)) {
        throw error(error_kind::no_route, "cannot move " + std::to_string(size) + " MB over a missing link");
    }
    return size / bandwidth;
}

storage_id best_stage_in_site(const platform& p, processor_id q) {
    storage_id best = 0;
    double best_bw = -1.0;
    for (storage_id s = 1; s <= p.storages; ++s) {
        if (p.link_sp(s, q) > best_bw) {
            best_bw = p.link_sp(s, q);
            best = s;
        }
    }
    return best;
}

storage_id best_stage_out_site(const platform& p, processor_id q) {
    storage_id best = 0;
    double best_bw = -1.0;
    for (storage_id s = 1; s <= p.storages; ++s) {
        if (p.link_ps(q, s) > best_bw) {
            best_bw = p.link_ps(q, s);
            best = s;
        }
    }
    return best;
}

namespace {

bool check_shape(std::vector<diagnostic>& out, const matrix& m, const char* name, int rows, int cols,
                 const char* row_label) {
    bool ok = true;
    if (static_cast<int>(m.size()) != rows) {
        out.push_back({error_kind::shape_mismatch, std::string(name) + " has " + std::to_string(m.size()) +
                                                       " rows, expected " + std::to_string(rows)});
        ok = false;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (static_cast<int>(m[r].size()) != cols) {
            out.push_back({error_kind::shape_mismatch, std::string(name) + " row for " + row_label + " " +
                                                           std::to_string(r + 1) + " has " +
                                                           std::to_string(m[r].size()) + " columns, expected " +
                                                           std::to_string(cols)});
            ok = false;
        }
        for (double v : m[r]) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                out.push_back({error_kind::shape_mismatch, std::string(name) + " row " + std::to_string(r + 1) +
                                                               " holds a negative or non-finite value"});
                ok = false;
                break;
            }
        }
    }
    return ok;
}

} // namespace

std::vector<diagnostic> validate_platform(const platform& p, const workflow& w) {
    std::vector<diagnostic> out;
    if (p.processors < 1) {
        out.push_back({error_kind::shape_mismatch, "processor count must be at least 1"});
        return out;
    }
    if (p.storages < 0) {
        out.push_back({error_kind::shape_mismatch, "storage count must be non-negative"});
        return out;
    }
    const int n = w.task_count();
    if (static_cast<int>(p.exec_time.size()) < n) {
        for (int t = static_cast<int>(p.exec_time.size()) + 1; t <= n; ++t) {
            out.push_back({error_kind::shape_mismatch, "exec_time row missing for task " + std::to_string(t)});
        }
    }
    const bool exec_ok = check_shape(out, p.exec_time, "exec_time", n, p.processors, "task");
    const bool pp_ok = check_shape(out, p.bw_pp, "bw_pp", p.processors, p.processors, "processor");
    const bool sp_ok = check_shape(out, p.bw_sp, "bw_sp", p.storages, p.processors, "storage");
    const bool ps_ok = check_shape(out, p.bw_ps, "bw_ps", p.processors, p.storages, "processor");

    if (exec_ok) {
        for (const auto& t : w.tasks()) {
            if (!t.is_dummy) continue;
            for (processor_id q = 1; q <= p.processors; ++q) {
                if (p.exec(t.id, q) != 0.0) {
                    out.push_back({error_kind::shape_mismatch,
                                   "dummy task " + std::to_string(t.id) + " has nonzero exec_time"});
                    break;
                }
            }
        }
    }
    if (pp_ok) {
        for (processor_id a = 1; a <= p.processors; ++a) {
            for (processor_id b = 1; b <= p.processors; ++b) {
                if (a != b && !(p.link_pp(a, b) > 0.0)) {
                    out.push_back({error_kind::shape_mismatch, "bw_pp[" + std::to_string(a) + "][" +
                                                                   std::to_string(b) + "] must be positive"});
                }
            }
        }
    }
    if (sp_ok) {
        for (const auto& t : w.tasks()) {
            for (const auto& f : t.stage_in) {
                if (f.size == 0.0) continue;
                for (processor_id q = 1; q <= p.processors; ++q) {
                    storage_id s = best_stage_in_site(p, q);
                    if (s == 0 || !(p.link_sp(s, q) > 0.0)) {
                        out.push_back({error_kind::unreachable_file,
                                       "stage-in file '" + f.file_id + "' of task " + std::to_string(t.id) +
                                           " cannot reach processor " + std::to_string(q)});
                        break;
                    }
                }
            }
        }
    }
    if (ps_ok) {
        for (const auto& t : w.tasks()) {
            for (const auto& f : t.stage_out) {
                if (f.dest && (*f.dest < 1 || *f.dest > p.storages)) {
                    out.push_back({error_kind::shape_mismatch, "stage-out file '" + f.file_id +
                                                                   "' targets unknown storage " +
                                                                   std::to_string(*f.dest)});
                    continue;
                }
                if (f.size == 0.0) continue;
                for (processor_id q = 1; q <= p.processors; ++q) {
                    storage_id s = f.dest ? *f.dest : best_stage_out_site(p, q);
                    if (s == 0 || !(p.link_ps(q, s) > 0.0)) {
                        out.push_back({error_kind::unreachable_file,
                                       "stage-out file '" + f.file_id + "' of task " + std::to_string(t.id) +
                                           " has no link from processor " + std::to_string(q)});
                        break;
                    }
                }
            }
        }
    }
    return out;
}

void require_valid(const platform& p, const workflow& w) {
    auto diags = validate_platform(p, w);
    if (diags.empty()) {
        return;
    }
    std::string msg;
    for (const auto& d : diags) {
        if (!msg.empty()) msg += "; ";
        msg += d.message;
    }
    throw error(diags.front().kind, msg);
}

platform align_exec_rows(platform p, const workflow& w) {
    const int n = w.task_count();
    if (static_cast<int>(p.exec_time.size()) != w.source_task_count() || w.source_task_count() == n) {
        return p;
    }
    const std::vector<double> zero(static_cast<std::size_t>(std::max(p.processors, 0)), 0.0);
    if (w.id_offset() == 1) {
        p.exec_time.insert(p.exec_time.begin(), zero);
    }
    if (static_cast<int>(p.exec_time.size()) < n) {
        p.exec_time.push_back(zero);
    }
    return p;
}

} // namespace dawsched
