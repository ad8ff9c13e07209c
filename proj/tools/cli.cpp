#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dawsched/error.hpp"
#include "dawsched/ga.hpp"
#include "dawsched/generators.hpp"
#include "dawsched/io.hpp"
#include "dawsched/oracle.hpp"
#include "dawsched/placement.hpp"

namespace dawsched::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t default_seed = 1;

struct ga_flags {
    std::optional<std::uint64_t> seed;
    int population = 50;
    int generations = 100;
    double mutation_rate = 0.2;
};

void add_ga_flags(CLI::App* cmd, ga_flags& flags) {
    cmd->add_option("--seed", flags.seed, "Master seed (overrides DAWSCHED_SEED)");
    cmd->add_option("--population", flags.population, "Population size (even, >= 2)");
    cmd->add_option("--generations", flags.generations, "Number of generations");
    cmd->add_option("--mutation-rate", flags.mutation_rate, "Mutation probability per chromosome")
        ->check(CLI::Range(0.0, 1.0));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("DAWSCHED_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(std::string("DAWSCHED_SEED is not an unsigned integer: ") + env);
    }
    return default_seed;
}

std::string ga_config(const ga_params& p) {
    std::ostringstream s;
    s << "seed=" << p.seed << " population=" << p.population_size << " generations=" << p.generations
      << " mutation_rate=" << format_number(p.mutation_rate);
    return s.str();
}

struct schedule_cmd {
    std::string workflow_path;
    std::string platform_path;
    std::string out_dir = "schedule_out";
    ga_flags ga;
};

int do_schedule(const schedule_cmd& cmd, std::ostream& out) {
    const workflow w = normalize_workflow(parse_workflow(read_file(cmd.workflow_path), cmd.workflow_path));
    const platform p = align_exec_rows(parse_platform(read_file(cmd.platform_path), cmd.platform_path), w);
    require_valid(p, w);

    ga_params params{cmd.ga.population, cmd.ga.generations, cmd.ga.mutation_rate, resolve_seed(cmd.ga.seed)};
    params.validate();
    const scheduling_problem problem(w, p);
    const ga_result result = run_ga(problem, params);

    const std::string header = "# dawsched schedule workflow=" + cmd.workflow_path + " platform=" +
                               cmd.platform_path + " " + ga_config(params) + "\n";

    std::ostringstream sched;
    sched << header << "makespan " << format_number(result.best_makespan) << "\n"
          << "chromosome " << genes_to_string(result.best.genes) << "\n";
    for (std::size_t q = 0; q < result.best_schedule.size(); ++q) {
        sched << "P" << q + 1 << ":";
        for (task_id t : result.best_schedule[q]) sched << ' ' << t;
        sched << "\n";
    }
    write_file(fs::path(cmd.out_dir) / "schedule.txt", sched.str());

    std::ostringstream tl;
    tl << header;
    write_timeline_csv(tl, result.best_timeline, w);
    write_file(fs::path(cmd.out_dir) / "timeline.csv", tl.str());

    std::ostringstream hist;
    hist << header << "generation,best_makespan\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        hist << g << ',' << format_number(result.history[g]) << "\n";
    }
    write_file(fs::path(cmd.out_dir) / "history.csv", hist.str());

    out << "makespan " << format_number(result.best_makespan) << "\n"
        << "seed " << params.seed << "\n";
    return success;
}

struct place_cmd {
    std::string instance_path;
    std::string out_path = "placement.csv";
};

int do_place(const place_cmd& cmd, std::ostream& out) {
    const placement_instance inst = parse_instance(read_file(cmd.instance_path), cmd.instance_path);
    const double lb = lower_bound(inst);
    const placement pl = place_stage_in(inst);
    const auto loads = link_loads(pl, inst);
    const double achieved = placement_transfer_time(pl, inst);
    const double ratio = lb > 0.0 ? achieved / lb : 1.0;

    std::ostringstream csv;
    csv << "# dawsched place instance=" << cmd.instance_path << "\n"
        << "# lower_bound=" << format_number(lb) << " achieved=" << format_number(achieved)
        << " ratio=" << format_number(ratio) << "\n"
        << "file_id,dest,storage,size,link_finish\n";
    for (const auto& f : inst.files) {
        const storage_id s = *pl.site(f.id, f.dest);
        double finish = 0.0;
        for (const auto& l : loads) {
            if (l.storage == s && l.dest == f.dest) finish = l.finish;
        }
        csv << f.id << ',' << f.dest << ',' << s << ',' << format_number(f.size) << ',' << format_number(finish)
            << "\n";
    }
    write_file(cmd.out_path, csv.str());

    out << "lower_bound " << format_number(lb) << "\n"
        << "achieved " << format_number(achieved) << "\n"
        << "ratio " << format_number(ratio) << "\n";
    return success;
}

struct instance_flags {
    std::string shape_name = "merging";
    int tasks = 6;
    int fan = 3;
    int processors = 3;
    int storages = 2;
    bool hetero = false;
};

void add_instance_flags(CLI::App* cmd, instance_flags& flags) {
    cmd->add_option("--shape", flags.shape_name, "linear | merging | emission | merging_emission | random");
    cmd->add_option("--tasks", flags.tasks, "Number of non-dummy tasks");
    cmd->add_option("--fan", flags.fan, "Branching factor");
    cmd->add_option("--processors", flags.processors, "Number of processors");
    cmd->add_option("--storages", flags.storages, "Number of storage sites");
    cmd->add_flag("--hetero", flags.hetero, "Heterogeneous execution times and bandwidths");
}

gen_spec make_gen_spec(const instance_flags& f, std::uint64_t seed) {
    const auto kind = parse_shape(f.shape_name);
    if (!kind) throw std::invalid_argument("unknown shape '" + f.shape_name + "'");
    gen_spec spec;
    spec.kind = *kind;
    spec.task_count = f.tasks;
    spec.fan = f.fan;
    spec.hetero = f.hetero;
    spec.seed = seed;
    return spec;
}

platform_spec make_platform_spec(const instance_flags& f, const gen_spec& g, std::uint64_t seed) {
    platform_spec spec;
    spec.processors = f.processors;
    spec.storages = f.storages;
    spec.hetero = f.hetero;
    spec.seed = seed;
    spec.exec_range = g.exec_range;
    return spec;
}

std::string instance_config(const instance_flags& f) {
    std::ostringstream s;
    s << "shape=" << f.shape_name << " tasks=" << f.tasks << " fan=" << f.fan << " processors=" << f.processors
      << " storages=" << f.storages << " hetero=" << (f.hetero ? 1 : 0);
    return s.str();
}

struct compare_cmd {
    instance_flags instance;
    ga_flags ga;
    int reps = 30;
    std::string out_path = "comparison.csv";
    std::string gnuplot_path;
};

int do_compare(const compare_cmd& cmd, std::ostream& out) {
    const std::uint64_t master = resolve_seed(cmd.ga.seed);
    if (cmd.reps < 1) throw std::invalid_argument("--reps must be at least 1");
    const gen_spec base = make_gen_spec(cmd.instance, master);
    base.validate();
    if (cmd.instance.tasks > oracle_options{}.max_tasks) {
        throw error(error_kind::too_large, std::to_string(cmd.instance.tasks) + " tasks exceed the oracle limit");
    }
    ga_params params{cmd.ga.population, cmd.ga.generations, cmd.ga.mutation_rate, master};
    params.validate();

    std::ostringstream csv, dat;
    const std::string header = "# dawsched compare " + instance_config(cmd.instance) + " reps=" +
                               std::to_string(cmd.reps) + " " + ga_config(params) + "\n";
    csv << header << "seed,shape,ga_makespan,opt_makespan,ratio\n";
    dat << header << "# rep ga_makespan opt_makespan ratio\n";
    int optimal_hits = 0;
    for (int rep = 0; rep < cmd.reps; ++rep) {
        const std::uint64_t inst_seed = derive_seed(master, static_cast<std::uint64_t>(rep));
        gen_spec spec = base;
        spec.seed = inst_seed;
        const workflow w = generate_workflow(spec);
        const platform p = generate_platform(w, make_platform_spec(cmd.instance, spec, derive_seed(inst_seed, 1)));
        require_valid(p, w);

        const oracle_result opt = optimal_makespan(w, p);
        ga_params rep_params = params;
        rep_params.seed = derive_seed(inst_seed, 2);
        const ga_result ga = run_ga(scheduling_problem(w, p), rep_params);
        const double ratio = opt.best_makespan > 0.0 ? ga.best_makespan / opt.best_makespan : 1.0;
        if (ga.best_makespan <= opt.best_makespan) ++optimal_hits;

        csv << inst_seed << ',' << to_string(spec.kind) << ',' << format_number(ga.best_makespan) << ','
            << format_number(opt.best_makespan) << ',' << format_number(ratio) << "\n";
        dat << rep << ' ' << format_number(ga.best_makespan) << ' ' << format_number(opt.best_makespan) << ' '
            << format_number(ratio) << "\n";
    }
    write_file(cmd.out_path, csv.str());
    if (!cmd.gnuplot_path.empty()) write_file(cmd.gnuplot_path, dat.str());

    out << "instances " << cmd.reps << "\n"
        << "ga_optimal " << optimal_hits << "\n"
        << "seed " << master << "\n";
    return success;
}

struct generate_cmd {
    instance_flags instance;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "instance";
};

int do_generate(const generate_cmd& cmd, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(cmd.seed);
    const gen_spec spec = make_gen_spec(cmd.instance, seed);
    const workflow w = generate_workflow(spec);
    const platform p = generate_platform(w, make_platform_spec(cmd.instance, spec, derive_seed(seed, 1)));
    const std::string provenance = "dawsched generate " + instance_config(cmd.instance) +
                                   " seed=" + std::to_string(seed);
    write_file(fs::path(cmd.out_dir) / "workflow.json", workflow_to_json(w.to_raw(), provenance));
    write_file(fs::path(cmd.out_dir) / "platform.json", platform_to_json(p, provenance));
    out << "tasks " << w.task_count() << "\n"
        << "seed " << seed << "\n";
    return success;
}

int exit_for(error_kind kind) {
    switch (kind) {
    case error_kind::no_route:
    case error_kind::unreachable_file: return routing_error;
    case error_kind::too_large: return size_limit;
    default: return input_error;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Data-aware genetic workflow scheduler", "dawsched"};
    app.require_subcommand(1);

    schedule_cmd sched;
    auto* s = app.add_subcommand("schedule", "Schedule a workflow onto a platform with the genetic algorithm");
    s->add_option("workflow", sched.workflow_path, "Workflow JSON")->required();
    s->add_option("platform", sched.platform_path, "Platform JSON")->required();
    s->add_option("--out", sched.out_dir, "Output directory");
    add_ga_flags(s, sched.ga);

    place_cmd place;
    auto* pl = app.add_subcommand("place", "Place stage-in files onto storage sites");
    pl->add_option("instance", place.instance_path, "Placement instance JSON")->required();
    pl->add_option("--out", place.out_path, "Placement CSV");

    compare_cmd cmp;
    auto* c = app.add_subcommand("compare", "Compare the genetic algorithm against the exhaustive optimum");
    add_instance_flags(c, cmp.instance);
    add_ga_flags(c, cmp.ga);
    c->add_option("--reps", cmp.reps, "Number of random instances");
    c->add_option("--out", cmp.out_path, "Comparison CSV");
    c->add_option("--gnuplot", cmp.gnuplot_path, "Optional gnuplot data file");

    generate_cmd gen;
    auto* g = app.add_subcommand("generate", "Write a generated workflow and platform");
    add_instance_flags(g, gen.instance);
    g->add_option("--seed", gen.seed, "Seed (overrides DAWSCHED_SEED)");
    g->add_option("--out", gen.out_dir, "Output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }

    try {
        if (s->parsed()) return do_schedule(sched, out);
        if (pl->parsed()) return do_place(place, out);
        if (c->parsed()) return do_compare(cmp, out);
        if (g->parsed()) return do_generate(gen, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return internal_failure;
    }
    return input_error;
}

} // namespace dawsched::cli
