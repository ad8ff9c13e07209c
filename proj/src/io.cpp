#include "dawsched/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dawsched/error.hpp"

namespace dawsched {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw error(error_kind::parse_error,
                    source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

[[noreturn]] void schema(const std::string& source, const std::string& msg) {
    throw error(error_kind::parse_error, source + ": " + msg);
}

const json& field(const json& obj, const char* key, const std::string& source, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) schema(source, where + " lacks \"" + key + "\"");
    return obj.at(key);
}

double number(const json& v, const std::string& source, const std::string& where) {
    if (!v.is_number()) schema(source, where + " must be a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& source, const std::string& where) {
    if (!v.is_number_integer()) schema(source, where + " must be an integer");
    return v.get<int>();
}

std::string identifier(const json& v, const std::string& source, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    schema(source, where + " must be a string or integer");
}

matrix parse_matrix(const json& v, const std::string& source, const std::string& name) {
    if (!v.is_array()) schema(source, name + " must be an array of rows");
    matrix m;
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (!v[r].is_array()) schema(source, name + " row " + std::to_string(r + 1) + " must be an array");
        std::vector<double> row;
        for (const auto& x : v[r]) row.push_back(number(x, source, name + " entry"));
        m.push_back(std::move(row));
    }
    return m;
}

matrix transpose(const matrix& m, std::size_t cols_if_empty) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m.front().size() : cols_if_empty;
    matrix t(cols, std::vector<double>(rows, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols && c < m[r].size(); ++c) t[c][r] = m[r][c];
    }
    return t;
}

std::vector<file_ref> parse_files(const json& v, const std::string& source, const std::string& where,
                                  bool allow_dest) {
    if (!v.is_array()) schema(source, where + " must be an array");
    std::vector<file_ref> out;
    for (const auto& f : v) {
        file_ref ref;
        ref.file_id = identifier(field(f, "file_id", source, where), source, where + " file_id");
        ref.size = number(field(f, "size", source, where), source, where + " size");
        if (ref.size < 0.0) schema(source, where + " file '" + ref.file_id + "' has negative size");
        if (allow_dest && f.contains("dest")) ref.dest = integer(f.at("dest"), source, where + " dest");
        out.push_back(std::move(ref));
    }
    return out;
}

json files_to_json(const std::vector<file_ref>& files) {
    json arr = json::array();
    for (const auto& f : files) {
        json o{{"file_id", f.file_id}, {"size", f.size}};
        if (f.dest) o["dest"] = *f.dest;
        arr.push_back(std::move(o));
    }
    return arr;
}

} // namespace

raw_workflow parse_workflow(const std::string& text, const std::string& source) {
    const json doc = parse_json(text, source);
    raw_workflow w;
    const json& tasks = field(doc, "tasks", source, "workflow");
    if (!tasks.is_array()) schema(source, "\"tasks\" must be an array");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const json& t = tasks[i];
        const std::string where = "task #" + std::to_string(i + 1);
        task out;
        out.id = integer(field(t, "id", source, where), source, where + " id");
        if (t.contains("dummy")) {
            if (!t.at("dummy").is_boolean()) schema(source, where + " dummy must be a boolean");
            out.is_dummy = t.at("dummy").get<bool>();
        }
        if (t.contains("stage_in")) out.stage_in = parse_files(t.at("stage_in"), source, where + " stage_in", false);
        if (t.contains("stage_out")) out.stage_out = parse_files(t.at("stage_out"), source, where + " stage_out", true);
        w.tasks.push_back(std::move(out));
    }
    if (doc.contains("edges")) {
        const json& edges = doc.at("edges");
        if (!edges.is_array()) schema(source, "\"edges\" must be an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string where = "edge #" + std::to_string(i + 1);
            edge e;
            e.from = integer(field(edges[i], "from", source, where), source, where + " from");
            e.to = integer(field(edges[i], "to", source, where), source, where + " to");
            e.size = edges[i].contains("size") ? number(edges[i].at("size"), source, where + " size") : 0.0;
            w.edges.push_back(e);
        }
    }
    return w;
}

platform parse_platform(const std::string& text, const std::string& source) {
    const json doc = parse_json(text, source);
    platform p;
    p.processors = integer(field(doc, "processors", source, "platform"), source, "processors");
    p.storages = doc.contains("storages") ? integer(doc.at("storages"), source, "storages") : 0;
    if (p.processors < 1) schema(source, "processors must be at least 1");
    if (p.storages < 0) schema(source, "storages must be non-negative");
    p.exec_time = parse_matrix(field(doc, "exec_time", source, "platform"), source, "exec_time");
    if (doc.contains("bw_pp")) {
        p.bw_pp = parse_matrix(doc.at("bw_pp"), source, "bw_pp");
    } else if (p.processors == 1) {
        p.bw_pp = {{0.0}};
    } else {
        schema(source, "platform lacks \"bw_pp\"");
    }
    const bool has_sp = doc.contains("bw_sp");
    const bool has_ps = doc.contains("bw_ps");
    if (has_sp) p.bw_sp = parse_matrix(doc.at("bw_sp"), source, "bw_sp");
    if (has_ps) p.bw_ps = parse_matrix(doc.at("bw_ps"), source, "bw_ps");
    if (has_sp && !has_ps) p.bw_ps = transpose(p.bw_sp, static_cast<std::size_t>(p.processors));
    if (has_ps && !has_sp) p.bw_sp = transpose(p.bw_ps, static_cast<std::size_t>(p.storages));
    if (!has_sp && !has_ps) {
        if (p.storages > 0) schema(source, "platform with storages needs \"bw_sp\" or \"bw_ps\"");
        p.bw_ps.assign(static_cast<std::size_t>(p.processors), {});
    }
    return p;
}

placement_instance parse_instance(const std::string& text, const std::string& source) {
    const json doc = parse_json(text, source);
    placement_instance inst;
    const json& files = field(doc, "files", source, "instance");
    if (!files.is_array()) schema(source, "\"files\" must be an array");
    for (std::size_t i = 0; i < files.size(); ++i) {
        const std::string where = "file #" + std::to_string(i + 1);
        placement_file f;
        f.id = identifier(field(files[i], "id", source, where), source, where + " id");
        f.size = number(field(files[i], "size", source, where), source, where + " size");
        f.dest = integer(field(files[i], "dest", source, where), source, where + " dest");
        inst.files.push_back(std::move(f));
    }
    inst.bw_sp = parse_matrix(field(doc, "bw_sp", source, "instance"), source, "bw_sp");
    return inst;
}

std::string workflow_to_json(const raw_workflow& w, const std::string& provenance) {
    json doc;
    if (!provenance.empty()) doc["generated_by"] = provenance;
    json tasks = json::array();
    for (const auto& t : w.tasks) {
        json o{{"id", t.id}, {"stage_in", files_to_json(t.stage_in)}, {"stage_out", files_to_json(t.stage_out)}};
        if (t.is_dummy) o["dummy"] = true;
        tasks.push_back(std::move(o));
    }
    json edges = json::array();
    for (const auto& e : w.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"size", e.size}});
    doc["tasks"] = std::move(tasks);
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

std::string platform_to_json(const platform& p, const std::string& provenance) {
    json doc;
    if (!provenance.empty()) doc["generated_by"] = provenance;
    doc["processors"] = p.processors;
    doc["storages"] = p.storages;
    doc["exec_time"] = p.exec_time;
    doc["bw_pp"] = p.bw_pp;
    doc["bw_sp"] = p.bw_sp;
    doc["bw_ps"] = p.bw_ps;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(error_kind::parse_error, path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot write file");
    out << content;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace dawsched
