#pragma once

#include <filesystem>
#include <string>

#include "dawsched/generators.hpp"
#include "dawsched/placement.hpp"
#include "dawsched/platform.hpp"
#include "dawsched/workflow.hpp"

namespace dawsched {

// Parsers throw error(parse_error) carrying "<source>:<line>:<column>: ..." for
// syntax errors and "<source>: ..." for schema errors. Unknown keys are ignored.

// {"tasks": [{"id", "dummy"?, "stage_in": [{"file_id", "size"}], "stage_out": [{"file_id", "size", "dest"?}]}],
//  "edges": [{"from", "to", "size"}]}
raw_workflow parse_workflow(const std::string& text, const std::string& source = "<workflow>");

// {"processors", "storages", "exec_time", "bw_pp", "bw_sp"?, "bw_ps"?}; a missing
// stage-in or stage-out matrix defaults to the transpose of the other.
platform parse_platform(const std::string& text, const std::string& source = "<platform>");

// {"files": [{"id", "size", "dest"}], "bw_sp": [[...]]}
placement_instance parse_instance(const std::string& text, const std::string& source = "<instance>");

std::string workflow_to_json(const raw_workflow& w, const std::string& provenance = {});
std::string platform_to_json(const platform& p, const std::string& provenance = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Fixed six-decimal rendering used by every CSV writer.
std::string format_number(double v);

} // namespace dawsched
