#include "dawsched/error.hpp"

namespace dawsched {

std::string_view to_string(error_kind kind) noexcept {
    switch (kind) {
    case error_kind::cyclic_workflow: return "CyclicWorkflow";
    case error_kind::invalid_workflow: return "InvalidWorkflow";
    case error_kind::shape_mismatch: return "ShapeMismatch";
    case error_kind::unreachable_file: return "UnreachableFile";
    case error_kind::no_route: return "NoRoute";
    case error_kind::invalid_schedule: return "InvalidSchedule";
    case error_kind::corrupt_chromosome: return "CorruptChromosome";
    case error_kind::mismatch: return "Mismatch";
    case error_kind::too_large: return "TooLarge";
    case error_kind::parse_error: return "ParseError";
    }
    return "Unknown";
}

error::error(error_kind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

} // namespace dawsched
