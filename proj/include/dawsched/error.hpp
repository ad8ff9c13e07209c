#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dawsched {

enum class error_kind {
    cyclic_workflow,
    invalid_workflow,
    shape_mismatch,
    unreachable_file,
    no_route,
    invalid_schedule,
    corrupt_chromosome,
    mismatch,
    too_large,
    parse_error,
};

std::string_view to_string(error_kind kind) noexcept;

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& message);

    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

} // namespace dawsched
