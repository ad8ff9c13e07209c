#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dawsched {

using task_id = int;
using processor_id = int;
using storage_id = int;

// Dense per-task storage addressed by 1-based task id.
template <class T>
class task_vector {
public:
    task_vector() = default;
    explicit task_vector(std::size_t task_count, const T& value = T{}) : data_(task_count, value) {}

    T& operator[](task_id id) {
        assert(id >= 1 && static_cast<std::size_t>(id) <= data_.size());
        return data_[static_cast<std::size_t>(id - 1)];
    }
    const T& operator[](task_id id) const {
        assert(id >= 1 && static_cast<std::size_t>(id) <= data_.size());
        return data_[static_cast<std::size_t>(id - 1)];
    }

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    const std::vector<T>& values() const noexcept { return data_; }

    friend bool operator==(const task_vector&, const task_vector&) = default;

private:
    std::vector<T> data_;
};

} // namespace dawsched
