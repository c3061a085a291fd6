#include "mca/options.hpp"

#include "mca/errors.hpp"

#include <algorithm>

namespace mca {

void Counters::raise(const std::string & key, std::uint64_t value)
{
    auto & slot = _values[key];
    slot = std::max(slot, value);
}

auto Counters::get(const std::string & key) const -> std::uint64_t
{
    const auto it = _values.find(key);
    return it == _values.end() ? 0 : it->second;
}

void DeadlineGuard::check_now() const
{
    if (_deadline && Clock::now() >= *_deadline)
        throw Timeout("deadline exceeded");
}

}
