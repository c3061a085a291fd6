#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace mca {

/// Named visit/size counters filled by the solvers. Keys are stable and
/// documented next to each solver.
class Counters
{
public:
    void add(const std::string & key, std::uint64_t amount = 1) { _values[key] += amount; }
    void raise(const std::string & key, std::uint64_t value);
    void set(const std::string & key, std::uint64_t value) { _values[key] = value; }

    [[nodiscard]] auto get(const std::string & key) const -> std::uint64_t;
    [[nodiscard]] auto values() const noexcept -> const std::map<std::string, std::uint64_t> & { return _values; }

private:
    std::map<std::string, std::uint64_t> _values;
};

/// Practical size guards; each solver refuses larger inputs with GuardExceeded.
struct Limits
{
    int brute_max_vertices = 22;
    int colors_max = 20;
    int difficult_max = 24;
    int treewidth_max_lc = 16;
    int treewidth_max_width = 10;
};

using Clock = std::chrono::steady_clock;

struct SolveOptions
{
    Limits limits;
    std::optional<Clock::time_point> deadline;
    Counters * counters = nullptr;
    /// Treewidth solver: use the exhaustive elimination-order search instead
    /// of min-fill (only for hierarchies with at most 16 colors).
    bool exact_width = false;
};

/// Throws Timeout once the deadline has passed. Polls the clock every
/// `stride` calls to keep the check out of inner-loop profiles.
class DeadlineGuard
{
public:
    explicit DeadlineGuard(const std::optional<Clock::time_point> & deadline, std::uint32_t stride = 1024) :
        _deadline(deadline),
        _stride(stride)
    {
    }

    void poll()
    {
        if (_deadline && ++_calls % _stride == 0)
            check_now();
    }

    void check_now() const;

private:
    std::optional<Clock::time_point> _deadline;
    std::uint32_t _stride;
    std::uint32_t _calls = 0;
};

}
