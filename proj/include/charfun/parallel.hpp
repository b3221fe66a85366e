// parallel.hpp -- OpenMP loop helpers with a serial reference path.
//
// Every kernel takes an Exec switch; Exec::serial runs the plain loop and is
// the reference the tests compare against. Reductions go through per-index
// partials combined in a fixed order, so results are identical (bitwise)
// between the two paths and independent of the thread count.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace charfun {

enum class Exec { serial, parallel };

template <class F>
void for_each_index(std::int64_t count, Exec exec, F&& fn) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    } else {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    }
}

// Deterministic reduction: partial per index, serial combine in index order.
template <class F>
double sum_over(std::int64_t count, Exec exec, F&& partial_of) {
    std::vector<double> partial(static_cast<std::size_t>(count));
    for_each_index(count, exec, [&](std::int64_t i) { partial[static_cast<std::size_t>(i)] = partial_of(i); });
    return std::accumulate(partial.begin(), partial.end(), 0.0);
}

template <class F>
double max_over(std::int64_t count, Exec exec, F&& partial_of) {
    std::vector<double> partial(static_cast<std::size_t>(count));
    for_each_index(count, exec, [&](std::int64_t i) { partial[static_cast<std::size_t>(i)] = partial_of(i); });
    double m = 0.0;
    for (double v : partial) m = v > m ? v : m;
    return m;
}

} // namespace charfun
