#pragma once

#include <cstddef>
#include <span>

namespace flatlab {

// Fixed-order pairwise (tree) summation. The split points depend only on the
// length, so the result is identical no matter how the values were produced.
template <typename T>
T pairwise_sum(std::span<const T> values) {
    constexpr std::size_t leaf = 16;
    if (values.size() <= leaf) {
        T acc{};
        for (const T& v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_mean(std::span<const T> values) {
    return values.empty() ? T{} : pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace flatlab
