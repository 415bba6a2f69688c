#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace sclat {

/// Multi-index α = (α₁, …, αₙ) with nonnegative entries.
class MultiIndex {
public:
    MultiIndex() = default;
    /// Throws BadParameter on a negative entry.
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    /// α = 0 in n dimensions.
    static MultiIndex zero(int n);
    /// The unit vector v_j in n dimensions.
    static MultiIndex unit(int n, int j);

    int dim() const noexcept { return static_cast<int>(entries_.size()); }
    int operator[](int j) const { return entries_.at(static_cast<std::size_t>(j)); }
    const std::vector<int>& entries() const noexcept { return entries_; }

    /// |α| = Σ α_j.
    int order() const noexcept;
    /// α! computed in exact integer arithmetic.
    std::uint64_t factorial() const;

    bool operator==(const MultiIndex& o) const noexcept { return entries_ == o.entries_; }
    bool operator<(const MultiIndex& o) const noexcept { return entries_ < o.entries_; }

    /// "(1,0,2)".
    std::string str() const;

private:
    std::vector<int> entries_;
};

/// All multi-indices in n dimensions with |α| = order, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int n, int order);
/// All multi-indices in n dimensions with |α| ≤ max_order, grouped by order.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

/// Falling factorial x(x−1)…(x−k+1) in exact integer arithmetic.
std::int64_t falling_factorial(std::int64_t x, int k);

} // namespace sclat
