#include "sclat/multi_index.hpp"

#include "sclat/errors.hpp"

#include <numeric>

namespace sclat {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
        if (e < 0) throw BadParameter("multi-index entries must be nonnegative");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }

MultiIndex MultiIndex::unit(int n, int j) {
    if (j < 0 || j >= n) throw BadParameter("unit multi-index: axis out of range");
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0); }

std::uint64_t MultiIndex::factorial() const {
    std::uint64_t f = 1;
    for (int e : entries_)
        for (int i = 2; i <= e; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(entries_[j]);
    }
    return s + ")";
}

namespace {

void enumerate(int n, int axis, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        cur[static_cast<std::size_t>(axis)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(axis)] = e;
        enumerate(n, axis + 1, remaining - e, cur, out);
    }
}

} // namespace

std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
    if (n < 1 || order < 0) throw BadParameter("multi_indices_of_order: bad arguments");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    enumerate(n, 0, order, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    for (int o = 0; o <= max_order; ++o) {
        auto level = multi_indices_of_order(n, o);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::int64_t falling_factorial(std::int64_t x, int k) {
    std::int64_t r = 1;
    for (int l = 0; l < k; ++l) r *= (x - l);
    return r;
}

} // namespace sclat
