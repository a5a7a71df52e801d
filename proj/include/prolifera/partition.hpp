#pragma once

// Integer partition enumeration, the combinatorial substrate of the
// structure catalogs.

#include <stdexcept>
#include <vector>

namespace prolifera {

/// A partition is a multiset of positive parts, stored sorted ascending.
using Partition = std::vector<int>;

namespace detail {

inline void partitions_rec(int total, int max_part, Partition& prefix,
                           std::vector<Partition>& out) {
    if (total == 0) {
        Partition p(prefix.rbegin(), prefix.rend());  // ascending
        out.push_back(std::move(p));
        return;
    }
    for (int part = std::min(total, max_part); part >= 1; --part) {
        prefix.push_back(part);
        partitions_rec(total - part, part, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// All partitions of total into parts <= max_part, each exactly once.
/// partitions(0, m) is the single empty partition.
inline std::vector<Partition> partitions(int total, int max_part) {
    if (total < 0)
        throw std::invalid_argument("partitions: total must be >= 0");
    std::vector<Partition> out;
    if (total == 0) {
        out.push_back({});
        return out;
    }
    if (max_part < 1)
        return out;
    Partition prefix;
    detail::partitions_rec(total, max_part, prefix, out);
    return out;
}

inline std::vector<Partition> partitions(int total) { return partitions(total, total); }

}  // namespace prolifera
