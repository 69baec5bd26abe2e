#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lfroe/supernatural.hpp"

namespace lfroe {

using point = std::uint64_t;
using distance_t = std::uint64_t;

/// Canonical ultrametric model of a locally finite group truncated at depth N:
/// the points {0, ..., k_N - 1} with d(x, y) the least n such that x and y
/// lie in the same aligned interval of length k_n.
class BlockSpace {
public:
    /// Throws depth_exhausted if k_N does not fit in memory-indexable range.
    BlockSpace(Tower tower, level depth);

    const Tower& tower() const noexcept { return tower_; }
    level depth() const noexcept { return depth_; }
    std::uint64_t size() const noexcept { return orders_.back(); }

    /// k_n for n <= depth.
    std::uint64_t order(level n) const;

    friend bool operator==(const BlockSpace& a, const BlockSpace& b)
    {
        return a.tower_ == b.tower_ && a.depth_ == b.depth_;
    }

private:
    Tower tower_;
    level depth_ = 0;
    std::vector<std::uint64_t> orders_;
};

/// Finite metric space with integer distances, stored as a dense row-major
/// matrix.
class FiniteMetricSpace {
public:
    /// Validates symmetry, zero diagonal, positivity off the diagonal and the
    /// triangle inequality. Throws malformed_input.
    FiniteMetricSpace(std::size_t size, std::vector<distance_t> distances);

    /// Renders a block space, relabelled by `labels` (labels[x] is the index of
    /// block-space point x in the result). An empty span means the identity.
    static FiniteMetricSpace from_block_space(const BlockSpace& s, std::span<const std::size_t> labels = {});

    std::size_t size() const noexcept { return size_; }
    distance_t operator()(std::size_t x, std::size_t y) const noexcept { return d_[x * size_ + y]; }
    distance_t max_distance() const noexcept;
    const std::vector<distance_t>& matrix() const noexcept { return d_; }

private:
    struct trusted_tag {};
    FiniteMetricSpace(trusted_tag, std::size_t size, std::vector<distance_t> distances)
        : size_(size), d_(std::move(distances))
    {
    }

    std::size_t size_ = 0;
    std::vector<distance_t> d_;
};

struct PartitionBlock {
    std::vector<std::size_t> points; // ascending
    distance_t diameter = 0;

    std::size_t cardinality() const noexcept { return points.size(); }
    friend bool operator==(const PartitionBlock&, const PartitionBlock&) = default;
};

/// Blocks are pairwise disjoint, cover the space, and are sorted by least
/// element.
using Partition = std::vector<PartitionBlock>;

struct ProfileEntry {
    distance_t max_diameter = 0;
    std::size_t max_cardinality = 0;

    friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

distance_t distance(const BlockSpace& s, point x, point y);

/// n-components of a block space: the k_N / k_n aligned intervals of length
/// k_n, in increasing order.
Partition components(const BlockSpace& s, level n);

/// Equivalence classes of the chain relation generated by d(x, y) <= radius.
Partition r_components(const FiniteMetricSpace& m, distance_t radius);

/// Entry R (for R = 0 .. max distance) holds the largest diameter and the
/// largest cardinality among R-components.
std::vector<ProfileEntry> asdim_zero_profile(const FiniteMetricSpace& m);

/// Injective map into Z>=0 (standard metric) that carries every k-component
/// of m onto a k-component of the image, for every k. The lowest-index point
/// goes to 0; sibling components are laid out in order of least element,
/// each starting exactly `level` past the right end of its predecessor.
std::vector<std::uint64_t> embed_into_nonneg_integers(const FiniteMetricSpace& m);

} // namespace lfroe
