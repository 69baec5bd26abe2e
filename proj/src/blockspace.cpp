#include "lfroe/blockspace.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

constexpr std::uint64_t max_points = std::uint64_t{1} << 32;
constexpr distance_t max_profile_radius = distance_t{1} << 24;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        std::size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

distance_t diameter_of(const FiniteMetricSpace& m, const std::vector<std::size_t>& pts)
{
    distance_t diam = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, m(pts[i], pts[j]));
    return diam;
}

// Groups `pts` (ascending) into classes of the chain relation d <= radius.
// Classes come out sorted by least element.
std::vector<std::vector<std::size_t>> chain_classes(const FiniteMetricSpace& m, const std::vector<std::size_t>& pts,
                                                    distance_t radius)
{
    UnionFind uf(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (m(pts[i], pts[j]) <= radius) uf.unite(i, j);

    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> slot(pts.size(), SIZE_MAX);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t root = uf.find(i);
        if (slot[root] == SIZE_MAX) {
            slot[root] = classes.size();
            classes.emplace_back();
        }
        classes[slot[root]].push_back(pts[i]);
    }
    return classes;
}

// Largest edge of a minimum spanning tree: the least radius at which `pts`
// is chain connected.
distance_t bottleneck(const FiniteMetricSpace& m, const std::vector<std::size_t>& pts)
{
    const std::size_t n = pts.size();
    std::vector<distance_t> best(n, UINT64_MAX);
    std::vector<bool> in_tree(n, false);
    best[0] = 0;
    distance_t widest = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t next = SIZE_MAX;
        for (std::size_t i = 0; i < n; ++i)
            if (!in_tree[i] && (next == SIZE_MAX || best[i] < best[next])) next = i;
        in_tree[next] = true;
        widest = std::max(widest, best[next]);
        for (std::size_t i = 0; i < n; ++i)
            if (!in_tree[i]) best[i] = std::min(best[i], m(pts[next], pts[i]));
    }
    return widest;
}

// Places the component `pts` so that its least point lands on `base`; returns
// the right-most image point.
std::uint64_t place(const FiniteMetricSpace& m, const std::vector<std::size_t>& pts, std::uint64_t base,
                    std::vector<std::uint64_t>& image)
{
    if (pts.size() == 1) {
        image[pts.front()] = base;
        return base;
    }
    const distance_t merge_level = bottleneck(m, pts);
    std::uint64_t cursor = base;
    std::uint64_t right_end = base;
    for (const auto& child : chain_classes(m, pts, merge_level - 1)) {
        right_end = place(m, child, cursor, image);
        cursor = right_end + merge_level;
    }
    return right_end;
}

} // namespace

BlockSpace::BlockSpace(Tower tower, level depth) : tower_(std::move(tower)), depth_(depth)
{
    orders_.reserve(depth + 1);
    big_int k = 1;
    orders_.push_back(1);
    for (level n = 0; n < depth; ++n) {
        k *= tower_.ratio(n);
        if (k > max_points) {
            throw depth_exhausted("block space of depth " + std::to_string(depth) + " exceeds 2^32 points");
        }
        orders_.push_back(to_u64(k));
    }
}

std::uint64_t BlockSpace::order(level n) const
{
    if (n > depth_) throw precondition_violation("level " + std::to_string(n) + " exceeds block space depth");
    return orders_[n];
}

FiniteMetricSpace::FiniteMetricSpace(std::size_t size, std::vector<distance_t> distances)
    : size_(size), d_(std::move(distances))
{
    if (size_ == 0) throw malformed_input("metric space must have at least one point");
    if (d_.size() != size_ * size_) throw malformed_input("distance matrix has the wrong number of entries");
    for (std::size_t x = 0; x < size_; ++x) {
        if ((*this)(x, x) != 0) throw malformed_input("nonzero diagonal entry at " + std::to_string(x));
        for (std::size_t y = x + 1; y < size_; ++y) {
            if ((*this)(x, y) != (*this)(y, x)) throw malformed_input("distance matrix is not symmetric");
            if ((*this)(x, y) == 0) throw malformed_input("distinct points at distance 0");
        }
    }
    for (std::size_t x = 0; x < size_; ++x)
        for (std::size_t y = 0; y < size_; ++y)
            for (std::size_t z = 0; z < size_; ++z)
                if ((*this)(x, z) > (*this)(x, y) + (*this)(y, z))
                    throw malformed_input("triangle inequality fails at (" + std::to_string(x) + ", " +
                                          std::to_string(y) + ", " + std::to_string(z) + ")");
}

FiniteMetricSpace FiniteMetricSpace::from_block_space(const BlockSpace& s, std::span<const std::size_t> labels)
{
    const std::size_t n = s.size();
    if (!labels.empty() && labels.size() != n) throw precondition_violation("relabelling has the wrong length");
    std::vector<distance_t> d(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t lx = labels.empty() ? x : labels[x];
            const std::size_t ly = labels.empty() ? y : labels[y];
            d[lx * n + ly] = distance(s, x, y);
        }
    }
    return FiniteMetricSpace(trusted_tag{}, n, std::move(d));
}

distance_t FiniteMetricSpace::max_distance() const noexcept { return *std::max_element(d_.begin(), d_.end()); }

distance_t distance(const BlockSpace& s, point x, point y)
{
    if (x >= s.size() || y >= s.size()) throw precondition_violation("point outside the block space");
    level n = 0;
    while (x / s.order(n) != y / s.order(n)) ++n;
    return n;
}

Partition components(const BlockSpace& s, level n)
{
    const std::uint64_t k = s.order(n);
    Partition out;
    out.reserve(s.size() / k);
    for (std::uint64_t start = 0; start < s.size(); start += k) {
        PartitionBlock block;
        block.points.resize(k);
        std::iota(block.points.begin(), block.points.end(), start);
        block.diameter = distance(s, start, start + k - 1);
        out.push_back(std::move(block));
    }
    return out;
}

Partition r_components(const FiniteMetricSpace& m, distance_t radius)
{
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    Partition out;
    for (auto& cls : chain_classes(m, all, radius)) {
        PartitionBlock block;
        block.diameter = diameter_of(m, cls);
        block.points = std::move(cls);
        out.push_back(std::move(block));
    }
    return out;
}

std::vector<ProfileEntry> asdim_zero_profile(const FiniteMetricSpace& m)
{
    const distance_t top = m.max_distance();
    if (top > max_profile_radius) throw depth_exhausted("profile radius range too large");

    // The partition only changes at radii that occur as distances.
    std::vector<distance_t> breakpoints(m.matrix().begin(), m.matrix().end());
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::vector<ProfileEntry> profile(top + 1);
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        ProfileEntry entry;
        for (const auto& block : r_components(m, breakpoints[i])) {
            entry.max_diameter = std::max(entry.max_diameter, block.diameter);
            entry.max_cardinality = std::max(entry.max_cardinality, block.cardinality());
        }
        const distance_t stop = i + 1 < breakpoints.size() ? breakpoints[i + 1] : top + 1;
        std::fill(profile.begin() + breakpoints[i], profile.begin() + stop, entry);
    }
    return profile;
}

std::vector<std::uint64_t> embed_into_nonneg_integers(const FiniteMetricSpace& m)
{
    std::vector<std::uint64_t> image(m.size());
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    place(m, all, 0, image);
    return image;
}

} // namespace lfroe
