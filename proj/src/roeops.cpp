#include "lfroe/roeops.hpp"

#include <algorithm>
#include <string>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

void require_same_space(const PropagationOperator& a, const PropagationOperator& b)
{
    if (!(a.space() == b.space())) throw context_mismatch("operators act on different block spaces");
}

bool is_diagonal_01(const SparseMatrix& m)
{
    return std::all_of(m.entries().begin(), m.entries().end(), [](const auto& kv) {
        return kv.first.first == kv.first.second && kv.second == 1;
    });
}

std::vector<SparseMatrix::index> diagonal_support(const SparseMatrix& m)
{
    std::vector<SparseMatrix::index> out;
    for (const auto& [rc, v] : m.entries()) out.push_back(rc.first);
    return out;
}

} // namespace

SparseMatrix SparseMatrix::identity(index dim)
{
    SparseMatrix m(dim);
    for (index i = 0; i < dim; ++i) m.entries_.emplace(std::pair{i, i}, rational(1));
    return m;
}

SparseMatrix SparseMatrix::unit(index dim, index row, index col)
{
    SparseMatrix m(dim);
    m.set(row, col, 1);
    return m;
}

rational SparseMatrix::get(index row, index col) const
{
    auto it = entries_.find({row, col});
    return it == entries_.end() ? rational(0) : it->second;
}

void SparseMatrix::set(index row, index col, const rational& value)
{
    if (row >= dim_ || col >= dim_) throw precondition_violation("matrix index out of range");
    if (value == 0) {
        entries_.erase({row, col});
    } else {
        entries_[{row, col}] = value;
    }
}

rational SparseMatrix::trace() const
{
    rational sum = 0;
    for (const auto& [rc, v] : entries_)
        if (rc.first == rc.second) sum += v;
    return sum;
}

SparseMatrix SparseMatrix::adjoint() const
{
    SparseMatrix out(dim_);
    for (const auto& [rc, v] : entries_) out.entries_.emplace(std::pair{rc.second, rc.first}, v);
    return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.dim_ != b.dim_) throw precondition_violation("matrix dimensions differ");
    SparseMatrix out = a;
    for (const auto& [rc, v] : b.entries_) out.set(rc.first, rc.second, out.get(rc.first, rc.second) + v);
    return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.dim_ != b.dim_) throw precondition_violation("matrix dimensions differ");
    SparseMatrix out(a.dim_);
    for (const auto& [ik, x] : a.entries_) {
        const auto k = ik.second;
        for (auto it = b.entries_.lower_bound({k, 0}); it != b.entries_.end() && it->first.first == k; ++it) {
            auto [slot, inserted] = out.entries_.try_emplace({ik.first, it->first.second}, 0);
            slot->second += x * it->second;
        }
    }
    std::erase_if(out.entries_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

bool is_projection(const SparseMatrix& p) { return p == p.adjoint() && p * p == p; }

PropagationOperator::PropagationOperator(BlockSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix))
{
    if (matrix_.dim() != space_.size()) throw precondition_violation("matrix size differs from the block space");
}

PropagationOperator PropagationOperator::identity(const BlockSpace& space)
{
    return PropagationOperator(space, SparseMatrix::identity(space.size()));
}

PropagationOperator PropagationOperator::unit(const BlockSpace& space, point row, point col)
{
    return PropagationOperator(space, SparseMatrix::unit(space.size(), row, col));
}

distance_t propagation(const PropagationOperator& t)
{
    distance_t prop = 0;
    for (const auto& [rc, v] : t.matrix().entries()) prop = std::max(prop, distance(t.space(), rc.first, rc.second));
    return prop;
}

PropagationOperator compose(const PropagationOperator& a, const PropagationOperator& b)
{
    require_same_space(a, b);
    return PropagationOperator(a.space(), a.matrix() * b.matrix());
}

PropagationOperator add(const PropagationOperator& a, const PropagationOperator& b)
{
    require_same_space(a, b);
    return PropagationOperator(a.space(), a.matrix() + b.matrix());
}

PropagationOperator adjoint(const PropagationOperator& a) { return PropagationOperator(a.space(), a.matrix().adjoint()); }

BlockTuple block_decompose(const PropagationOperator& t, level n)
{
    const BlockSpace& space = t.space();
    const std::uint64_t k = space.order(n);
    BlockTuple out{n, std::vector<SparseMatrix>(space.size() / k, SparseMatrix(k))};
    for (const auto& [rc, v] : t.matrix().entries()) {
        const auto [row, col] = rc;
        if (row / k != col / k) {
            throw not_block_diagonal("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                                     ") crosses level-" + std::to_string(n) + " blocks");
        }
        out.blocks[row / k].set(row % k, col % k, v);
    }
    return out;
}

PropagationOperator recompose(const BlockSpace& space, const BlockTuple& blocks)
{
    const std::uint64_t k = space.order(blocks.n);
    if (blocks.blocks.size() != space.size() / k) throw precondition_violation("block count differs from k_N / k_n");
    SparseMatrix m(space.size());
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
        if (blocks.blocks[b].dim() != k) throw precondition_violation("block has the wrong size");
        for (const auto& [rc, v] : blocks.blocks[b].entries()) m.set(b * k + rc.first, b * k + rc.second, v);
    }
    return PropagationOperator(space, std::move(m));
}

BlockTuple connecting_map(const Tower& t, level n, const BlockTuple& blocks)
{
    if (blocks.n != n) throw precondition_violation("block tuple is not at level " + std::to_string(n));
    const big_int r_big = t.ratio(n);
    const std::uint64_t r = to_u64(r_big);
    if (blocks.blocks.size() % r != 0) {
        throw precondition_violation("level " + std::to_string(n + 1) + " is beyond the truncation");
    }
    const std::uint64_t k = blocks.blocks.empty() ? to_u64(tower_order(t, n)) : blocks.blocks.front().dim();
    BlockTuple out{n + 1, std::vector<SparseMatrix>(blocks.blocks.size() / r, SparseMatrix(k * r))};
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
        const std::uint64_t offset = (b % r) * k;
        for (const auto& [rc, v] : blocks.blocks[b].entries()) {
            out.blocks[b / r].set(offset + rc.first, offset + rc.second, v);
        }
    }
    return out;
}

std::vector<big_int> trace_vector(const BlockTuple& blocks, bool require_projection)
{
    std::vector<big_int> out;
    out.reserve(blocks.blocks.size());
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
        const SparseMatrix& block = blocks.blocks[b];
        if (require_projection && !is_projection(block)) {
            throw not_projection("block " + std::to_string(b) + " is not a projection");
        }
        const rational tr = block.trace();
        if (tr.get_den() != 1) throw precondition_violation("block " + std::to_string(b) + " has non-integral trace");
        out.push_back(tr.get_num());
    }
    return out;
}

std::optional<BlockTuple> mvn_partial_isometry(const BlockTuple& p, const BlockTuple& q)
{
    if (p.n != q.n || p.blocks.size() != q.blocks.size()) {
        throw precondition_violation("projection tuples live at different levels");
    }
    if (trace_vector(p, true) != trace_vector(q, true)) return std::nullopt;

    BlockTuple v{p.n, {}};
    v.blocks.reserve(p.blocks.size());
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const SparseMatrix& pb = p.blocks[b];
        const SparseMatrix& qb = q.blocks[b];
        if (!is_diagonal_01(pb) || !is_diagonal_01(qb)) {
            throw unsupported_entries("block " + std::to_string(b) + " is not a diagonal 0/1 projection");
        }
        const auto from = diagonal_support(pb);
        const auto to = diagonal_support(qb);
        SparseMatrix vb(pb.dim());
        for (std::size_t i = 0; i < from.size(); ++i) vb.set(to[i], from[i], 1);
        v.blocks.push_back(std::move(vb));
    }
    return v;
}

PropagationOperator conjugate_by_bijection(const TowerBijection& b, const PropagationOperator& t)
{
    if (!(t.space().tower() == b.source)) throw context_mismatch("operator does not live over the bijection's source");
    const level target_depth = b.levels.empty() ? 0 : b.levels.back().target;
    BlockSpace target(b.target, target_depth);
    SparseMatrix m(target.size());
    for (const auto& [rc, v] : t.matrix().entries()) {
        if (rc.first >= b.map.size() || rc.second >= b.map.size()) {
            throw depth_exhausted("operator support escapes the bijection's truncation");
        }
        m.set(b.map[rc.first], b.map[rc.second], v);
    }
    return PropagationOperator(std::move(target), std::move(m));
}

K0Class k0_class_of(const Tower& t, const BlockTuple& projections)
{
    const auto ranks = trace_vector(projections, true);
    const std::uint64_t k = to_u64(tower_order(t, projections.n));
    std::vector<big_int> period(ranks.size() * k, 0);
    for (std::size_t b = 0; b < ranks.size(); ++b) period[b * k] = ranks[b];
    if (period.empty()) period.push_back(0);
    return K0Class(t, PeriodicSequence({}, std::move(period)));
}

} // namespace lfroe
