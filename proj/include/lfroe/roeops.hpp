#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lfroe/bigint.hpp"
#include "lfroe/blockspace.hpp"
#include "lfroe/equivalence.hpp"
#include "lfroe/ktheory.hpp"

namespace lfroe {

/// Square sparse matrix over Q. Zero entries are never stored.
class SparseMatrix {
public:
    using index = std::uint64_t;
    using entry_map = std::map<std::pair<index, index>, rational>;

    SparseMatrix() = default;
    explicit SparseMatrix(index dim) : dim_(dim) {}

    static SparseMatrix identity(index dim);
    static SparseMatrix unit(index dim, index row, index col);

    index dim() const noexcept { return dim_; }
    const entry_map& entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }

    rational get(index row, index col) const;
    void set(index row, index col, const rational& value);

    rational trace() const;
    SparseMatrix adjoint() const;

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    index dim_ = 0;
    entry_map entries_;
};

/// P^2 = P = P* exactly.
bool is_projection(const SparseMatrix& p);

/// Finite-propagation operator on a block space truncation.
class PropagationOperator {
public:
    explicit PropagationOperator(BlockSpace space) : space_(std::move(space)), matrix_(space_.size()) {}
    PropagationOperator(BlockSpace space, SparseMatrix matrix);

    static PropagationOperator identity(const BlockSpace& space);
    static PropagationOperator unit(const BlockSpace& space, point row, point col);

    const BlockSpace& space() const noexcept { return space_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }

    friend bool operator==(const PropagationOperator&, const PropagationOperator&) = default;

private:
    BlockSpace space_;
    SparseMatrix matrix_;
};

/// Block-diagonal element of prod M_{k_n}(Q) restricted to the truncation:
/// one k_n x k_n block per level-n component.
struct BlockTuple {
    level n = 0;
    std::vector<SparseMatrix> blocks;

    friend bool operator==(const BlockTuple&, const BlockTuple&) = default;
};

distance_t propagation(const PropagationOperator& t);

PropagationOperator compose(const PropagationOperator& a, const PropagationOperator& b);
PropagationOperator add(const PropagationOperator& a, const PropagationOperator& b);
PropagationOperator adjoint(const PropagationOperator& a);

/// Throws not_block_diagonal when propagation(t) > n.
BlockTuple block_decompose(const PropagationOperator& t, level n);
PropagationOperator recompose(const BlockSpace& space, const BlockTuple& blocks);

/// Groups consecutive r_n blocks into one diagonal block of size k_{n+1}.
BlockTuple connecting_map(const Tower& t, level n, const BlockTuple& blocks);

/// Block traces. With require_projection every block must be a projection
/// (throws not_projection); traces are then ranks. A non-integral trace is
/// rejected with precondition_violation.
std::vector<big_int> trace_vector(const BlockTuple& blocks, bool require_projection);

/// Partial isometry v with v*v = p and vv* = q blockwise, or empty when the
/// trace vectors differ. Only diagonal 0/1 projections are supported; other
/// projections with matching traces raise unsupported_entries.
std::optional<BlockTuple> mvn_partial_isometry(const BlockTuple& p, const BlockTuple& q);

/// u T u* with u δ_x = δ_{f(x)}: the entry at (f(x1), f(x2)) is T(x1, x2).
/// The result lives on the target truncation of b.
PropagationOperator conjugate_by_bijection(const TowerBijection& b, const PropagationOperator& t);

/// K_0 class of a level-n projection tuple on a truncation, extended
/// periodically: each block contributes (rank, 0, ..., 0) of length k_n.
K0Class k0_class_of(const Tower& t, const BlockTuple& projections);

} // namespace lfroe
