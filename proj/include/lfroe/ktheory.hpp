#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lfroe/bigint.hpp"
#include "lfroe/equivalence.hpp"
#include "lfroe/supernatural.hpp"

namespace lfroe {

/// Eventually periodic integer sequence m_0, m_1, ...: the prefix, then the
/// period repeated forever. Stored in canonical form (primitive period,
/// shortest prefix), so equal sequences have equal representations.
class PeriodicSequence {
public:
    PeriodicSequence() : PeriodicSequence({}, {big_int(0)}) {}
    /// Throws malformed_input if the period is empty.
    PeriodicSequence(std::vector<big_int> prefix, std::vector<big_int> period);

    static PeriodicSequence constant(const big_int& value) { return PeriodicSequence({}, {value}); }

    const std::vector<big_int>& prefix() const noexcept { return prefix_; }
    const std::vector<big_int>& period() const noexcept { return period_; }

    const big_int& at(std::uint64_t i) const;
    /// m_0 + ... + m_{x-1}.
    big_int partial_sum(const big_int& x) const;
    const big_int& period_sum() const noexcept { return period_sum_; }
    /// Largest absolute entry.
    big_int entry_bound() const;
    bool is_finitely_supported() const noexcept { return period_.size() == 1 && period_[0] == 0; }

    friend PeriodicSequence operator+(const PeriodicSequence& a, const PeriodicSequence& b);
    friend PeriodicSequence operator-(const PeriodicSequence& a);
    friend PeriodicSequence operator-(const PeriodicSequence& a, const PeriodicSequence& b) { return a + (-b); }
    friend PeriodicSequence operator*(const big_int& c, const PeriodicSequence& a);

    friend bool operator==(const PeriodicSequence& a, const PeriodicSequence& b)
    {
        return a.prefix_ == b.prefix_ && a.period_ == b.period_;
    }

private:
    std::vector<big_int> prefix_;
    std::vector<big_int> period_;
    std::vector<big_int> prefix_cumulative_; // size prefix + 1
    std::vector<big_int> period_cumulative_; // size period + 1
    big_int period_sum_;
};

/// Element of l^inf(N, Z) / H_Γ for an infinite tower Γ, represented by an
/// eventually periodic sequence.
class K0Class {
public:
    /// Throws precondition_violation for a finite context.
    K0Class(Tower context, PeriodicSequence sequence);

    const Tower& context() const noexcept { return context_; }
    const PeriodicSequence& sequence() const noexcept { return sequence_; }

    /// Representatives are compared literally; use k0_equal for the class.
    friend bool operator==(const K0Class&, const K0Class&) = default;

private:
    Tower context_;
    PeriodicSequence sequence_;
};

/// K_0 of a finite tower: (Z, [1] = group order).
struct FiniteK0 {
    big_int rank = 1;
    big_int unit_rank = 1;

    friend bool operator==(const FiniteK0&, const FiniteK0&) = default;
};

struct PositivityResult {
    bool positive = false;
    /// Least level at which every block sum is nonnegative.
    std::optional<level> witness_level;
    /// Pointwise nonnegative representative, each witness block replaced by
    /// (block sum, 0, ..., 0). Only filled on request and when small enough.
    std::optional<K0Class> representative;
};

K0Class k0_unit(const Tower& t);
K0Class k0_zero(const Tower& t);
FiniteK0 k0_finite(const Tower& t);

K0Class k0_add(const K0Class& a, const K0Class& b);
K0Class k0_neg(const K0Class& a);
K0Class k0_scale(const big_int& c, const K0Class& a);

/// Sum of the j-th aligned block of length k in d.
big_int block_sum(const PeriodicSequence& d, const big_int& k, const big_int& j);

/// d ∈ H^(n): every aligned k_n-block of d sums to zero.
bool h_membership(const Tower& t, const K0Class& d, level n);

/// Level n* at which membership of d in H is decided: the least n with
/// gcd(k_n, q) stable and k_n >= s + q (s, q: prefix and period lengths).
level decision_level(const Tower& t, const PeriodicSequence& d);

bool k0_equal(const K0Class& a, const K0Class& b);

PositivityResult k0_positive(const K0Class& a, bool want_representative = false);

/// Witness w with p^r w = [1]; empty when p^r does not divide s(t). Throws
/// precondition_violation for non-prime p.
std::optional<K0Class> unit_divide(const Tower& t, const big_int& prime, std::uint64_t exponent);

/// Level-n image: the sequence of aligned k_n-block sums (the composite of the
/// first n block-summation maps).
PeriodicSequence alpha_iterate(const Tower& t, level n, const PeriodicSequence& v);

/// One block-summation step on a finite vector: groups of r_n consecutive
/// entries are summed. The length must be a multiple of r_n.
std::vector<big_int> alpha_step(const Tower& t, level n, std::span<const big_int> v);

bool k0_iso_exists(const Tower& a, const Tower& b);
bool k0_groups_abstractly_iso(const Tower& a, const Tower& b);

/// Relocates a finitely supported class along b: the entry at x moves to
/// map(x). Throws depth_exhausted if the support leaves the truncation.
K0Class transport_class(const TowerBijection& b, const K0Class& a);

} // namespace lfroe
