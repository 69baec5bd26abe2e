#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lfroe/bigint.hpp"

namespace lfroe {

using level = std::size_t;

/// Order tower 1 = k_0 | k_1 | k_2 | ... of a countable locally finite group,
/// stored as the ratio stream r_n = k_{n+1} / k_n: a finite prefix followed by
/// a tail that repeats forever. An empty tail denotes a finite group.
///
/// The stream is kept in a canonical form: ratio-1 entries are dropped, the
/// tail is reduced to its primitive period, and trailing prefix entries that
/// continue the periodic pattern are absorbed into the tail. Two towers
/// compare equal iff they unroll to the same ratio stream.
class Tower {
public:
    Tower() = default;
    Tower(std::vector<big_int> prefix_ratios, std::vector<big_int> tail_ratios);

    static Tower periodic(std::vector<big_int> tail_ratios) { return Tower({}, std::move(tail_ratios)); }
    static Tower finite(std::vector<big_int> prefix_ratios) { return Tower(std::move(prefix_ratios), {}); }

    const std::vector<big_int>& prefix_ratios() const noexcept { return prefix_; }
    const std::vector<big_int>& tail_ratios() const noexcept { return tail_; }

    bool is_infinite() const noexcept { return !tail_.empty(); }

    /// The n-th unrolled ratio; 1 past the end of a finite tower.
    const big_int& ratio(level n) const;

    /// Number of strictly increasing levels of a finite tower.
    level finite_length() const noexcept { return prefix_.size(); }

    friend bool operator==(const Tower&, const Tower&) = default;

private:
    std::vector<big_int> prefix_;
    std::vector<big_int> tail_;
};

/// Exponent in N ∪ {∞}.
class Exponent {
public:
    constexpr Exponent() = default;
    constexpr explicit Exponent(std::uint64_t value) : value_(value) {}

    static constexpr Exponent infinite()
    {
        Exponent e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    /// Only meaningful when finite.
    constexpr std::uint64_t value() const noexcept { return value_; }

    friend constexpr bool operator==(const Exponent& a, const Exponent& b) noexcept
    {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) noexcept
    {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

/// Formal product ∏ p^{e_p} with e_p ∈ N ∪ {∞}. Primes absent from the map
/// carry the default exponent, which is 0 or ∞. Normal form: no stored
/// exponent equals the default.
class SupernaturalNumber {
public:
    using exponent_map = std::map<big_int, Exponent>;

    SupernaturalNumber() = default;
    /// Validates primality of keys and the default, then normalizes.
    SupernaturalNumber(exponent_map exponents, Exponent default_exponent = Exponent(0));

    Exponent exponent(const big_int& prime) const;
    const exponent_map& exponents() const noexcept { return exponents_; }
    Exponent default_exponent() const noexcept { return default_; }

    /// True iff the value is an ordinary natural number (every exponent finite,
    /// default 0).
    bool is_natural() const noexcept;

    friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

private:
    exponent_map exponents_;
    Exponent default_{0};
};

struct PrimePower {
    big_int prime;
    std::uint64_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// k_n: product of the first n unrolled ratios. Saturates at the group order
/// for finite towers.
big_int tower_order(const Tower& t, level n);

/// Order of a finite tower (product of its prefix).
big_int finite_order(const Tower& t);

SupernaturalNumber supernatural_of_tower(const Tower& t);

/// p^m | s, i.e. m <= e_p(s). Throws precondition_violation for non-prime p
/// or m == 0.
bool sn_divides(const big_int& prime, std::uint64_t m, const SupernaturalNumber& s);

/// Pointwise exponent comparison a <= b.
bool sn_divides(const SupernaturalNumber& a, const SupernaturalNumber& b);

bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b);

bool bijectively_coarsely_equivalent(const Tower& a, const Tower& b);

/// All countably infinite locally finite groups are coarsely equivalent, and
/// so are all finite ones.
bool coarsely_equivalent(const Tower& a, const Tower& b);

/// Smallest prime p (and least r >= 1) such that p^r divides exactly one of
/// the two supernatural numbers; empty when they are equal.
std::optional<PrimePower> obstruction_witness(const SupernaturalNumber& a, const SupernaturalNumber& b);
std::optional<PrimePower> obstruction_witness(const Tower& a, const Tower& b);

} // namespace lfroe
