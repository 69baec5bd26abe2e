#include "lfroe/supernatural.hpp"

#include <algorithm>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

const big_int& one()
{
    static const big_int value = 1;
    return value;
}

void drop_units(std::vector<big_int>& ratios)
{
    for (const auto& r : ratios) {
        if (r < 1) throw malformed_input("tower ratio must be a positive integer, got " + to_string(r));
    }
    std::erase_if(ratios, [](const big_int& r) { return r == 1; });
}

void reduce_period(std::vector<big_int>& tail)
{
    const std::size_t len = tail.size();
    for (std::size_t d = 1; d < len; ++d) {
        if (len % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < len && repeats; ++i) repeats = tail[i] == tail[i - d];
        if (repeats) {
            tail.resize(d);
            return;
        }
    }
}

} // namespace

Tower::Tower(std::vector<big_int> prefix_ratios, std::vector<big_int> tail_ratios)
    : prefix_(std::move(prefix_ratios)), tail_(std::move(tail_ratios))
{
    drop_units(prefix_);
    drop_units(tail_);
    reduce_period(tail_);
    while (!tail_.empty() && !prefix_.empty() && prefix_.back() == tail_.back()) {
        prefix_.pop_back();
        std::rotate(tail_.rbegin(), tail_.rbegin() + 1, tail_.rend());
    }
}

const big_int& Tower::ratio(level n) const
{
    if (n < prefix_.size()) return prefix_[n];
    if (tail_.empty()) return one();
    return tail_[(n - prefix_.size()) % tail_.size()];
}

SupernaturalNumber::SupernaturalNumber(exponent_map exponents, Exponent default_exponent)
    : exponents_(std::move(exponents)), default_(default_exponent)
{
    if (!(default_ == Exponent(0) || default_.is_infinite())) {
        throw malformed_input("default exponent must be 0 or infinite");
    }
    for (const auto& [p, e] : exponents_) {
        if (!is_prime(p)) throw malformed_input("supernatural number key " + to_string(p) + " is not prime");
    }
    std::erase_if(exponents_, [this](const auto& kv) { return kv.second == default_; });
}

Exponent SupernaturalNumber::exponent(const big_int& prime) const
{
    auto it = exponents_.find(prime);
    return it == exponents_.end() ? default_ : it->second;
}

bool SupernaturalNumber::is_natural() const noexcept
{
    if (default_.is_infinite()) return false;
    return std::none_of(exponents_.begin(), exponents_.end(),
                        [](const auto& kv) { return kv.second.is_infinite(); });
}

big_int tower_order(const Tower& t, level n)
{
    big_int k = 1;
    const level stop = t.is_infinite() ? n : std::min(n, t.finite_length());
    for (level i = 0; i < stop; ++i) k *= t.ratio(i);
    return k;
}

big_int finite_order(const Tower& t)
{
    if (t.is_infinite()) throw precondition_violation("finite_order of an infinite tower");
    return tower_order(t, t.finite_length());
}

SupernaturalNumber supernatural_of_tower(const Tower& t)
{
    SupernaturalNumber::exponent_map exps;
    for (const auto& r : t.prefix_ratios()) {
        for (const auto& [p, e] : factorize(r)) {
            auto& slot = exps[p];
            slot = Exponent(slot.value() + e);
        }
    }
    for (const auto& r : t.tail_ratios()) {
        for (const auto& [p, e] : factorize(r)) exps[p] = Exponent::infinite();
    }
    return SupernaturalNumber(std::move(exps));
}

bool sn_divides(const big_int& prime, std::uint64_t m, const SupernaturalNumber& s)
{
    if (!is_prime(prime)) throw precondition_violation(to_string(prime) + " is not prime");
    if (m == 0) throw precondition_violation("prime power exponent must be positive");
    return Exponent(m) <= s.exponent(prime);
}

bool sn_divides(const SupernaturalNumber& a, const SupernaturalNumber& b)
{
    if (a.default_exponent() > b.default_exponent()) return false;
    auto le_at = [&](const big_int& p) { return a.exponent(p) <= b.exponent(p); };
    return std::all_of(a.exponents().begin(), a.exponents().end(), [&](const auto& kv) { return le_at(kv.first); }) &&
           std::all_of(b.exponents().begin(), b.exponents().end(), [&](const auto& kv) { return le_at(kv.first); });
}

bool sn_equal(const SupernaturalNumber& a, const SupernaturalNumber& b) { return a == b; }

bool bijectively_coarsely_equivalent(const Tower& a, const Tower& b)
{
    return sn_equal(supernatural_of_tower(a), supernatural_of_tower(b));
}

bool coarsely_equivalent(const Tower& a, const Tower& b) { return a.is_infinite() == b.is_infinite(); }

std::optional<PrimePower> obstruction_witness(const SupernaturalNumber& a, const SupernaturalNumber& b)
{
    std::vector<big_int> candidates;
    for (const auto& [p, e] : a.exponents()) candidates.push_back(p);
    for (const auto& [p, e] : b.exponents()) candidates.push_back(p);
    if (a.default_exponent() != b.default_exponent()) {
        // Every unlisted prime differs; only the smallest one matters.
        big_int p = 2;
        while (a.exponents().contains(p) || b.exponents().contains(p)) {
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        }
        candidates.push_back(p);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& p : candidates) {
        const Exponent ea = a.exponent(p);
        const Exponent eb = b.exponent(p);
        if (ea == eb) continue;
        const Exponent low = std::min(ea, eb);
        return PrimePower{p, low.value() + 1};
    }
    return std::nullopt;
}

std::optional<PrimePower> obstruction_witness(const Tower& a, const Tower& b)
{
    return obstruction_witness(supernatural_of_tower(a), supernatural_of_tower(b));
}

} // namespace lfroe
