#include "lfroe/ktheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

constexpr std::uint64_t max_materialized = std::uint64_t{1} << 22;

void require_same_context(const K0Class& a, const K0Class& b)
{
    if (!(a.context() == b.context())) throw context_mismatch("K0 classes live over different towers");
}

void require_infinite(const Tower& t)
{
    if (!t.is_infinite()) throw precondition_violation("operation needs an infinite tower");
}

// Re-expands a to prefix length s and period length q (q a multiple of the
// period of a, s at least its prefix length).
void expand(const PeriodicSequence& a, std::size_t s, std::size_t q, std::vector<big_int>& prefix,
            std::vector<big_int>& period)
{
    prefix.resize(s);
    period.resize(q);
    for (std::size_t i = 0; i < s; ++i) prefix[i] = a.at(i);
    for (std::size_t i = 0; i < q; ++i) period[i] = a.at(s + i);
}

template <typename Op>
PeriodicSequence pointwise(const PeriodicSequence& a, const PeriodicSequence& b, Op op)
{
    const std::size_t s = std::max(a.prefix().size(), b.prefix().size());
    const std::size_t q = std::lcm(a.period().size(), b.period().size());
    std::vector<big_int> pa, qa, pb, qb;
    expand(a, s, q, pa, qa);
    expand(b, s, q, pb, qb);
    for (std::size_t i = 0; i < s; ++i) pa[i] = op(pa[i], pb[i]);
    for (std::size_t i = 0; i < q; ++i) qa[i] = op(qa[i], qb[i]);
    return PeriodicSequence(std::move(pa), std::move(qa));
}

// Least multiple of the gcd that the tail of d can see at large levels:
// g* = prod over p | q of p^min(v_p(q), e_p(s(t))).
std::uint64_t stable_gcd(const Tower& t, std::uint64_t q)
{
    const SupernaturalNumber s = supernatural_of_tower(t);
    std::uint64_t g = 1;
    for (const auto& [p, e] : factorize(big_int(q))) {
        const Exponent cap = s.exponent(p);
        const std::uint64_t use = cap.is_infinite() ? e : std::min<std::uint64_t>(e, cap.value());
        for (std::uint64_t i = 0; i < use; ++i) g *= to_u64(p);
    }
    return g;
}

// Number of aligned k-blocks to inspect so that every distinct block sum is
// seen: the blocks touching the prefix, then one period of tail block sums.
std::uint64_t window_blocks(const PeriodicSequence& d, const big_int& k)
{
    const big_int s = static_cast<unsigned long>(d.prefix().size());
    const std::uint64_t q = d.period().size();
    big_int head = (s + k - 1) / k;
    big_int g;
    const big_int qq = static_cast<unsigned long>(q);
    mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), qq.get_mpz_t());
    return to_u64(head) + q / to_u64(g);
}

bool all_block_sums(const PeriodicSequence& d, const big_int& k, bool nonnegative_only)
{
    const std::uint64_t count = window_blocks(d, k);
    for (std::uint64_t j = 0; j < count; ++j) {
        const big_int sum = block_sum(d, k, big_int(static_cast<unsigned long>(j)));
        if (nonnegative_only ? sum < 0 : sum != 0) return false;
    }
    return true;
}

// Cumulative sums S(x) for x in the reachable residue classes at the decision
// level: x = j * k_{n*} for j >= 1 covers exactly the residues g* Z / q Z of
// the tail.
std::vector<big_int> reachable_tail_sums(const Tower& t, const PeriodicSequence& d)
{
    const std::uint64_t s = d.prefix().size();
    const std::uint64_t q = d.period().size();
    const std::uint64_t g = stable_gcd(t, q);
    std::vector<big_int> out;
    for (std::uint64_t residue = 0; residue < q; residue += g) {
        const std::uint64_t x = s + (residue + q - s % q) % q;
        out.push_back(d.partial_sum(big_int(static_cast<unsigned long>(x))));
    }
    return out;
}

std::optional<K0Class> nonnegative_representative(const K0Class& a, level n)
{
    const PeriodicSequence& d = a.sequence();
    const big_int k_big = tower_order(a.context(), n);
    if (k_big > max_materialized) return std::nullopt;
    const std::uint64_t k = to_u64(k_big);
    const std::uint64_t head = (d.prefix().size() + k - 1) / k;
    const std::uint64_t total = window_blocks(d, k_big);
    if (total * k > max_materialized) return std::nullopt;

    std::vector<big_int> prefix(head * k, 0), period((total - head) * k, 0);
    for (std::uint64_t j = 0; j < total; ++j) {
        const big_int sum = block_sum(d, k_big, big_int(static_cast<unsigned long>(j)));
        if (j < head) {
            prefix[j * k] = sum;
        } else {
            period[(j - head) * k] = sum;
        }
    }
    return K0Class(a.context(), PeriodicSequence(std::move(prefix), std::move(period)));
}

} // namespace

PeriodicSequence::PeriodicSequence(std::vector<big_int> prefix, std::vector<big_int> period)
    : prefix_(std::move(prefix)), period_(std::move(period))
{
    if (period_.empty()) throw malformed_input("periodic sequence needs a nonempty period");

    const std::size_t q = period_.size();
    for (std::size_t d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < q && repeats; ++i) repeats = period_[i] == period_[i - d];
        if (repeats) {
            period_.resize(d);
            break;
        }
    }
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
        prefix_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }

    prefix_cumulative_.assign(1, 0);
    for (const auto& v : prefix_) prefix_cumulative_.push_back(prefix_cumulative_.back() + v);
    period_cumulative_.assign(1, 0);
    for (const auto& v : period_) period_cumulative_.push_back(period_cumulative_.back() + v);
    period_sum_ = period_cumulative_.back();
}

const big_int& PeriodicSequence::at(std::uint64_t i) const
{
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
}

big_int PeriodicSequence::partial_sum(const big_int& x) const
{
    const big_int s = static_cast<unsigned long>(prefix_.size());
    if (x <= s) return prefix_cumulative_[to_u64(x)];
    const big_int q = static_cast<unsigned long>(period_.size());
    const big_int offset = x - s;
    const big_int full = offset / q;
    const std::uint64_t rest = to_u64(offset % q);
    return prefix_cumulative_.back() + full * period_sum_ + period_cumulative_[rest];
}

big_int PeriodicSequence::entry_bound() const
{
    big_int bound = 0;
    for (const auto& v : prefix_) bound = std::max(bound, big_int(abs(v)));
    for (const auto& v : period_) bound = std::max(bound, big_int(abs(v)));
    return bound;
}

PeriodicSequence operator+(const PeriodicSequence& a, const PeriodicSequence& b)
{
    return pointwise(a, b, [](const big_int& x, const big_int& y) { return big_int(x + y); });
}

PeriodicSequence operator-(const PeriodicSequence& a)
{
    std::vector<big_int> prefix = a.prefix_, period = a.period_;
    for (auto& v : prefix) v = -v;
    for (auto& v : period) v = -v;
    return PeriodicSequence(std::move(prefix), std::move(period));
}

PeriodicSequence operator*(const big_int& c, const PeriodicSequence& a)
{
    std::vector<big_int> prefix = a.prefix_, period = a.period_;
    for (auto& v : prefix) v *= c;
    for (auto& v : period) v *= c;
    return PeriodicSequence(std::move(prefix), std::move(period));
}

K0Class::K0Class(Tower context, PeriodicSequence sequence)
    : context_(std::move(context)), sequence_(std::move(sequence))
{
    if (!context_.is_infinite()) {
        throw precondition_violation("K0 classes of finite towers are modelled by FiniteK0");
    }
}

K0Class k0_unit(const Tower& t) { return K0Class(t, PeriodicSequence::constant(1)); }

K0Class k0_zero(const Tower& t) { return K0Class(t, PeriodicSequence::constant(0)); }

FiniteK0 k0_finite(const Tower& t)
{
    if (t.is_infinite()) throw precondition_violation("FiniteK0 needs a finite tower");
    return FiniteK0{1, finite_order(t)};
}

K0Class k0_add(const K0Class& a, const K0Class& b)
{
    require_same_context(a, b);
    return K0Class(a.context(), a.sequence() + b.sequence());
}

K0Class k0_neg(const K0Class& a) { return K0Class(a.context(), -a.sequence()); }

K0Class k0_scale(const big_int& c, const K0Class& a) { return K0Class(a.context(), c * a.sequence()); }

big_int block_sum(const PeriodicSequence& d, const big_int& k, const big_int& j)
{
    return d.partial_sum((j + 1) * k) - d.partial_sum(j * k);
}

bool h_membership(const Tower& t, const K0Class& d, level n)
{
    require_infinite(t);
    if (!(t == d.context())) throw context_mismatch("class does not live over the given tower");
    return all_block_sums(d.sequence(), tower_order(t, n), false);
}

level decision_level(const Tower& t, const PeriodicSequence& d)
{
    require_infinite(t);
    const std::uint64_t q = d.period().size();
    const big_int need = static_cast<unsigned long>(d.prefix().size() + q);
    const big_int target_gcd = static_cast<unsigned long>(stable_gcd(t, q));
    const big_int qq = static_cast<unsigned long>(q);
    big_int k = 1, g;
    for (level n = 0;; ++n) {
        mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), qq.get_mpz_t());
        if (g == target_gcd && k >= need) return n;
        k *= t.ratio(n);
    }
}

bool k0_equal(const K0Class& a, const K0Class& b)
{
    require_same_context(a, b);
    const PeriodicSequence d = a.sequence() - b.sequence();
    if (d.period_sum() != 0) return false;
    const auto sums = reachable_tail_sums(a.context(), d);
    return std::all_of(sums.begin(), sums.end(), [](const big_int& v) { return v == 0; });
}

PositivityResult k0_positive(const K0Class& a, bool want_representative)
{
    const Tower& t = a.context();
    const PeriodicSequence& d = a.sequence();
    PositivityResult result;
    const int sign = sgn(d.period_sum());
    if (sign < 0) return result;

    if (sign == 0) {
        const auto sums = reachable_tail_sums(t, d);
        const bool constant = std::all_of(sums.begin(), sums.end(), [&](const big_int& v) { return v == sums[0]; });
        if (!constant || sums[0] < 0) return result;
    }

    // Positive. Find the least level whose blocks all have nonnegative sums;
    // monotone in n. For sigma > 0 the bound below guarantees success.
    const big_int q = static_cast<unsigned long>(d.period().size());
    const big_int guarantee = (static_cast<unsigned long>(d.prefix().size()) + 2 * q) * d.entry_bound();
    const level cap = sign == 0 ? decision_level(t, d) : SIZE_MAX;
    big_int k = 1;
    for (level n = 0;; ++n) {
        if (all_block_sums(d, k, true)) {
            result.positive = true;
            result.witness_level = n;
            break;
        }
        if (n >= cap || (sign > 0 && (k / q - 2) * d.period_sum() > guarantee)) {
            throw std::logic_error("positivity witness level not reached");
        }
        k *= t.ratio(n);
    }
    if (want_representative) result.representative = nonnegative_representative(a, *result.witness_level);
    return result;
}

std::optional<K0Class> unit_divide(const Tower& t, const big_int& prime, std::uint64_t exponent)
{
    require_infinite(t);
    if (!is_prime(prime)) throw precondition_violation(to_string(prime) + " is not prime");
    if (exponent == 0) return k0_unit(t);
    if (!sn_divides(prime, exponent, supernatural_of_tower(t))) return std::nullopt;

    // (1, 0, ..., 0) with period p^r: p^r times it differs from [1] by a
    // sequence whose aligned p^r-chunks sum to zero, and p^r divides some k_n.
    big_int power;
    mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), exponent);
    if (power > max_materialized) throw depth_exhausted("unit divisor witness period too long");
    std::vector<big_int> period(to_u64(power), 0);
    period[0] = 1;
    return K0Class(t, PeriodicSequence({}, std::move(period)));
}

PeriodicSequence alpha_iterate(const Tower& t, level n, const PeriodicSequence& v)
{
    require_infinite(t);
    const big_int k = tower_order(t, n);
    const std::uint64_t head = to_u64(big_int((static_cast<unsigned long>(v.prefix().size()) + k - 1) / k));
    const std::uint64_t total = window_blocks(v, k);
    std::vector<big_int> prefix, period;
    for (std::uint64_t j = 0; j < total; ++j) {
        (j < head ? prefix : period).push_back(block_sum(v, k, big_int(static_cast<unsigned long>(j))));
    }
    return PeriodicSequence(std::move(prefix), std::move(period));
}

std::vector<big_int> alpha_step(const Tower& t, level n, std::span<const big_int> v)
{
    const std::uint64_t r = to_u64(t.ratio(n));
    if (v.size() % r != 0) throw precondition_violation("vector length is not a multiple of the ratio");
    std::vector<big_int> out(v.size() / r, 0);
    for (std::size_t i = 0; i < v.size(); ++i) out[i / r] += v[i];
    return out;
}

bool k0_iso_exists(const Tower& a, const Tower& b)
{
    if (a.is_infinite() != b.is_infinite()) return false;
    return bijectively_coarsely_equivalent(a, b);
}

bool k0_groups_abstractly_iso(const Tower& a, const Tower& b) { return coarsely_equivalent(a, b); }

K0Class transport_class(const TowerBijection& b, const K0Class& a)
{
    if (!(a.context() == b.source)) throw context_mismatch("class does not live over the bijection's source");
    const PeriodicSequence& seq = a.sequence();
    if (!seq.is_finitely_supported()) {
        throw precondition_violation("only finitely supported classes can be transported");
    }
    if (seq.prefix().size() > b.map.size()) throw depth_exhausted("class support exceeds the truncation");

    std::vector<big_int> moved;
    for (std::size_t x = 0; x < seq.prefix().size(); ++x) {
        if (seq.prefix()[x] == 0) continue;
        const std::uint64_t y = b.map[x];
        if (moved.size() <= y) moved.resize(y + 1, 0);
        moved[y] = seq.prefix()[x];
    }
    return K0Class(b.target, PeriodicSequence(std::move(moved), {big_int(0)}));
}

} // namespace lfroe
