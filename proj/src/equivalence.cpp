#include "lfroe/equivalence.hpp"

#include <algorithm>
#include <string>

#include "lfroe/errors.hpp"

namespace lfroe {

namespace {

constexpr std::uint64_t max_truncation = std::uint64_t{1} << 26;

std::uint64_t checked_size(const big_int& k)
{
    if (k > max_truncation) throw depth_exhausted("truncation of " + to_string(k) + " points is too large");
    return to_u64(k);
}

// Given an injection g from [0, alpha) into [0, beta), builds h on [0, beta)
// with h(g(x)) = x whose image is the union of `beta / alpha` blocks of
// length alpha in [0, gamma): block 0 (taken by the inverse of g) followed by
// the lowest-index free blocks, filled in increasing order.
std::vector<std::uint64_t> back_step(const std::vector<std::uint64_t>& g, std::uint64_t beta, std::uint64_t gamma)
{
    const std::uint64_t alpha = g.size();
    const std::uint64_t blocks = beta / alpha;
    if (blocks * alpha > gamma) throw precondition_violation("interleaving does not leave room for the next stage");

    constexpr std::uint64_t unset = UINT64_MAX;
    std::vector<std::uint64_t> h(beta, unset);
    for (std::uint64_t x = 0; x < alpha; ++x) h[g[x]] = x;

    std::vector<bool> block_used(gamma / alpha, false);
    block_used[0] = true;
    std::vector<std::uint64_t> free_targets;
    free_targets.reserve(beta - alpha);
    for (std::uint64_t blk = 0, chosen = 1; chosen < blocks; ++blk) {
        if (block_used[blk]) continue;
        block_used[blk] = true;
        ++chosen;
        for (std::uint64_t i = 0; i < alpha; ++i) free_targets.push_back(blk * alpha + i);
    }

    std::size_t next = 0;
    for (std::uint64_t y = 0; y < beta; ++y) {
        if (h[y] == unset) h[y] = free_targets[next++];
    }
    return h;
}

struct StageOrders {
    std::vector<std::uint64_t> source; // a_0 .. a_D
    std::vector<std::uint64_t> target; // b_0 .. b_D
};

StageOrders stage_orders(const TowerBijection& b)
{
    StageOrders out;
    out.source.push_back(1);
    out.target.push_back(1);
    for (const auto& lp : b.levels) {
        out.source.push_back(checked_size(tower_order(b.source, lp.source)));
        out.target.push_back(checked_size(tower_order(b.target, lp.target)));
    }
    return out;
}

} // namespace

std::uint64_t TowerBijection::domain_size() const
{
    return levels.empty() ? 1 : to_u64(tower_order(source, levels.back().source));
}

std::uint64_t TowerBijection::codomain_size() const
{
    return levels.empty() ? 1 : to_u64(tower_order(target, levels.back().target));
}

level interleave_scan_bound(const Tower& a, const Tower& b, level depth)
{
    const std::size_t len = std::max(a.prefix_ratios().size() + a.tail_ratios().size(),
                                     b.prefix_ratios().size() + b.tail_ratios().size());
    return std::max<level>(64, depth * len * 8);
}

std::vector<LevelPair> interleave_towers(const Tower& source, const Tower& target, level depth)
{
    if (!sn_equal(supernatural_of_tower(source), supernatural_of_tower(target))) {
        throw not_equivalent("towers have different supernatural numbers");
    }
    if (!source.is_infinite() || !target.is_infinite()) {
        throw precondition_violation("interleaving needs two infinite towers");
    }
    const level bound = interleave_scan_bound(source, target, depth);

    std::vector<LevelPair> out;
    level n = 0, m = 0;
    big_int kn = 1, km = 1;
    for (level j = 1; j <= depth; ++j) {
        // Next source level: strictly above the current target order, divisible by it.
        do {
            if (n >= bound) throw depth_exhausted("no dividing source level within the scan bound");
            kn *= source.ratio(n++);
        } while (!(kn > km && mpz_divisible_p(kn.get_mpz_t(), km.get_mpz_t())));
        // Next target level: the first order divisible by the source order.
        while (!mpz_divisible_p(km.get_mpz_t(), kn.get_mpz_t())) {
            if (m >= bound) throw depth_exhausted("no dividing target level within the scan bound");
            km *= target.ratio(m++);
        }
        out.push_back({n, m});
    }
    return out;
}

TowerBijection build_back_and_forth(const Tower& source, const Tower& target, level depth)
{
    TowerBijection b;
    b.source = source;
    b.target = target;
    b.depth = depth;
    b.levels = interleave_towers(source, target, depth);
    const StageOrders k = stage_orders(b);

    std::vector<std::uint64_t> forward{0};
    std::vector<std::uint64_t> backward;
    for (level j = 1; j <= depth; ++j) {
        backward = back_step(forward, k.target[j - 1], k.source[j]);
        forward = back_step(backward, k.source[j], k.target[j]);
    }
    b.map = std::move(forward);
    b.inverse = std::move(backward);
    return b;
}

EquivalenceReport verify_bijective_coarse_equivalence(const TowerBijection& b)
{
    if (b.levels.size() != b.depth) throw malformed_input("level list length differs from depth");
    for (std::size_t j = 1; j < b.levels.size(); ++j) {
        if (b.levels[j].source <= b.levels[j - 1].source || b.levels[j].target <= b.levels[j - 1].target) {
            throw malformed_input("interleaved levels must increase");
        }
    }
    const StageOrders k = stage_orders(b);
    const std::uint64_t domain = k.source.back();
    const std::uint64_t codomain = k.target.back();
    if (b.map.size() != domain) throw malformed_input("map does not cover the source truncation");
    for (auto y : b.map) {
        if (y >= codomain) throw malformed_input("map leaves the target truncation");
    }
    const std::uint64_t inverse_domain = b.depth == 0 ? 0 : k.target[b.depth - 1];
    if (!b.inverse.empty() && b.inverse.size() != inverse_domain) {
        throw malformed_input("inverse does not cover the previous target stage");
    }

    EquivalenceReport report;
    const level depth = b.depth;
    auto fail_components = [&](level source_level) {
        report.components_preserved = false;
        if (!report.first_failed_level || source_level < *report.first_failed_level) {
            report.first_failed_level = source_level;
        }
    };

    constexpr std::uint64_t none = UINT64_MAX;
    std::vector<std::uint64_t> preimage(codomain, none);
    for (std::uint64_t x = 0; x < domain; ++x) {
        if (preimage[b.map[x]] != none) report.injective = false;
        preimage[b.map[x]] = x;
    }

    for (level j = 0; j <= depth; ++j) {
        const std::uint64_t a = k.source[j], t = k.target[j];
        const level n_j = j == 0 ? 0 : b.levels[j - 1].source;
        // Source n_j-components stay inside one target m_j-component.
        for (std::uint64_t start = 0; start < domain; start += a) {
            const std::uint64_t home = b.map[start] / t;
            for (std::uint64_t x = start; x < start + a; ++x) {
                if (b.map[x] / t != home) {
                    fail_components(n_j);
                    break;
                }
            }
        }
        // Covered target m_j-components are unions of whole source n_j-components.
        std::vector<std::uint64_t> hits(domain / a, 0);
        for (std::uint64_t start = 0; start < codomain; start += t) {
            bool covered = true;
            for (std::uint64_t y = start; y < start + t && covered; ++y) covered = preimage[y] != none;
            if (!covered) continue;
            std::fill(hits.begin(), hits.end(), 0);
            for (std::uint64_t y = start; y < start + t; ++y) ++hits[preimage[y] / a];
            if (std::any_of(hits.begin(), hits.end(), [a](std::uint64_t h) { return h != 0 && h != a; })) {
                report.disjoint_unions = false;
            }
        }
        if (t % a != 0) report.divisibility = false;
        if (j < depth && k.source[j + 1] % t != 0) report.divisibility = false;

        // Stage consistency: S_j lands in T_j, and T_j is covered from S_{j+1}.
        for (std::uint64_t x = 0; x < a; ++x) {
            if (b.map[x] >= t) report.extension_consistent = false;
        }
        if (j < depth) {
            const std::uint64_t next = k.source[j + 1];
            for (std::uint64_t y = 0; y < t; ++y) {
                if (preimage[y] == none || preimage[y] >= next) report.extension_consistent = false;
            }
            // Target m_i-components of T_j pull back into one source n_{j+1}-component.
            const std::uint64_t tj = k.target[j];
            for (level i = 0; i <= j; ++i) {
                const std::uint64_t ti = k.target[i], ai1 = k.source[i + 1];
                const level n_i1 = b.levels[i].source;
                for (std::uint64_t start = 0; start < tj; start += ti) {
                    if (preimage[start] == none) continue;
                    const std::uint64_t home = preimage[start] / ai1;
                    for (std::uint64_t y = start; y < start + ti; ++y) {
                        if (preimage[y] == none || preimage[y] / ai1 != home) {
                            fail_components(n_i1);
                            break;
                        }
                    }
                }
            }
        }
    }

    if (!b.inverse.empty()) {
        for (std::uint64_t y = 0; y < inverse_domain; ++y) {
            if (b.inverse[y] >= domain || b.map[b.inverse[y]] != y) report.extension_consistent = false;
        }
    }

    // Measured modulus. In the block ultrametric the diameter of a set is the
    // distance between its least and greatest elements.
    const level top_source = depth == 0 ? 0 : b.levels.back().source;
    const level top_target = depth == 0 ? 0 : b.levels.back().target;
    const BlockSpace src(b.source, top_source);
    const BlockSpace tgt(b.target, top_target);
    report.modulus.assign(top_source + 1, 0);
    for (level l = 0; l <= top_source; ++l) {
        const std::uint64_t a = src.order(l);
        level rho = 0;
        for (std::uint64_t start = 0; start < domain; start += a) {
            const auto [lo, hi] = std::minmax_element(b.map.begin() + start, b.map.begin() + start + a);
            rho = std::max<level>(rho, distance(tgt, *lo, *hi));
        }
        report.modulus[l] = rho;

        // Covered target rho-components have order divisible by the source order.
        const std::uint64_t t = tgt.order(rho);
        for (std::uint64_t start = 0; start < codomain; start += t) {
            bool covered = true;
            for (std::uint64_t y = start; y < start + t && covered; ++y) covered = preimage[y] != none;
            if (covered && t % a != 0) report.divisibility = false;
        }
    }
    return report;
}

} // namespace lfroe
