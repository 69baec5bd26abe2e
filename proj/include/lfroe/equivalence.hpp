#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lfroe/blockspace.hpp"
#include "lfroe/supernatural.hpp"

namespace lfroe {

/// One step of the interleaving k^src_{n_j} | k^tgt_{m_j} | k^src_{n_{j+1}}.
struct LevelPair {
    level source = 0;
    level target = 0;

    friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

/// Truncation of a bijective coarse equivalence between the block models of
/// two towers. `map` sends the source points {0, ..., k^src_{n_D} - 1} into
/// the target; `inverse` sends {0, ..., k^tgt_{m_{D-1}} - 1} back into the
/// source domain (empty at depth 0).
struct TowerBijection {
    Tower source;
    Tower target;
    level depth = 0;
    std::vector<LevelPair> levels; // (n_1, m_1) ... (n_D, m_D)
    std::vector<std::uint64_t> map;
    std::vector<std::uint64_t> inverse;

    std::uint64_t domain_size() const;
    /// k^tgt_{m_D}: the target truncation the image lives in.
    std::uint64_t codomain_size() const;

    friend bool operator==(const TowerBijection&, const TowerBijection&) = default;
};

struct EquivalenceReport {
    bool injective = true;
    /// Interleaved component preservation: source n_j-components land in one
    /// target m_j-component, and target m_j-components pull back into one
    /// source n_{j+1}-component.
    bool components_preserved = true;
    std::optional<level> first_failed_level;
    /// Every target m_j-component covered by the image is a disjoint union of
    /// images of source n_j-components.
    bool disjoint_unions = true;
    /// k^src_{n_j} | k^tgt_{m_j} | k^src_{n_{j+1}}, and the order of every
    /// fully covered target component is a multiple of the source order.
    bool divisibility = true;
    /// The map restricted to each earlier stage is a valid stage map.
    bool extension_consistent = true;
    /// modulus[l]: least target level containing the image of every source
    /// l-component, for l = 0 .. n_D (measured on the truncation).
    std::vector<level> modulus;

    bool passed() const noexcept
    {
        return injective && components_preserved && disjoint_unions && divisibility &&
               extension_consistent;
    }
};

/// Scan bound for interleave_towers: max(64, D * (longest prefix + tail) * 8).
level interleave_scan_bound(const Tower& a, const Tower& b, level depth);

/// Greedy interleaving of two infinite towers with equal supernatural
/// numbers. Throws not_equivalent, or depth_exhausted past the scan bound.
std::vector<LevelPair> interleave_towers(const Tower& source, const Tower& target, level depth);

/// Deterministic back-and-forth construction truncated at `depth`.
TowerBijection build_back_and_forth(const Tower& source, const Tower& target, level depth);

/// Checks a candidate bijection. Failed checks are reported, not thrown; a map
/// whose shape does not match its levels is rejected with malformed_input.
EquivalenceReport verify_bijective_coarse_equivalence(const TowerBijection& b);

} // namespace lfroe
