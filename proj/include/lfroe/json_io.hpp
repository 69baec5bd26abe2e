#pragma once

#include <string>

#include <json.hpp>

#include "lfroe/blockspace.hpp"
#include "lfroe/equivalence.hpp"
#include "lfroe/ktheory.hpp"
#include "lfroe/roeops.hpp"
#include "lfroe/supernatural.hpp"

// File formats. Every reader throws malformed_input on a shape or type error;
// every writer produces values that read back to an equal object. Output is
// canonical: object keys sorted (nlohmann::json default), no floating point.
namespace lfroe::io {

using json = nlohmann::json;

json to_json(const Tower& t);
Tower tower_from_json(const json& j);

json to_json(const SupernaturalNumber& s);
SupernaturalNumber supernatural_from_json(const json& j);

json to_json(const FiniteMetricSpace& m);
FiniteMetricSpace metric_space_from_json(const json& j);

json to_json(const Partition& p);

json to_json(const TowerBijection& b);
/// The inverse stage is rebuilt from the map when it is invertible there.
TowerBijection bijection_from_json(const json& j);

json to_json(const EquivalenceReport& r);

json to_json(const K0Class& a);
K0Class k0_class_from_json(const json& j);

json to_json(const BlockSpace& s);
BlockSpace block_space_from_json(const json& j);

json to_json(const PropagationOperator& t);
PropagationOperator operator_from_json(const json& j);

json to_json(const BlockTuple& b);

/// Parses text, mapping syntax errors to malformed_input.
json parse(const std::string& text);

/// Compact serialization plus a trailing newline.
std::string dump(const json& j);

} // namespace lfroe::io
