#include "lfroe/json_io.hpp"

#include <algorithm>
#include <limits>

#include "lfroe/errors.hpp"

namespace lfroe::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) throw malformed_input(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw malformed_input(std::string("missing key '") + key + "'");
    return *it;
}

const json& array_field(const json& j, const char* key)
{
    const json& v = field(j, key);
    if (!v.is_array()) throw malformed_input(std::string("'") + key + "' must be an array");
    return v;
}

big_int integer(const json& v)
{
    if (v.is_string()) return parse_big_int(v.get<std::string>());
    if (v.is_number_unsigned()) return big_int(std::to_string(v.get<std::uint64_t>()));
    if (v.is_number_integer()) return big_int(std::to_string(v.get<std::int64_t>()));
    throw malformed_input("expected an integer or a decimal string, got " + v.dump());
}

std::uint64_t count(const json& v)
{
    const big_int value = integer(v);
    if (!fits_u64(value)) throw malformed_input("expected a nonnegative 64-bit integer, got " + v.dump());
    return to_u64(value);
}

std::vector<big_int> integers(const json& arr)
{
    if (!arr.is_array()) throw malformed_input("expected an array of integers");
    std::vector<big_int> out;
    for (const auto& v : arr) out.push_back(integer(v));
    return out;
}

// Small values as JSON numbers, anything wider as a decimal string.
json number(const big_int& v)
{
    if (mpz_fits_slong_p(v.get_mpz_t())) return json(static_cast<std::int64_t>(v.get_si()));
    return json(to_string(v));
}

json strings(const std::vector<big_int>& values)
{
    json arr = json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

json entries_json(const SparseMatrix& m)
{
    json arr = json::array();
    for (const auto& [rc, v] : m.entries()) arr.push_back(json::array({rc.first, rc.second, to_string(v)}));
    return arr;
}

Exponent exponent_from(const json& v)
{
    if (v.is_string() && v.get<std::string>() == "inf") return Exponent::infinite();
    return Exponent(count(v));
}

json exponent_json(const Exponent& e) { return e.is_infinite() ? json("inf") : json(std::to_string(e.value())); }

} // namespace

json to_json(const Tower& t)
{
    return json{{"prefix", strings(t.prefix_ratios())}, {"tail", strings(t.tail_ratios())}};
}

Tower tower_from_json(const json& j)
{
    std::vector<big_int> prefix = integers(array_field(j, "prefix"));
    std::vector<big_int> tail = j.contains("tail") ? integers(array_field(j, "tail")) : std::vector<big_int>{};
    return Tower(std::move(prefix), std::move(tail));
}

json to_json(const SupernaturalNumber& s)
{
    json exps = json::object();
    for (const auto& [p, e] : s.exponents()) exps[to_string(p)] = exponent_json(e);
    return json{{"exponents", exps}, {"default", exponent_json(s.default_exponent())}};
}

SupernaturalNumber supernatural_from_json(const json& j)
{
    const json& exps = field(j, "exponents");
    if (!exps.is_object()) throw malformed_input("'exponents' must be an object");
    SupernaturalNumber::exponent_map map;
    for (const auto& [key, value] : exps.items()) map[parse_big_int(key)] = exponent_from(value);
    const Exponent def = j.contains("default") ? exponent_from(j.at("default")) : Exponent(0);
    return SupernaturalNumber(std::move(map), def);
}

json to_json(const FiniteMetricSpace& m)
{
    json rows = json::array();
    for (std::size_t x = 0; x < m.size(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < m.size(); ++y) row.push_back(m(x, y));
        rows.push_back(std::move(row));
    }
    return json{{"size", m.size()}, {"distances", rows}};
}

FiniteMetricSpace metric_space_from_json(const json& j)
{
    const std::uint64_t size = count(field(j, "size"));
    const json& rows = array_field(j, "distances");
    if (rows.size() != size) throw malformed_input("distance matrix must have 'size' rows");
    std::vector<distance_t> d;
    d.reserve(size * size);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != size) throw malformed_input("distance matrix must be square");
        for (const auto& v : row) d.push_back(count(v));
    }
    return FiniteMetricSpace(size, std::move(d));
}

json to_json(const Partition& p)
{
    json arr = json::array();
    for (const auto& block : p) arr.push_back(block.points);
    return arr;
}

json to_json(const TowerBijection& b)
{
    json levels = json::array();
    for (const auto& lp : b.levels) levels.push_back(json::array({lp.source, lp.target}));
    json map = json::array();
    for (std::size_t x = 0; x < b.map.size(); ++x) {
        map.push_back(std::to_string(x));
        map.push_back(std::to_string(b.map[x]));
    }
    return json{{"source", to_json(b.source)}, {"target", to_json(b.target)}, {"depth", b.depth},
                {"levels", levels},            {"map", map}};
}

TowerBijection bijection_from_json(const json& j)
{
    TowerBijection b;
    b.source = tower_from_json(field(j, "source"));
    b.target = tower_from_json(field(j, "target"));
    b.depth = count(field(j, "depth"));
    for (const auto& lp : array_field(j, "levels")) {
        if (!lp.is_array() || lp.size() != 2) throw malformed_input("each level entry must be a pair");
        b.levels.push_back({count(lp[0]), count(lp[1])});
    }
    const json& flat = array_field(j, "map");
    if (flat.size() % 2 != 0) throw malformed_input("map must be a flat list of pairs");
    const std::size_t n = flat.size() / 2;
    constexpr std::uint64_t unset = std::numeric_limits<std::uint64_t>::max();
    b.map.assign(n, unset);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t x = count(flat[2 * i]);
        if (x >= n || b.map[x] != unset) throw malformed_input("map keys must be 0 .. size-1, each once");
        b.map[x] = count(flat[2 * i + 1]);
    }

    if (b.depth >= 1 && b.levels.size() == b.depth) {
        // The inverse covers the previous target stage m_{D-1}.
        const std::uint64_t stage = b.depth == 1 ? 1 : to_u64(tower_order(b.target, b.levels[b.depth - 2].target));
        std::vector<std::uint64_t> inverse(stage, unset);
        for (std::uint64_t x = 0; x < n; ++x)
            if (b.map[x] < stage) inverse[b.map[x]] = x;
        if (std::find(inverse.begin(), inverse.end(), unset) == inverse.end()) b.inverse = std::move(inverse);
    }
    return b;
}

json to_json(const EquivalenceReport& r)
{
    return json{{"passed", r.passed()},
                {"injective", r.injective},
                {"components_preserved", r.components_preserved},
                {"first_failed_level", r.first_failed_level ? json(*r.first_failed_level) : json(nullptr)},
                {"disjoint_unions", r.disjoint_unions},
                {"divisibility", r.divisibility},
                {"extension_consistent", r.extension_consistent},
                {"modulus", r.modulus}};
}

json to_json(const K0Class& a)
{
    json prefix = json::array(), period = json::array();
    for (const auto& v : a.sequence().prefix()) prefix.push_back(number(v));
    for (const auto& v : a.sequence().period()) period.push_back(number(v));
    return json{{"context", to_json(a.context())}, {"prefix", prefix}, {"period", period}};
}

K0Class k0_class_from_json(const json& j)
{
    Tower context = tower_from_json(field(j, "context"));
    std::vector<big_int> prefix = j.contains("prefix") ? integers(array_field(j, "prefix")) : std::vector<big_int>{};
    PeriodicSequence seq(std::move(prefix), integers(array_field(j, "period")));
    if (!context.is_infinite()) throw malformed_input("K0 class context must be an infinite tower");
    return K0Class(std::move(context), std::move(seq));
}

json to_json(const BlockSpace& s) { return json{{"tower", to_json(s.tower())}, {"depth", s.depth()}}; }

BlockSpace block_space_from_json(const json& j)
{
    return BlockSpace(tower_from_json(field(j, "tower")), count(field(j, "depth")));
}

json to_json(const PropagationOperator& t)
{
    return json{{"space", to_json(t.space())}, {"entries", entries_json(t.matrix())}};
}

PropagationOperator operator_from_json(const json& j)
{
    BlockSpace space = block_space_from_json(field(j, "space"));
    SparseMatrix m(space.size());
    for (const auto& e : array_field(j, "entries")) {
        if (!e.is_array() || e.size() != 3) throw malformed_input("operator entries are [row, col, value]");
        const std::uint64_t row = count(e[0]), col = count(e[1]);
        if (row >= space.size() || col >= space.size()) throw malformed_input("operator entry outside the space");
        const rational value = e[2].is_string() ? parse_rational(e[2].get<std::string>()) : rational(integer(e[2]));
        m.set(row, col, m.get(row, col) + value);
    }
    return PropagationOperator(std::move(space), std::move(m));
}

json to_json(const BlockTuple& b)
{
    json blocks = json::array();
    for (const auto& m : b.blocks) blocks.push_back(json{{"size", m.dim()}, {"entries", entries_json(m)}});
    return json{{"level", b.n}, {"blocks", blocks}};
}

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw malformed_input(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump() + "\n"; }

} // namespace lfroe::io
