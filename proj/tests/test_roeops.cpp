#include <doctest.h>

#include <random>

#include "lfroe/errors.hpp"
#include "lfroe/roeops.hpp"

using namespace lfroe;

namespace {

const Tower binary = Tower::periodic({big_int(2)});

SparseMatrix diag(std::initializer_list<int> d)
{
    SparseMatrix m(d.size());
    std::size_t i = 0;
    for (int x : d) m.set(i, i, x), ++i;
    return m;
}

PropagationOperator random_operator(const BlockSpace& s, distance_t max_prop, std::size_t entries,
                                    std::mt19937_64& rng)
{
    SparseMatrix m(s.size());
    while (m.entries().size() < entries) {
        const point x = rng() % s.size(), y = rng() % s.size();
        if (distance(s, x, y) > max_prop) continue;
        m.set(x, y, rational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
    }
    return PropagationOperator(s, m);
}

BlockTuple random_diagonal_projection(const Tower& t, level n, std::size_t count, std::mt19937_64& rng)
{
    const std::uint64_t k = to_u64(tower_order(t, n));
    BlockTuple p{n, {}};
    for (std::size_t b = 0; b < count; ++b) {
        SparseMatrix m(k);
        for (std::uint64_t i = 0; i < k; ++i)
            if (rng() % 2) m.set(i, i, 1);
        p.blocks.push_back(m);
    }
    return p;
}

} // namespace

TEST_CASE("sparse matrices")
{
    auto m = SparseMatrix::unit(3, 0, 1);
    CHECK(m.get(0, 1) == 1);
    m.set(0, 1, 0);
    CHECK(m.is_zero());
    CHECK(SparseMatrix::identity(4).trace() == 4);
    CHECK(SparseMatrix::unit(3, 0, 1) * SparseMatrix::unit(3, 1, 2) == SparseMatrix::unit(3, 0, 2));
    CHECK((SparseMatrix::unit(3, 0, 1) * SparseMatrix::unit(3, 0, 2)).is_zero());
    CHECK(is_projection(diag({1, 0, 1})));
    CHECK_FALSE(is_projection(diag({2, 0})));
    CHECK_FALSE(is_projection(SparseMatrix::unit(2, 0, 1)));
    SparseMatrix half(2);
    half.set(0, 0, rational(1, 2));
    half.set(0, 1, rational(1, 2));
    half.set(1, 0, rational(1, 2));
    half.set(1, 1, rational(1, 2));
    CHECK(is_projection(half));
}

TEST_CASE("propagation examples")
{
    const BlockSpace s(binary, 3);
    CHECK(propagation(PropagationOperator::identity(s)) == 0);
    CHECK(propagation(PropagationOperator::unit(s, 1, 2)) == 2);
    CHECK(propagation(PropagationOperator(s)) == 0);
}

TEST_CASE("ring operations")
{
    const BlockSpace s(binary, 3);
    CHECK(compose(PropagationOperator::unit(s, 0, 1), PropagationOperator::unit(s, 1, 2)) ==
          PropagationOperator::unit(s, 0, 2));
    const auto a = PropagationOperator::unit(s, 3, 5);
    CHECK(add(a, PropagationOperator(s)) == a);
    CHECK(adjoint(PropagationOperator::unit(s, 0, 3)) == PropagationOperator::unit(s, 3, 0));
    CHECK(propagation(adjoint(PropagationOperator::unit(s, 0, 3))) == propagation(PropagationOperator::unit(s, 0, 3)));
    CHECK_THROWS_AS(add(a, PropagationOperator(BlockSpace(binary, 2))), context_mismatch);
    CHECK_THROWS(PropagationOperator(s, SparseMatrix(3)));
}

TEST_CASE("block_decompose examples")
{
    const BlockSpace s(binary, 2);
    const auto id = block_decompose(PropagationOperator::identity(s), 1);
    CHECK(id.n == 1);
    REQUIRE(id.blocks.size() == 2);
    CHECK(id.blocks[0] == SparseMatrix::identity(2));
    CHECK(id.blocks[1] == SparseMatrix::identity(2));

    const auto e01 = block_decompose(PropagationOperator::unit(s, 0, 1), 1);
    CHECK(e01.blocks[0] == SparseMatrix::unit(2, 0, 1));
    CHECK(e01.blocks[1].is_zero());

    CHECK_THROWS_AS(block_decompose(PropagationOperator::unit(s, 1, 2), 1), not_block_diagonal);
    CHECK(recompose(s, e01) == PropagationOperator::unit(s, 0, 1));
}

TEST_CASE("connecting_map")
{
    BlockTuple t{0, {}};
    for (int i = 1; i <= 4; ++i) t.blocks.push_back(diag({i}));
    const auto up = connecting_map(binary, 0, t);
    CHECK(up.n == 1);
    REQUIRE(up.blocks.size() == 2);
    CHECK(up.blocks[0] == diag({1, 2}));
    CHECK(up.blocks[1] == diag({3, 4}));

    BlockTuple odd{0, {diag({1}), diag({1}), diag({1})}};
    CHECK_THROWS(connecting_map(binary, 0, odd));
}

TEST_CASE("trace_vector examples")
{
    const BlockSpace s(binary, 3);
    const auto id = block_decompose(PropagationOperator::identity(s), 2);
    CHECK(trace_vector(id, true) == std::vector<big_int>{4, 4});
    CHECK(trace_vector(block_decompose(PropagationOperator(s), 1), true) == std::vector<big_int>(4, 0));
    BlockTuple p{1, {diag({1, 0}), diag({1, 0})}};
    CHECK(trace_vector(p, true) == std::vector<big_int>{1, 1});
    BlockTuple notp{1, {diag({2, 0})}};
    CHECK_THROWS_AS(trace_vector(notp, true), not_projection);
    CHECK(trace_vector(notp, false) == std::vector<big_int>{2});
    SparseMatrix half(2);
    half.set(0, 0, rational(1, 2));
    CHECK_THROWS_AS(trace_vector(BlockTuple{1, {half}}, false), precondition_violation);
}

TEST_CASE("mvn_partial_isometry examples")
{
    BlockTuple p{1, {diag({1, 0}), diag({1, 0})}};
    BlockTuple q{1, {diag({0, 1}), diag({0, 1})}};
    const auto self = mvn_partial_isometry(p, p);
    REQUIRE(self.has_value());
    CHECK(*self == p);

    const auto v = mvn_partial_isometry(p, q);
    REQUIRE(v.has_value());
    for (const auto& b : v->blocks) CHECK(b == SparseMatrix::unit(2, 1, 0));

    BlockTuple two{1, {diag({1, 1}), diag({1, 1})}};
    CHECK_FALSE(mvn_partial_isometry(p, two).has_value());

    SparseMatrix half(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) half.set(i, j, rational(1, 2));
    CHECK_THROWS_AS(mvn_partial_isometry(BlockTuple{1, {half}}, BlockTuple{1, {diag({1, 0})}}), unsupported_entries);
}

TEST_CASE("conjugate_by_bijection examples")
{
    const auto id = build_back_and_forth(binary, binary, 2);
    const BlockSpace s(binary, id.levels.back().source);
    const auto a = PropagationOperator::unit(s, 1, 3);
    CHECK(conjugate_by_bijection(id, a).matrix() == a.matrix());

    auto moved = id;
    for (std::size_t x = 0; x < moved.map.size(); ++x) moved.map[x] = x ^ 1;
    CHECK(conjugate_by_bijection(moved, a).matrix() == SparseMatrix::unit(s.size(), 0, 2));
    SparseMatrix d(s.size());
    d.set(0, 0, 5);
    d.set(3, 3, -1);
    const auto cd = conjugate_by_bijection(moved, PropagationOperator(s, d)).matrix();
    CHECK(cd.get(1, 1) == 5);
    CHECK(cd.get(2, 2) == -1);
    CHECK(cd.entries().size() == 2);

    const auto b = build_back_and_forth(binary, Tower::periodic({big_int(4)}), 1);
    const BlockSpace big(binary, 4);
    CHECK_THROWS_AS(conjugate_by_bijection(b, PropagationOperator::unit(big, 0, 9)), depth_exhausted);
}

TEST_CASE("property: propagation laws")
{
    std::mt19937_64 rng(42);
    for (const Tower& t : {binary, Tower({big_int(3)}, {big_int(2)}), Tower::periodic({big_int(2), big_int(3)})}) {
        const BlockSpace s(t, 4);
        for (int trial = 0; trial < 100; ++trial) {
            const auto a = random_operator(s, rng() % 5, 1 + rng() % 6, rng);
            const auto b = random_operator(s, rng() % 5, 1 + rng() % 6, rng);
            CHECK(propagation(add(a, b)) <= std::max(propagation(a), propagation(b)));
            CHECK(propagation(compose(a, b)) <= std::max(propagation(a), propagation(b)));
            CHECK(propagation(adjoint(a)) == propagation(a));
            const level n = propagation(a);
            CHECK(recompose(s, block_decompose(a, n)) == a);
        }
    }
}

TEST_CASE("property: functoriality of traces")
{
    std::mt19937_64 rng(8);
    for (const Tower& t : {binary, Tower::periodic({big_int(6)}), Tower({big_int(3)}, {big_int(2)})}) {
        for (level n = 0; n < 4; ++n) {
            const std::size_t count = to_u64(t.ratio(n)) * 2;
            for (int trial = 0; trial < 20; ++trial) {
                const auto p = random_diagonal_projection(t, n, count, rng);
                const auto tr = trace_vector(p, true);
                CHECK(trace_vector(connecting_map(t, n, p), true) == alpha_step(t, n, tr));
                CHECK(k0_equal(k0_class_of(t, p), k0_class_of(t, connecting_map(t, n, p))));
            }
        }
    }
}

TEST_CASE("property: conjugation is a *-homomorphism")
{
    std::mt19937_64 rng(5);
    const Tower target = Tower::periodic({big_int(4)});
    const auto b = build_back_and_forth(binary, target, 2);
    const auto report = verify_bijective_coarse_equivalence(b);
    REQUIRE(report.passed());
    const BlockSpace s(binary, b.levels.back().source);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_operator(s, rng() % 4, 1 + rng() % 5, rng);
        const auto y = random_operator(s, rng() % 4, 1 + rng() % 5, rng);
        const auto cx = conjugate_by_bijection(b, x), cy = conjugate_by_bijection(b, y);
        CHECK(conjugate_by_bijection(b, add(x, y)) == add(cx, cy));
        CHECK(conjugate_by_bijection(b, compose(x, y)) == compose(cx, cy));
        CHECK(conjugate_by_bijection(b, adjoint(x)) == adjoint(cx));
        CHECK(propagation(cx) <= report.modulus[propagation(x)]);
    }
}
