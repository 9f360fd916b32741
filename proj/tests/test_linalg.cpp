#include "test_main.hpp"

#include "d3/linalg.hpp"

using namespace d3;

namespace {
SparseVec vec(std::initializer_list<long long> xs) {
  std::vector<Scalar> d(xs.begin(), xs.end());
  return SparseVec::from_dense(d);
}
} // namespace

TEST_CASE("sparse vector arithmetic") {
  SparseVec a = vec({1, 0, 2});
  SparseVec b = vec({-1, 3, 0});
  CHECK(a + b == vec({0, 3, 2}));
  CHECK((a - a).empty());
  a.axpy(2, b);
  CHECK(a == vec({-1, 6, 2}));
  CHECK(SparseVec::from_entries({{2, 1}, {0, 1}, {2, -1}}) == vec({1}));
}

TEST_CASE("composition and flattening") {
  LinMap f(2, {vec({1, 1}), vec({0, 1})});
  LinMap g(2, {vec({0, 1}), vec({1, 0})});
  LinMap fg = compose(f, g);
  CHECK(fg.apply(vec({1, 0})) == f.apply(g.apply(vec({1, 0}))));
  CHECK(LinMap::unflatten(fg.flatten(), 2, 2) == fg);
}

TEST_CASE("nullspace, solve and rank") {
  std::vector<SparseVec> rows{vec({1, 1, 0}), vec({0, 1, 1})};
  Subspace ns = nullspace(3, rows);
  REQUIRE(ns.dim() == 1);
  for (const auto &r : rows) {
    Scalar dot = 0;
    for (const auto &e : r.entries())
      dot += e.value * ns.basis()[0].at(e.index);
    CHECK(dot.is_zero());
  }
  auto x = solve(3, rows, {Scalar(2), Scalar(3)});
  REQUIRE(x);
  CHECK(x->at(0) + x->at(1) == Scalar(2));
  CHECK(!solve(2, {vec({1, 1}), vec({2, 2})}, {Scalar(1), Scalar(3)}));
  CHECK(rank_of(3, {vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 0, 1})}) == 2);
}

TEST_CASE("subspace coordinates") {
  Subspace s = span_of(3, {vec({1, 1, 0}), vec({0, 1, 1})});
  auto c = s.coordinates(vec({1, 2, 1}));
  REQUIRE(c);
  CHECK(s.combine(*c) == vec({1, 2, 1}));
  CHECK(!s.contains(vec({1, 0, 0})));
}

TEST_CASE("tracked span expresses targets in the inserted vectors") {
  std::vector<SparseVec> vs{vec({1, 2, 0, 1}), vec({0, 1, 1, 0}), vec({1, 3, 1, 1}), vec({2, 0, 0, 5})};
  TrackedSpan t(4);
  for (const auto &v : vs)
    t.insert(v);
  CHECK(t.rank() == 3);
  SparseVec target = vec({3, 1, -1, 6});
  auto c = t.express(target);
  REQUIRE(c);
  SparseVec sum;
  for (const auto &e : c->entries())
    sum.axpy(e.value, vs[e.index]);
  CHECK(sum == target);
  CHECK(!t.express(vec({0, 0, 0, 1})).has_value() == !t.contains(vec({0, 0, 0, 1})));
}

TEST_CASE("prime field elimination") {
  Field f = Field::prime(3);
  std::vector<SparseVec> rows{SparseVec::from_entries({{0, f.one()}, {1, f.one()}, {2, f.one()}})};
  // x + y + z = 0 over F3 contains (1,1,1).
  Subspace ns = nullspace(3, rows);
  CHECK(ns.contains(SparseVec::from_entries({{0, f.one()}, {1, f.one()}, {2, f.one()}})));
}
