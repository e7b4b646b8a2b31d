#include <doctest.h>

#include <map>

#include "artin/pcgroup.hpp"

using namespace artin;

namespace {

// shared fixture presentations
PcGroup elementary_33() {
  PcGroup g(3, 2, {1, 1});
  g.rebuild_flags();
  recover_definitions(g);
  return g;
}

// Heisenberg group of order 27: x, y, z with [g2,g1] = g3 central
PcGroup heisenberg27() {
  PcGroup g(3, 3, {1, 1, 2});
  g.comm_rhs(2, 1).syl = {{3, 1}};
  g.rebuild_flags();
  recover_definitions(g);
  return g;
}

// the extraspecial group with an order-9 generator: x^3 = z, [g2,g1] = z
PcGroup extraspecial27() {
  PcGroup g(3, 3, {1, 1, 2});
  g.power_rhs(1).syl = {{3, 1}};
  g.comm_rhs(2, 1).syl = {{3, 1}};
  g.rebuild_flags();
  recover_definitions(g);
  return g;
}

// independent multiplication-table oracle for heisenberg27: normal form
// g1^a g2^b g3^c with the closed-form product
struct HeisOracle {
  static std::array<int, 3> mul(std::array<int, 3> u, std::array<int, 3> v) {
    // moving g1^a2 past g2^b1 produces b1*a2 copies of the central g3
    return {(u[0] + v[0]) % 3, (u[1] + v[1]) % 3, (u[2] + v[2] + u[1] * v[0]) % 3};
  }
};

// oracle for extraspecial27: x of order 9 with x^3 = z; the relation
// [g2,g1] = g3 forces y^-1 x y = x z^-1 = x^7, hence y x y^-1 = x^4
struct Extra27Oracle {
  // element x^i y^j, i mod 9, j mod 3
  static std::pair<int, int> mul(std::pair<int, int> u, std::pair<int, int> v) {
    static const int four[3] = {1, 4, 7};  // 4^j mod 9, conjugation by y^j
    int i = (u.first + v.first * four[u.second]) % 9;
    int j = (u.second + v.second) % 3;
    return {i, j};
  }
  static std::pair<int, int> from_nf(const Element& e) {
    // g1^a g2^b g3^c = x^(a+3c) y^b
    return {(e.v[0] + 3 * e.v[2]) % 9, e.v[1]};
  }
};

}  // namespace

TEST_CASE("collection basics") {
  PcGroup g = heisenberg27();
  Element x = g.gen(1), y = g.gen(2);
  CHECK(g.mul(x, g.inv(x)).is_identity());

  // y * x = x y [y,x] = x y z with this presentation's conventions
  Element yx = g.mul(y, x);
  CHECK(yx.v == std::vector<uint8_t>{1, 1, 1});

  // full agreement with the closed-form oracle on all 27 x 27 products
  g.for_each_element([&](const Element& a) {
    g.for_each_element([&](const Element& b) {
      Element c = g.mul(a, b);
      auto oc = HeisOracle::mul({a.v[0], a.v[1], a.v[2]}, {b.v[0], b.v[1], b.v[2]});
      CHECK(c.v == std::vector<uint8_t>{(uint8_t)oc[0], (uint8_t)oc[1], (uint8_t)oc[2]});
    });
  });
}

TEST_CASE("collection in the extraspecial group with an order-9 generator") {
  PcGroup g = extraspecial27();
  // x^3 collects to the central generator
  Element x3 = g.pow(g.gen(1), 3);
  CHECK(x3.v == std::vector<uint8_t>{0, 0, 1});
  CHECK(g.element_order(g.gen(1)) == 9);
  CHECK(g.element_order(g.gen(2)) == 3);

  // oracle agreement on all products
  g.for_each_element([&](const Element& a) {
    g.for_each_element([&](const Element& b) {
      Element c = g.mul(a, b);
      auto want = Extra27Oracle::mul(Extra27Oracle::from_nf(a), Extra27Oracle::from_nf(b));
      CHECK(Extra27Oracle::from_nf(c) == want);
    });
  });
}

TEST_CASE("consistency check") {
  CHECK(elementary_33().consistent());
  CHECK(heisenberg27().consistent());
  CHECK(extraspecial27().consistent());

  // a maximal-class candidate with trivial power relations is a real group
  PcGroup mc(3, 4, {1, 1, 2, 3});
  mc.comm_rhs(2, 1).syl = {{3, 1}};
  mc.comm_rhs(3, 1).syl = {{4, 1}};
  mc.rebuild_flags();
  CHECK(mc.consistent());

  // but g3 = g1^3 commutes with g2 when [g2,g1] is central, so declaring
  // [g3,g2] = g4 breaks an associativity test word
  PcGroup bad(3, 4, {1, 1, 2, 2});
  bad.power_rhs(1).syl = {{3, 1}};
  bad.comm_rhs(2, 1).syl = {{4, 1}};
  bad.comm_rhs(3, 2).syl = {{4, 1}};
  bad.rebuild_flags();
  auto fails = bad.consistency_failures();
  CHECK(!fails.empty());
}

TEST_CASE("normal form count equals the order") {
  for (PcGroup g : {heisenberg27(), extraspecial27()}) {
    // closure of the generators reaches every normal form
    SubgroupOps ops(g);
    Subgroup whole = ops.whole_group();
    CHECK(whole.log_order() == g.n);
    std::set<std::vector<uint8_t>> seen;
    g.for_each_element([&](const Element& x) { seen.insert(x.v); });
    CHECK(seen.size() == 27);
  }
}

TEST_CASE("series, centre, abelianization") {
  PcGroup h = heisenberg27();
  SubgroupOps ops(h);
  Subgroup der = ops.derived_subgroup();
  CHECK(der.log_order() == 1);
  Subgroup z = ops.centre();
  CHECK(z.log_order() == 1);
  CHECK(ops.nilpotency_class() == 2);
  CHECK(ops.coclass() == 1);
  CHECK(ops.derived_length() == 2);
  CHECK(ops.abelianization() == AbelianType({1, 1}));

  PcGroup e = elementary_33();
  SubgroupOps ops2(e);
  CHECK(ops2.derived_subgroup().log_order() == 0);
  CHECK(ops2.nilpotency_class() == 1);
  CHECK(ops2.abelianization() == AbelianType({1, 1}));
}

TEST_CASE("subgroup coordinates and abelian quotients") {
  PcGroup g = extraspecial27();
  SubgroupOps ops(g);
  // the cyclic subgroup generated by x has order 9 and type (2)
  Subgroup cyc = ops.closure({g.gen(1)});
  CHECK(cyc.log_order() == 2);
  CHECK(ops.abelian_quotient_type(cyc) == AbelianType({2}));
  // membership
  CHECK(ops.contains(cyc, g.pow(g.gen(1), 5)));
  CHECK(!ops.contains(cyc, g.gen(2)));
}

TEST_CASE("quotients and metabelianisation") {
  PcGroup h = heisenberg27();
  SubgroupOps ops(h);
  Quotient q = quotient_by(h, ops.derived_subgroup());
  CHECK(q.group.n == 2);
  SubgroupOps qops(q.group);
  CHECK(qops.abelianization() == AbelianType({1, 1}));
  CHECK(q.group.consistent());

  // already metabelian: unchanged order
  PcGroup m = metabelianisation(h);
  CHECK(m.n == h.n);
}

TEST_CASE("presentation file round trip") {
  PcGroup g = extraspecial27();
  std::string text = write_pc(g);
  PcGroup g2 = read_pc(text);
  CHECK(g2.n == g.n);
  CHECK(g2.weight == g.weight);
  CHECK(write_pc(g2) == text);
  CHECK(g2.consistent());

  std::string canonical = "3 3\n1 1 2\ng1^3 = g3\n[g2,g1] = g3\n";
  CHECK(write_pc(read_pc(canonical)) == canonical);
}

TEST_CASE("derivations recover every generator from the weight-1 atoms") {
  PcGroup g = extraspecial27();
  std::map<int, Element> atoms = {{1, g.gen(1)}, {2, g.gen(2)}};
  std::vector<Element> images;
  REQUIRE(evaluate_slp(g, g, atoms, images));
  for (int k = 1; k <= g.n; ++k) CHECK(images[k] == g.gen(k));
  CHECK(images_satisfy_relations(g, g, images));
}
