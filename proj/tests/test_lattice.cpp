#include <doctest.h>

#include "artin/lattice.hpp"
#include "fixtures.hpp"

using namespace artin;

TEST_CASE("gf subspace enumeration") {
  CHECK(gf_subspaces(2, 1, 3).size() == 4);
  CHECK(gf_subspaces(3, 1, 3).size() == 13);
  CHECK(gf_subspaces(3, 2, 3).size() == 13);
  CHECK(gf_subspaces(4, 2, 3).size() == 130);
  // canonical order of the four lines in GF(3)^2
  auto lines = gf_subspaces(2, 1, 3);
  CHECK(lines[0] == GfMat{{0, 1}});
  CHECK(lines[1] == GfMat{{1, 0}});
  CHECK(lines[2] == GfMat{{1, 1}});
  CHECK(lines[3] == GfMat{{1, 2}});
}

TEST_CASE("layers of the elementary group") {
  PcGroup g = fx_elementary_33();
  auto ls = layers(g);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0].subgroups.size() == 1);
  CHECK(ls[1].subgroups.size() == 4);
  CHECK(ls[2].subgroups.size() == 1);
  CHECK(ls[0].subgroups[0].log_order() == 2);
  CHECK(ls[2].subgroups[0].log_order() == 0);
}

TEST_CASE("layers of the order-27 groups") {
  for (PcGroup g : {fx_heisenberg27(), fx_extraspecial27()}) {
    auto ls = layers(g);
    REQUIRE(ls.size() == 3);
    CHECK(ls[1].subgroups.size() == 4);
    for (const Subgroup& h : ls[1].subgroups) CHECK(h.log_order() == 2);
    // bottom layer is the derived subgroup
    SubgroupOps ops(g);
    CHECK(subgroup_key(g, ls[2].subgroups[0]) == subgroup_key(g, ops.derived_subgroup()));
  }
}

TEST_CASE("layer members are normal") {
  for (PcGroup g : {fx_heisenberg27(), fx_extraspecial27()}) {
    SubgroupOps ops(g);
    for (const Layer& l : layers(g))
      for (const Subgroup& h : l.subgroups)
        for (const Element& x : h.igs)
          for (int k = 1; k <= g.n; ++k)
            CHECK(ops.contains(h, g.conj(x, g.gen(k))));
  }
}

TEST_CASE("rejects non-elementary abelianization") {
  // C9 x C3 as a pc group: g1^3 refined into a second generator
  PcGroup g(3, 3, {1, 1, 2});
  g.power_rhs(1).syl = {{3, 1}};
  g.rebuild_flags();
  recover_definitions(g);
  REQUIRE(g.consistent());
  CHECK_THROWS_AS(layers(g), std::domain_error);
}

TEST_CASE("maximal subgroups inside a subgroup") {
  PcGroup g = fx_extraspecial27();
  SubgroupOps ops(g);
  // the cyclic maximal subgroup <x> of order 9 has a unique maximal subgroup
  Subgroup cyc = ops.closure({g.gen(1)});
  auto ms = maximal_subgroups(g, cyc);
  CHECK(ms.size() == 1);
  CHECK(ms[0].log_order() == 1);
  // layer 2 of <x>: the trivial subgroup
  auto l2 = layer_of_subgroup(g, cyc, 2);
  REQUIRE(l2.size() == 1);
  CHECK(l2[0].log_order() == 0);
}

TEST_CASE("canonical igs keys are stable under generating set changes") {
  PcGroup g = fx_heisenberg27();
  SubgroupOps ops(g);
  Subgroup a = ops.closure({g.gen(1), g.gen(3)});
  Subgroup b = ops.closure({g.mul(g.gen(1), g.gen(3)), g.pow(g.gen(3), 2)});
  CHECK(subgroup_key(g, a) == subgroup_key(g, b));
}
