#include <doctest.h>

#include "artin/pgen.hpp"
#include "fixtures.hpp"

using namespace artin;

TEST_CASE("p-cover of the elementary group") {
  PcGroup g = fx_elementary_33();
  PCover pc = p_cover(g);
  CHECK(pc.mu == 3);                 // two power tails and one commutator tail
  CHECK(pc.cover.n == 5);            // cover order 3^5
  CHECK(pc.cover.consistent());
  CHECK(pc.nu == 3);
}

TEST_CASE("multiplicator ranks used by the forbidden-mainline argument") {
  PcGroup h27 = fx_heisenberg27();
  PCover pc = p_cover(h27);
  CHECK(pc.mu == 4);
  CHECK(pc.nu == 2);
  CHECK(pc.cover.consistent());

  // relation rank of the terminal extraspecial group
  PCover pc4 = p_cover(fx_extraspecial27());
  CHECK(pc4.nu == 0);  // terminal leaf
}

TEST_CASE("descendants of the root") {
  PcGroup g = fx_elementary_33();
  auto kids = descendants(g, 1);
  int elementary = 0;
  for (auto& k : kids)
    if (k.pattern.elementary) ++elementary;
  CHECK(elementary == 2);  // the two branch vertices of the coclass-1 tree
  // every descendant class is consistent and reconstructs the parent
  for (auto& k : kids) CHECK(k.group.consistent());
}

TEST_CASE("descendants of the heisenberg group match the first branch") {
  PcGroup g = fx_heisenberg27();
  auto kids = descendants(g, 1);
  std::vector<std::string> summary;
  for (auto& k : kids)
    if (k.pattern.elementary)
      summary.push_back(render_type_list(k.pattern.tau1) + "|" + tkt_type_name(k.pattern.kappa1));
  std::sort(summary.begin(), summary.end());
  // <81,7>: tau1 = (1^3,(1^2)^3) type a.3; <81,8>: (21,(1^2)^3) a.3;
  // <81,9>: mainline a.1; <81,10>: a.2
  std::vector<std::string> want = {"1^3,(1^2)^3|a.3", "21,(1^2)^3|a.1", "21,(1^2)^3|a.2",
                                   "21,(1^2)^3|a.3"};
  CHECK(summary == want);

  // step 2: the seven sporadic coclass-2 groups of order 243
  auto kids2 = descendants(g, 2);
  int elementary = 0;
  for (auto& k : kids2)
    if (k.pattern.elementary) ++elementary;
  CHECK(elementary == 7);
}

TEST_CASE("parent reconstruction and isomorphism testing") {
  PcGroup g = fx_heisenberg27();
  auto kids = descendants(g, 1);
  for (auto& k : kids) {
    if (!k.pattern.elementary) continue;
    SubgroupOps ops(k.group);
    auto lcs = ops.lower_central_series();
    Quotient q = quotient_by(k.group, lcs.back());
    CHECK(isomorphic(q.group, g));
  }
  // distinct descendant classes are non-isomorphic
  for (size_t a = 0; a < kids.size(); ++a)
    for (size_t b = a + 1; b < kids.size(); ++b)
      CHECK(!isomorphic(kids[a].group, kids[b].group));
}

TEST_CASE("tree growth to order 81 with mainline selection") {
  GrowPolicy pol;
  pol.max_lo = 5;
  Tree tree = grow_tree(fx_elementary_33(), pol);
  // nodes: root(1) + 27:{3,4}(2) + 81:{7..10}(4) + 243 layer
  int count4 = 0, count5 = 0;
  for (auto& nd : tree.nodes) {
    if (nd.group.n == 4) ++count4;
    if (nd.group.n == 5) ++count5;
  }
  CHECK(count4 == 4);
  CHECK(count5 == 13);  // branch B(4): 6 tree children + 7 sporadic coclass-2

  // mainline: root -> heisenberg -> <81,9>
  auto path = mainline_of(tree, 0, 2);
  REQUIRE(path.size() == 3);
  CHECK(tree.nodes[path[1]].group.n == 3);
  CHECK(tkt_type_name(tree.nodes[path[1]].pattern.kappa1) == "a.1");
  CHECK(tree.nodes[path[2]].group.n == 4);
  CHECK(tkt_type_name(tree.nodes[path[2]].pattern.kappa1) == "a.1");
  CHECK(render_type_list(tree.nodes[path[2]].pattern.tau1) == "21,(1^2)^3");

  // depth 0 is the root itself
  CHECK(mainline_of(tree, 0, 0) == std::vector<int>{0});
}

TEST_CASE("targeted growth prunes to the requested pattern") {
  GrowPolicy pol;
  pol.max_lo = 4;
  pol.prune_by_target = true;
  pol.target_kappa = canonical_tkt("2000");
  pol.target_tau1 = {AbelianType({1, 1, 1}), AbelianType({1, 1}), AbelianType({1, 1}),
                     AbelianType({1, 1})};
  Tree tree = grow_tree(fx_elementary_33(), pol);
  auto matches = tree_matches(tree, pol);
  REQUIRE(matches.size() == 1);
  CHECK(tree.nodes[matches[0]].group.n == 4);  // the Sylow 3-subgroup of A9
}
