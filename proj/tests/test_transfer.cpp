#include <doctest.h>

#include <random>

#include "artin/transfer.hpp"
#include "fixtures.hpp"

using namespace artin;

TEST_CASE("abelian group: every transfer to a maximal subgroup is the cube map") {
  PcGroup g = fx_elementary_33();
  ArtinPattern ap = artin_pattern(g);
  CHECK(ap.kappa1 == "0000");
  CHECK(render_type_list(ap.tau1) == "(1)^4");
  CHECK(ap.kappa_bottom.code == 0);
  CHECK(render_second_order(ap.blocks, true) == "[1;0;0]^4");
}

TEST_CASE("heisenberg group has type a.1 with four elementary targets") {
  PcGroup g = fx_heisenberg27();
  ArtinPattern ap = artin_pattern(g);
  CHECK(canonical_tkt(ap.kappa1) == canonical_tkt("0000"));
  CHECK(tkt_type_name(ap.kappa1) == "a.1");
  CHECK(render_type_list(ap.tau1) == "(1^2)^4");
  CHECK(render_second_order(ap.blocks, true) == "[1^2;(1)^4;0]^4");
}

TEST_CASE("extraspecial-with-order-9-generator has type A.1") {
  PcGroup g = fx_extraspecial27();
  ArtinPattern ap = artin_pattern(g);
  // all four kernels coincide in one line
  CHECK(tkt_type_name(ap.kappa1) == "A.1");
  CHECK(render_type_list(ap.tau1) == "1^2,(2)^3");
  CHECK(render_second_order(ap.blocks, true) == "[1^2;(1)^4;0] [2;1;0]^3");
}

TEST_CASE("transversal independence") {
  PcGroup g = fx_extraspecial27();
  SubgroupOps ops(g);
  auto ls = layers(g);
  std::mt19937 rng(7);
  for (const Subgroup& H : ls[1].subgroups) {
    TransferMap base = artin_transfer(g, H);
    std::vector<Element> tv = detail::right_transversal(g, ops, H);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Element> shifted;
      // multiply each representative by a random subgroup element on the left
      for (const Element& r : tv) {
        Element h = g.identity();
        for (const Element& u : H.igs)
          h = g.mul(h, g.pow(u, rng() % 3));
        shifted.push_back(g.mul(h, r));
      }
      std::shuffle(shifted.begin() + 1, shifted.end(), rng);
      TransferMap other = artin_transfer(g, H, &shifted);
      CHECK(base.images == other.images);
    }
  }
}

TEST_CASE("bottom layer kernel is total") {
  for (PcGroup g : {fx_elementary_33(), fx_heisenberg27(), fx_extraspecial27()}) {
    ArtinPattern ap = artin_pattern(g, false);
    CHECK(ap.kappa_bottom.code == 0);
  }
}

TEST_CASE("canonical transfer kernel types") {
  CHECK(canonical_tkt("3122") == canonical_tkt("4122"));
  CHECK(tkt_type_name("0000") == "a.1");
  CHECK(tkt_type_name("2143") == "G.19");
  CHECK(tkt_type_name("2122") == "H.4");   // relabeling of (4111)
  CHECK(tkt_type_name("1313") == "E.6");   // relabeling of (1122)
  CHECK(tkt_type_name("2313") == "E.14");
  CHECK(tkt_type_name("1231") == "E.8");
  CHECK(tkt_type_name("2231") == "E.9");
  CHECK(tkt_type_name("2434") == "E.9");
  CHECK(tkt_type_name("0313") == "c.18");
  CHECK(tkt_type_name("3313") == "H.4");

  // idempotent and constant on orbits under random simultaneous relabeling
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string k(4, '0');
    for (char& c : k) c = static_cast<char>('0' + rng() % 5);
    std::string canon = canonical_tkt(k);
    CHECK(canonical_tkt(canon) == canon);
    std::array<int, 4> perm = {1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::array<int, 5> pinv{};
    for (int i = 0; i < 4; ++i) pinv[perm[i]] = i + 1;
    std::string relabeled(4, '0');
    for (int i = 1; i <= 4; ++i) {
      int ov = k[pinv[i] - 1] - '0';
      relabeled[i - 1] = static_cast<char>('0' + (ov == 0 ? 0 : perm[ov - 1]));
    }
    CHECK(canonical_tkt(relabeled) == canon);
  }

  // the sixteen named representatives have pairwise distinct orbits
  auto& names = named_tkt_representatives();
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      CHECK(canonical_tkt(names[i].second) != canonical_tkt(names[j].second));
}

TEST_CASE("defect of commutativity on the small fixtures") {
  CHECK(defect(fx_elementary_33()) == 0);
  CHECK(defect(fx_heisenberg27()) == 0);
  CHECK(defect(fx_extraspecial27()) == 0);
}
