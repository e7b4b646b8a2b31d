#pragma once

// Artin transfer homomorphisms computed from coset transversals, transfer
// target / kernel types per layer, and the iterated second-order data that
// separates groups sharing a first-order pattern.

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "artin/lattice.hpp"
#include "artin/pcgroup.hpp"

namespace artin {

// kernel of an induced transfer on G/G': 0 encodes the total kernel, j >= 1
// the j-th canonical layer-1 line; the subspace basis is kept for the
// non-elementary and higher-rank cases
struct KernelCode {
  int code = -1;     // 0 total, j >= 1 line index, -1 unencodable
  int dim = 0;       // dimension of the kernel inside G/G'
  GfMat basis;       // RREF basis in weight-1 generator coordinates
};

struct TransferMap {
  std::vector<std::vector<Int>> images;  // per weight-1 generator: target coords
  std::vector<Int> moduli;               // target cyclic moduli (nontrivial)
  AbelianType target;
  KernelCode kernel;
};

namespace detail {

// right transversal of U in G (identity first, breadth-first, deterministic)
inline std::vector<Element> right_transversal(const PcGroup& G, const SubgroupOps& ops,
                                              const Subgroup& U) {
  std::vector<Element> reps = {G.identity()};
  std::vector<Element> frontier = reps;
  auto known = [&](const Element& x) {
    for (const Element& r : reps)
      if (ops.contains(U, G.mul(x, G.inv(r)))) return true;
    return false;
  };
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& r : frontier)
      for (int k = 1; k <= G.n; ++k) {
        if (G.weight[k - 1] != 1) continue;
        Element cand = G.mul(r, G.gen(k));
        if (!known(cand)) {
          reps.push_back(cand);
          next.push_back(cand);
        }
      }
    frontier = std::move(next);
  }
  return reps;
}

}  // namespace detail

// transfer value of a single group element through an explicit transversal
inline std::vector<Int> transfer_value(const PcGroup& G, const SubgroupOps& ops,
                                       const SubgroupOps::AbelianisedSubgroup& tgt,
                                       const std::vector<Element>& transversal,
                                       const Element& g) {
  std::vector<Int> acc(tgt.live.size(), 0);
  for (const Element& r : transversal) {
    Element x = G.mul(r, g);
    // find the representative of the coset U (r g)
    const Element* dest = nullptr;
    for (const Element& r2 : transversal)
      if (ops.contains(tgt.U, G.mul(x, G.inv(r2)))) {
        dest = &r2;
        break;
      }
    if (!dest) throw std::logic_error("transversal does not cover the coset");
    Element h = G.mul(x, G.inv(*dest));
    std::vector<Int> c = tgt.project(ops, h);
    for (size_t i = 0; i < acc.size(); ++i) {
      acc[i] += c[i];
      acc[i] %= tgt.live_moduli[i];
    }
  }
  return acc;
}

// Artin transfer G -> U/U' for G' <= U <= G, as images of the weight-1
// generators plus the kernel of the induced map on G/G'.
inline TransferMap artin_transfer(const PcGroup& G, const Subgroup& U,
                                  const std::vector<Element>* fixed_transversal = nullptr) {
  SubgroupOps ops(G);
  // verify G' <= U
  Subgroup der = ops.derived_subgroup();
  for (const Element& x : der.igs)
    if (!ops.contains(U, x))
      throw std::domain_error("artin_transfer: subgroup does not contain the derived subgroup");

  SubgroupOps::AbelianisedSubgroup tgt = ops.abelianised(U);
  std::vector<Element> transversal =
      fixed_transversal ? *fixed_transversal : detail::right_transversal(G, ops, U);

  TransferMap tm;
  tm.target = tgt.type;
  tm.moduli = tgt.live_moduli;
  std::vector<int> gens1;
  for (int k = 1; k <= G.n; ++k)
    if (G.weight[k - 1] == 1) gens1.push_back(k);
  for (int k : gens1) tm.images.push_back(transfer_value(G, ops, tgt, transversal, G.gen(k)));

  // kernel of the induced map on G/G' (elementary of rank d here)
  int d = static_cast<int>(gens1.size());
  std::vector<int> radix(d, G.p);
  GfVec v(d, 0);
  GfMat kernel_vecs;
  while (true) {
    bool zero = true;
    std::vector<Int> sum(tm.moduli.size(), 0);
    for (int i = 0; i < d; ++i)
      if (v[i]) {
        zero = false;
        for (size_t t = 0; t < sum.size(); ++t)
          sum[t] = (sum[t] + v[i] * tm.images[i][t]) % tm.moduli[t];
      }
    bool in_kernel = true;
    for (const Int& s : sum)
      if (s != 0) in_kernel = false;
    if (!zero && in_kernel) kernel_vecs.push_back(v);
    int t = 0;
    while (t < d) {
      if (++v[t] < G.p) break;
      v[t] = 0;
      ++t;
    }
    if (t == d) break;
  }
  tm.kernel.basis = gf_rref(kernel_vecs, G.p);
  tm.kernel.dim = static_cast<int>(tm.kernel.basis.size());
  return tm;
}

// ---------------------------------------------------------------------------
// Layered pattern data
// ---------------------------------------------------------------------------

struct SecondOrderBlock {
  AbelianType tau0H;
  std::vector<AbelianType> tau1H;  // canonical sequence order
  std::vector<AbelianType> tau2H;  // canonical sequence order (may be empty layer)

  bool operator==(const SecondOrderBlock& o) const {
    return tau0H == o.tau0H && tau1H == o.tau1H && tau2H == o.tau2H;
  }
};

inline bool block_before(const SecondOrderBlock& a, const SecondOrderBlock& b) {
  if (!(a.tau0H == b.tau0H)) return type_before(a.tau0H, b.tau0H);
  if (a.tau1H != b.tau1H) return type_list_before(a.tau1H, b.tau1H);
  if (a.tau2H != b.tau2H) return type_list_before(a.tau2H, b.tau2H);
  return false;
}

struct ArtinPattern {
  AbelianType tau0;
  bool elementary = true;         // layered data requires an elementary tau0
  std::vector<AbelianType> tau1;  // canonical sequence order
  std::string kappa1;             // digit string in canonical layer order (rank 2)
  std::vector<KernelCode> kappa1_codes;
  AbelianType tau2;               // abelianization of G' (bottom layer, rank 2 case)
  KernelCode kappa_bottom;        // kernel of the transfer to G' (expected total)
  std::vector<SecondOrderBlock> blocks;  // canonical block order
  bool has_second_order = false;
};

namespace detail {

inline int line_index_of(const GfMat& rref_basis, int p, int rho) {
  // canonical index (1-based) of a 1-dimensional subspace among gf_subspaces(rho, 1, p)
  static std::map<std::pair<int, int>, std::vector<GfMat>> cache;
  auto key = std::make_pair(rho, p);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gf_subspaces(rho, 1, p)).first;
  for (size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] == rref_basis) return static_cast<int>(i) + 1;
  return -1;
}

}  // namespace detail

inline KernelCode encode_kernel(KernelCode k, int p, int rho) {
  if (k.dim == rho) {
    k.code = 0;
  } else if (k.dim == 1) {
    k.code = detail::line_index_of(k.basis, p, rho);
  } else {
    k.code = -1;
  }
  return k;
}

// transfer kernel codes along a layer, aligned with the canonical ordering
inline std::vector<KernelCode> tkt(const PcGroup& G, const Layer& layer, int rho) {
  std::vector<KernelCode> out;
  for (const Subgroup& H : layer.subgroups) {
    TransferMap tm = artin_transfer(G, H);
    out.push_back(encode_kernel(tm.kernel, G.p, rho));
  }
  return out;
}

inline std::vector<AbelianType> ttt(const PcGroup& G, const Layer& layer) {
  SubgroupOps ops(G);
  std::vector<AbelianType> out;
  for (const Subgroup& H : layer.subgroups) out.push_back(ops.abelian_quotient_type(H));
  return out;
}

inline std::string kernel_digits(const std::vector<KernelCode>& ks) {
  std::string s;
  for (const KernelCode& k : ks) {
    if (k.code < 0 || k.code > 9) return "";  // not digit-encodable
    s += static_cast<char>('0' + k.code);
  }
  return s;
}

// full restricted pattern; second order (and the per-H second layer) on demand
inline ArtinPattern artin_pattern(const PcGroup& G, bool second_order = true,
                                  bool multilayer = true) {
  SubgroupOps ops(G);
  ArtinPattern ap;
  ap.tau0 = ops.abelianization();
  for (int e : ap.tau0.e)
    if (e != 1) {
      ap.elementary = false;
      return ap;  // the layered pattern is only defined for elementary tau0
    }
  std::vector<Layer> lyr = layers(G);
  int rho = ap.tau0.rank();
  const Layer& l1 = lyr[1];

  std::vector<AbelianType> t1;
  for (const Subgroup& H : l1.subgroups) t1.push_back(ops.abelian_quotient_type(H));
  ap.kappa1_codes = tkt(G, l1, rho);
  ap.kappa1 = kernel_digits(ap.kappa1_codes);
  ap.tau1 = order_types(t1, TypeOrder::Ordered);

  const Layer& bottom = lyr[rho];
  ap.tau2 = ops.abelian_quotient_type(bottom.subgroups[0]);
  {
    TransferMap tm = artin_transfer(G, bottom.subgroups[0]);
    ap.kappa_bottom = encode_kernel(tm.kernel, G.p, rho);
  }

  if (second_order) {
    ap.has_second_order = true;
    for (const Subgroup& H : l1.subgroups) {
      SecondOrderBlock b;
      b.tau0H = ops.abelian_quotient_type(H);
      std::vector<AbelianType> t;
      for (const Subgroup& V : layer_of_subgroup(G, H, 1)) t.push_back(ops.abelian_quotient_type(V));
      b.tau1H = order_types(t, TypeOrder::Ordered);
      if (multilayer) {
        std::vector<AbelianType> t2;
        for (const Subgroup& W : layer_of_subgroup(G, H, 2))
          t2.push_back(ops.abelian_quotient_type(W));
        b.tau2H = order_types(t2, TypeOrder::Ordered);
      }
      ap.blocks.push_back(std::move(b));
    }
    std::sort(ap.blocks.begin(), ap.blocks.end(), block_before);
  }
  return ap;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_block(const SecondOrderBlock& b, bool with_tau2) {
  std::string s = "[" + render_type(b.tau0H) + ";" + render_type_list(b.tau1H);
  if (with_tau2) s += ";" + (b.tau2H.empty() ? std::string("0") : render_type_list(b.tau2H));
  s += "]";
  return s;
}

inline std::string render_second_order(const std::vector<SecondOrderBlock>& blocks,
                                       bool with_tau2) {
  std::string s;
  size_t i = 0;
  while (i < blocks.size()) {
    size_t j = i;
    std::string cur = render_block(blocks[i], with_tau2);
    while (j < blocks.size() && render_block(blocks[j], with_tau2) == cur) ++j;
    if (!s.empty()) s += ' ';
    s += cur;
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

// canonical one-line form of the full multilayer pattern
inline std::string render_pattern(const ArtinPattern& ap, bool with_tau2 = true) {
  std::string s = render_type(ap.tau0) + "; ";
  s += render_second_order(ap.blocks, with_tau2);
  return s;
}

inline std::string render_ipad(const ArtinPattern& ap) {
  return "[" + render_type(ap.tau0) + ";" + render_type_list(ap.tau1) + "]";
}

// ---------------------------------------------------------------------------
// Canonical transfer kernel types (rank 2): simultaneous relabeling of the
// four maximal subgroups acts on positions and nonzero values by the same
// permutation; the canonical form is the lexicographic minimum of the orbit.
// ---------------------------------------------------------------------------

inline std::string canonical_tkt(const std::string& kappa) {
  if (kappa.size() != 4) throw std::invalid_argument("canonical_tkt expects 4 digits");
  for (char c : kappa)
    if (c < '0' || c > '4') throw std::invalid_argument("canonical_tkt: digits must be 0..4");
  std::array<int, 4> perm = {1, 2, 3, 4};
  std::string best;
  do {
    // new kernel at position i: pi(kappa(pi^-1(i)))
    std::array<int, 5> pinv{};
    for (int i = 0; i < 4; ++i) pinv[perm[i]] = i + 1;
    std::string cand(4, '0');
    for (int i = 1; i <= 4; ++i) {
      int old_pos = pinv[i];
      int old_val = kappa[old_pos - 1] - '0';
      int new_val = old_val == 0 ? 0 : perm[old_val - 1];
      cand[i - 1] = static_cast<char>('0' + new_val);
    }
    if (best.empty() || cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool tkt_equivalent(const std::string& a, const std::string& b) {
  return canonical_tkt(a) == canonical_tkt(b);
}

// named principalization types with a representative recoverable here; the
// remaining named types (F.7, F.11, F.12, F.13, d.19, d.23, d.25) ship
// without digit representatives
inline const std::vector<std::pair<std::string, std::string>>& named_tkt_representatives() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"A.1", "1111"}, {"D.5", "1133"},  {"D.10", "3144"}, {"E.6", "1122"},
      {"E.8", "2234"}, {"E.9", "2334"},  {"E.14", "3122"}, {"G.16", "2134"},
      {"G.19", "2143"}, {"H.4", "4111"}, {"a.1", "0000"},  {"a.2", "1000"},
      {"a.3", "2000"}, {"b.10", "2100"}, {"c.18", "0122"}, {"c.21", "2034"},
  };
  return table;
}

inline std::string tkt_type_name(const std::string& kappa) {
  std::string canon = canonical_tkt(kappa);
  for (auto& [name, rep] : named_tkt_representatives())
    if (canonical_tkt(rep) == canon) return name;
  return "unnamed";
}

// number of total kernels (zeros) in a digit string
inline int total_kernel_count(const std::string& kappa) {
  return static_cast<int>(std::count(kappa.begin(), kappa.end(), '0'));
}

// ---------------------------------------------------------------------------
// Defect of commutativity
// ---------------------------------------------------------------------------

// Dual characterization: members of coclass >= 2 read the defect off the
// centre (bicyclic (p,p) vs cyclic of order p); maximal-class groups read it
// off the polarized first-layer component A(3, c-k).  Degenerate class <= 1
// is 0 by convention.  Throws when neither rule applies.
inline int defect(const PcGroup& G) {
  SubgroupOps ops(G);
  AbelianType ab = ops.abelianization();
  if (ab.rank() != 2 || ab.e != std::vector<int>{1, 1})
    throw std::domain_error("defect: requires elementary abelianization of rank 2");
  int c = ops.nilpotency_class();
  if (c <= 1) return 0;
  int cc = G.n - c;
  if (cc >= 2) {
    if (ops.derived_length() > 2) throw std::domain_error("defect: group is not metabelian");
    AbelianType z = ops.abelian_quotient_type(ops.centre());
    if (z.e == std::vector<int>{1, 1}) return 0;
    if (z.e == std::vector<int>{1}) return 1;
    throw std::domain_error("defect: centre is neither bicyclic (p,p) nor cyclic of order p");
  }
  // maximal class: isolate the polarized component
  std::vector<AbelianType> t1 = artin_pattern(G, false).tau1;
  std::map<std::string, int> freq;
  for (const AbelianType& t : t1) freq[render_type(t)]++;
  AbelianType polarized;
  bool found = false;
  for (const AbelianType& t : t1)
    if (freq[render_type(t)] < 3) {
      polarized = t;
      found = true;
      break;
    }
  if (!found) polarized = t1[0];  // all four equal
  int k = c - polarized.lo();
  if (k < 0 || k > 1)
    throw std::domain_error("defect: polarized component matches no admissible defect");
  return k;
}

}  // namespace artin
