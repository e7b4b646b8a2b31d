#pragma once

// Layers Lyr_n(G): the normal subgroups between the derived subgroup and G,
// enumerated through subspaces of the elementary quotient, with the canonical
// ordering every downstream digit code relies on.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "artin/pcgroup.hpp"

namespace artin {

// ----- small GF(p) linear algebra -----------------------------------------

using GfVec = std::vector<int>;
using GfMat = std::vector<GfVec>;  // list of rows

inline GfMat gf_rref(GfMat m, int p) {
  size_t rows = m.size();
  if (!rows) return m;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    int inv = detail::unit_inverse(m[r][c], p);
    for (size_t j = 0; j < cols; ++j) m[r][j] = (m[r][j] * inv) % p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      int f = m[i][c] % p;
      if (!f) continue;
      for (size_t j = 0; j < cols; ++j) {
        m[i][j] = (m[i][j] - f * m[r][j]) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline int gf_rank(const GfMat& m, int p) { return static_cast<int>(gf_rref(m, p).size()); }

// reduce v modulo the row space of a RREF matrix
inline GfVec gf_reduce(GfVec v, const GfMat& rref, int p) {
  for (const GfVec& row : rref) {
    size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    int f = v[c] % p;
    if (!f) continue;
    for (size_t j = 0; j < v.size(); ++j) {
      v[j] = (v[j] - f * row[j]) % p;
      if (v[j] < 0) v[j] += p;
    }
  }
  return v;
}

// all subspaces of GF(p)^dim of dimension k, each as a canonical RREF basis,
// in lexicographic order of the basis matrices
inline std::vector<GfMat> gf_subspaces(int dim, int k, int p) {
  std::vector<GfMat> out;
  if (k < 0 || k > dim) return out;
  if (k == 0) {
    out.push_back(GfMat{});
    return out;
  }
  // choose pivot columns, then free entries; a free entry must be zero when
  // it sits in a pivot column of a later row
  std::vector<int> pivots(k);
  std::function<void(int, int)> choose = [&](int idx, int from) {
    if (idx == k) {
      GfMat base(k, GfVec(dim, 0));
      for (int r = 0; r < k; ++r) base[r][pivots[r]] = 1;
      // free positions: (r, c) with c > pivots[r], c not a pivot of any row
      std::vector<std::pair<int, int>> free_pos;
      for (int r = 0; r < k; ++r)
        for (int c = pivots[r] + 1; c < dim; ++c) {
          bool is_pivot = false;
          for (int rr = 0; rr < k; ++rr)
            if (pivots[rr] == c) is_pivot = true;
          if (!is_pivot) free_pos.emplace_back(r, c);
        }
      std::vector<int> vals(free_pos.size(), 0);
      while (true) {
        GfMat m = base;
        for (size_t t = 0; t < free_pos.size(); ++t) m[free_pos[t].first][free_pos[t].second] = vals[t];
        out.push_back(m);
        size_t t = 0;
        while (t < vals.size()) {
          if (++vals[t] < p) break;
          vals[t] = 0;
          ++t;
        }
        if (t == vals.size()) break;
      }
      return;
    }
    for (int c = from; c <= dim - (k - idx); ++c) {
      pivots[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ----- canonical form of an induced generating sequence ---------------------

// unique reduced form: leading coefficients 1 and zeros at the leading
// positions of the later members; gives a deterministic total order on
// subgroups.  Ascending processing keeps cleared positions clean (clearing
// with a later member only touches coordinates at or beyond its lead).
inline Subgroup canonical_igs(const PcGroup& G, Subgroup U) {
  auto& v = U.igs;
  for (size_t t = 0; t < v.size(); ++t) {
    int l = v[t].lead();
    int b = v[t].v[l - 1];
    if (b != 1) v[t] = G.pow(v[t], detail::unit_inverse(b, G.p));
    for (size_t s = 0; s < t; ++s) {
      int c = v[s].v[l - 1];
      if (c) v[s] = G.mul(v[s], G.pow(v[t], -c));
    }
  }
  return U;
}

inline std::vector<uint8_t> subgroup_key(const PcGroup& G, const Subgroup& U) {
  Subgroup c = canonical_igs(G, U);
  std::vector<uint8_t> key;
  key.push_back(static_cast<uint8_t>(c.igs.size()));
  for (const Element& e : c.igs) key.insert(key.end(), e.v.begin(), e.v.end());
  return key;
}

// ----- layers ---------------------------------------------------------------

struct Layer {
  int n = 0;
  std::vector<Subgroup> subgroups;
};

namespace detail {

// images of the weight-1 generators span G/G'; lift a coefficient vector
inline Element lift_vector(const PcGroup& G, const std::vector<int>& gens1, const GfVec& v) {
  Element x = G.identity();
  for (size_t i = 0; i < gens1.size(); ++i)
    if (v[i] % G.p) x = G.mul(x, G.pow(G.gen(gens1[i]), v[i] % G.p));
  return x;
}

}  // namespace detail

// All layers of G for an elementary abelianization of rank rho: Lyr_n lists
// the preimages of the codimension-n subspaces of G/G', n = 0..rho.  The
// subgroup order inside each layer follows the lexicographic order of the
// echelonized subspace bases; everything downstream inherits it.
inline std::vector<Layer> layers(const PcGroup& G) {
  SubgroupOps ops(G);
  AbelianType ab = ops.abelianization();
  for (int e : ab.e)
    if (e != 1)
      throw std::domain_error("layers: abelianization is not elementary (" + render_type(ab) + ")");
  int rho = ab.rank();
  std::vector<int> gens1;
  for (int k = 1; k <= G.n; ++k)
    if (G.weight[k - 1] == 1) gens1.push_back(k);
  if (static_cast<int>(gens1.size()) != rho)
    throw std::logic_error("layers: weight-1 generators do not span the elementary quotient");

  Subgroup derived = ops.derived_subgroup();
  std::vector<Layer> out;
  for (int nn = 0; nn <= rho; ++nn) {
    Layer layer;
    layer.n = nn;
    for (const GfMat& base : gf_subspaces(rho, rho - nn, G.p)) {
      std::vector<Element> gens = derived.igs;
      for (const GfVec& row : base) gens.push_back(detail::lift_vector(G, gens1, row));
      layer.subgroups.push_back(canonical_igs(G, ops.closure(std::move(gens))));
    }
    out.push_back(std::move(layer));
  }
  return out;
}

// index-p subgroups of U that contain U' (equivalently all maximal subgroups)
inline std::vector<Subgroup> maximal_subgroups(const PcGroup& G, const Subgroup& U) {
  SubgroupOps ops(G);
  // Frattini subgroup U' U^p
  std::vector<Element> fr;
  for (size_t a = 0; a < U.igs.size(); ++a) {
    fr.push_back(G.pow(U.igs[a], G.p));
    for (size_t b = a + 1; b < U.igs.size(); ++b)
      fr.push_back(G.commutator(U.igs[a], U.igs[b]));
  }
  Subgroup phi = ops.closure(std::move(fr), U.igs);
  return [&] {
    const int m = static_cast<int>(U.igs.size());
    // coordinates of the Frattini sequence in U's basis
    GfMat rel;
    for (const Element& f : phi.igs) {
      std::vector<int> c = ops.coordinates(U, f);
      rel.push_back(GfVec(c.begin(), c.end()));
    }
    GfMat rr = gf_rref(rel, G.p);
    std::vector<int> freecols;
    {
      std::vector<bool> ispiv(m, false);
      for (const GfVec& row : rr) {
        size_t c = 0;
        while (c < row.size() && !row[c]) ++c;
        if (c < row.size()) ispiv[c] = true;
      }
      for (int c = 0; c < m; ++c)
        if (!ispiv[c]) freecols.push_back(c);
    }
    int rank = static_cast<int>(freecols.size());
    std::vector<Subgroup> maxs;
    for (const GfMat& hy : gf_subspaces(rank, rank - 1, G.p)) {
      std::vector<Element> gens = phi.igs;
      for (const GfVec& row : hy) {
        Element x = G.identity();
        for (int t = 0; t < rank; ++t)
          if (row[t]) x = G.mul(x, G.pow(U.igs[freecols[t]], row[t]));
        gens.push_back(x);
      }
      maxs.push_back(canonical_igs(G, ops.closure(std::move(gens))));
    }
    return maxs;
  }();
}

// subgroups of index p^nn in U containing U', via iterated maximal subgroups
inline std::vector<Subgroup> layer_of_subgroup(const PcGroup& G, const Subgroup& U, int nn) {
  SubgroupOps ops(G);
  if (nn == 0) return {canonical_igs(G, U)};
  Subgroup du = ops.derived(U);
  std::vector<Subgroup> level = {U};
  for (int step = 0; step < nn; ++step) {
    std::vector<Subgroup> next;
    std::vector<std::vector<uint8_t>> seen;
    for (const Subgroup& V : level) {
      // maximal subgroups of V containing U': hyperplanes over Phi(V) U'
      std::vector<Element> fr = du.igs;
      for (size_t a = 0; a < V.igs.size(); ++a) {
        fr.push_back(G.pow(V.igs[a], G.p));
        for (size_t b = a + 1; b < V.igs.size(); ++b)
          fr.push_back(G.commutator(V.igs[a], V.igs[b]));
      }
      Subgroup phi = ops.closure(std::move(fr), V.igs);
      const int m = static_cast<int>(V.igs.size());
      GfMat rel;
      for (const Element& f : phi.igs) {
        std::vector<int> c = ops.coordinates(V, f);
        rel.push_back(GfVec(c.begin(), c.end()));
      }
      GfMat rr = gf_rref(rel, G.p);
      std::vector<int> freecols;
      std::vector<bool> ispiv(m, false);
      for (const GfVec& row : rr) {
        size_t c = 0;
        while (c < row.size() && !row[c]) ++c;
        if (c < row.size()) ispiv[c] = true;
      }
      for (int c = 0; c < m; ++c)
        if (!ispiv[c]) freecols.push_back(c);
      int rank = static_cast<int>(freecols.size());
      for (const GfMat& hy : gf_subspaces(rank, rank - 1, G.p)) {
        std::vector<Element> gens = phi.igs;
        for (const GfVec& row : hy) {
          Element x = G.identity();
          for (int t = 0; t < rank; ++t)
            if (row[t]) x = G.mul(x, G.pow(V.igs[freecols[t]], row[t]));
          gens.push_back(x);
        }
        Subgroup W = canonical_igs(G, ops.closure(std::move(gens)));
        std::vector<uint8_t> key = subgroup_key(G, W);
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
          seen.push_back(key);
          next.push_back(W);
        }
      }
    }
    // keep only those containing U' (automatic for step 1; checked for deeper)
    if (step + 1 == nn && nn >= 2) {
      std::vector<Subgroup> filtered;
      for (const Subgroup& W : next) {
        bool ok = true;
        for (const Element& x : du.igs)
          if (!ops.contains(W, x)) {
            ok = false;
            break;
          }
        if (ok) filtered.push_back(W);
      }
      next = std::move(filtered);
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [&](const Subgroup& a, const Subgroup& b) {
    return subgroup_key(G, a) < subgroup_key(G, b);
  });
  return level;
}

}  // namespace artin
