#pragma once

// Desk-scale p-group generation: p-covering groups via tails on the
// non-defining relations, nucleus and multiplicator, immediate descendants by
// step size with fingerprint deduplication and an exhaustive generator-image
// isomorphism fallback, and descendant-tree growth.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "artin/transfer.hpp"

namespace artin {

struct PCover {
  PcGroup cover;
  int n_orig = 0;
  int mu = 0;             // p-multiplicator rank
  int nu = 0;             // nuclear rank
  GfMat nucleus;          // RREF basis over the tail coordinates
  int orig_class = 0;     // p-class of the base group

  std::vector<int> tail_weight;          // weight per surviving tail
  std::vector<RelId> relation_order;     // all relations of the base group
  std::vector<GfVec> relation_tailvec;   // tail part of each relation's rhs
  std::vector<bool> relation_has_gpart;  // non-tail part nonempty?
};

namespace detail {

inline GfVec tail_coords(const Element& x, int n_orig, int total) {
  GfVec v(total - n_orig, 0);
  for (int k = n_orig + 1; k <= total; ++k) v[k - 1 - n_orig] = x.v[k - 1];
  return v;
}

inline bool orig_coords_zero(const Element& x, int n_orig) {
  for (int k = 0; k < n_orig; ++k)
    if (x.v[k]) return false;
  return true;
}

}  // namespace detail

// p-covering group by the add-tails construction: one new central generator
// of order p per non-defining relation, then the consistency equations are
// solved to eliminate dependent tails.
inline PCover p_cover(const PcGroup& G) {
  const int p = G.p, n = G.n;
  const int c = G.max_weight();

  // tail slots
  std::vector<RelId> rels = detail::all_relations(G);
  std::vector<int> tail_of(rels.size(), -1);
  int T = 0;
  for (size_t r = 0; r < rels.size(); ++r) {
    bool is_def = false;
    for (int k = 1; k <= n; ++k)
      if (G.def[k - 1] && *G.def[k - 1] == rels[r]) is_def = true;
    if (!is_def) tail_of[r] = T++;
  }

  // extended presentation
  std::vector<int> w = G.weight;
  for (size_t r = 0; r < rels.size(); ++r)
    if (tail_of[r] >= 0) w.push_back(detail::relation_weight(G, rels[r]));
  PcGroup ext(p, n + T, w);
  for (int i = 1; i <= n; ++i) ext.power_rhs(i) = G.power_rhs(i);
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) ext.comm_rhs(j, i) = G.comm_rhs(j, i);
  for (size_t r = 0; r < rels.size(); ++r) {
    if (tail_of[r] < 0) continue;
    int t = n + 1 + tail_of[r];
    if (rels[r].kind == RelId::Power)
      ext.power_rhs(rels[r].i).syl.emplace_back(t, 1);
    else
      ext.comm_rhs(rels[r].j, rels[r].i).syl.emplace_back(t, 1);
  }
  ext.rebuild_flags();

  // consistency equations over the tails (original-generator test words only;
  // tails are central of order p, so test words touching them are exact)
  GfMat eqs;
  auto add_eq = [&](const Element& l, const Element& r) {
    for (int k = 0; k < n; ++k)
      if (l.v[k] != r.v[k]) throw std::logic_error("p_cover: base group inconsistent");
    GfVec v(T, 0);
    bool nonzero = false;
    for (int t = 0; t < T; ++t) {
      int d = (l.v[n + t] - r.v[n + t]) % p;
      if (d < 0) d += p;
      v[t] = d;
      if (d) nonzero = true;
    }
    if (nonzero) eqs.push_back(v);
  };
  for (int k = 3; k <= n; ++k)
    for (int j = 2; j < k; ++j)
      for (int i = 1; i < j; ++i) {
        Element l = ext.mul(ext.mul_gen(ext.gen(k), j, 1), ext.gen(i));
        Element r = ext.mul(ext.gen(k), ext.mul_gen(ext.gen(j), i, 1));
        add_eq(l, r);
      }
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) {
      Element pj = ext.pow(ext.gen(j), p);
      add_eq(ext.mul(pj, ext.gen(i)), ext.mul(ext.pow(ext.gen(j), p - 1), ext.mul_gen(ext.gen(j), i, 1)));
      Element pi = ext.pow(ext.gen(i), p);
      add_eq(ext.mul(ext.gen(j), pi), ext.mul(ext.mul_gen(ext.gen(j), i, 1), ext.pow(ext.gen(i), p - 1)));
    }
  for (int i = 1; i <= n; ++i) {
    Element pi = ext.pow(ext.gen(i), p);
    add_eq(ext.mul(pi, ext.gen(i)), ext.mul(ext.gen(i), pi));
  }

  GfMat rref = gf_rref(eqs, p);

  // substitution: pivot tail -> combination of free tails
  std::vector<int> pivot_row(T, -1);
  for (size_t r = 0; r < rref.size(); ++r) {
    size_t cpos = 0;
    while (cpos < rref[r].size() && !rref[r][cpos]) ++cpos;
    pivot_row[cpos] = static_cast<int>(r);
  }
  std::vector<int> free_tails;
  for (int t = 0; t < T; ++t)
    if (pivot_row[t] < 0) free_tails.push_back(t);
  const int mu = static_cast<int>(free_tails.size());
  std::vector<int> free_index(T, -1);
  for (int i = 0; i < mu; ++i) free_index[free_tails[i]] = i;

  auto substitute = [&](const GfVec& v) {
    GfVec out(mu, 0);
    for (int t = 0; t < T; ++t) {
      if (!v[t]) continue;
      if (pivot_row[t] < 0) {
        out[free_index[t]] = (out[free_index[t]] + v[t]) % p;
      } else {
        const GfVec& row = rref[pivot_row[t]];
        // t = -(sum of later coefficients)
        for (int s = t + 1; s < T; ++s)
          if (row[s] && free_index[s] >= 0)
            out[free_index[s]] = (out[free_index[s]] + v[t] * (p - row[s])) % p;
          else if (row[s] && pivot_row[s] >= 0)
            throw std::logic_error("p_cover: rref not fully reduced");
      }
    }
    return out;
  };

  PCover out;
  out.n_orig = n;
  out.mu = mu;
  out.orig_class = c;
  std::vector<int> wc = G.weight;
  for (int i = 0; i < mu; ++i) {
    int t = free_tails[i];
    // weight of the owning relation
    int rw = 0;
    for (size_t r = 0; r < rels.size(); ++r)
      if (tail_of[r] == t) rw = detail::relation_weight(G, rels[r]);
    wc.push_back(rw);
    out.tail_weight.push_back(rw);
  }
  PcGroup cov(p, n + mu, wc);
  auto build_rhs = [&](const Word& gw, const GfVec& tails) {
    Word wrd;
    for (auto& [gen, e] : gw.syl) wrd.syl.emplace_back(gen, e);
    for (int i = 0; i < mu; ++i)
      if (tails[i]) wrd.syl.emplace_back(n + 1 + i, tails[i]);
    return wrd;
  };
  out.relation_order = rels;
  for (size_t r = 0; r < rels.size(); ++r) {
    const Word& rhs_ext = detail::relation_rhs(ext, rels[r]);
    Word gpart;
    GfVec tv(T, 0);
    for (auto& [gen, e] : rhs_ext.syl) {
      if (gen <= n)
        gpart.syl.emplace_back(gen, e);
      else
        tv[gen - n - 1] = e;
    }
    GfVec sub = substitute(tv);
    Word full = build_rhs(gpart, sub);
    if (rels[r].kind == RelId::Power)
      cov.power_rhs(rels[r].i) = full;
    else
      cov.comm_rhs(rels[r].j, rels[r].i) = full;
    out.relation_tailvec.push_back(sub);
    out.relation_has_gpart.push_back(!gpart.syl.empty());
  }
  cov.rebuild_flags();
  recover_definitions(cov);
  out.cover = std::move(cov);

  // nucleus: image of P_{c+1}(cover) = [P_c, cover] P_c^p inside the tails
  GfMat nuc;
  for (int x = 1; x <= n; ++x) {
    if (G.weight[x - 1] != c) continue;
    Element px = out.cover.pow(out.cover.gen(x), p);
    if (!detail::orig_coords_zero(px, n))
      throw std::logic_error("p_cover: weight-c power does not land in the multiplicator");
    nuc.push_back(detail::tail_coords(px, n, n + mu));
    for (int b = 1; b <= n; ++b) {
      if (G.weight[b - 1] != 1) continue;
      Element cm = out.cover.commutator(out.cover.gen(x), out.cover.gen(b));
      if (!detail::orig_coords_zero(cm, n))
        throw std::logic_error("p_cover: weight-c commutator does not land in the multiplicator");
      nuc.push_back(detail::tail_coords(cm, n, n + mu));
    }
  }
  out.nucleus = gf_rref(nuc, p);
  out.nu = static_cast<int>(out.nucleus.size());
  return out;
}

inline int relation_rank(const PcGroup& G) { return p_cover(G).mu; }
inline int nuclear_rank(const PcGroup& G) { return p_cover(G).nu; }

// ---------------------------------------------------------------------------
// Fingerprints and isomorphism testing
// ---------------------------------------------------------------------------

struct Fingerprint {
  std::string cheap;
  std::string full;
};

inline std::string lcs_signature(const PcGroup& G) {
  SubgroupOps ops(G);
  std::string s;
  for (const Subgroup& g : ops.lower_central_series()) {
    s += std::to_string(g.igs.size());
    s += '.';
  }
  return s;
}

inline std::string order_histogram(const PcGroup& G) {
  std::map<long, long> h;
  G.for_each_element([&](const Element& x) { h[G.element_order(x)]++; });
  std::string s;
  for (auto& [o, cnt] : h) s += std::to_string(o) + ":" + std::to_string(cnt) + ",";
  return s;
}

inline Fingerprint fingerprint(const PcGroup& G, const ArtinPattern& ap) {
  SubgroupOps ops(G);
  Fingerprint f;
  std::ostringstream cheap;
  cheap << G.n << "|c" << ops.nilpotency_class() << "|d" << ops.derived_length() << "|z"
        << render_type(ops.abelian_quotient_type(ops.centre())) << "|t0" << render_type(ap.tau0);
  if (ap.elementary) {
    cheap << "|t1" << render_type_list(ap.tau1) << "|t2" << render_type(ap.tau2) << "|k"
          << (ap.kappa1.empty() ? std::string("?") : canonical_tkt(ap.kappa1));
  }
  cheap << "|lcs" << lcs_signature(G);
  f.cheap = cheap.str();
  std::ostringstream full;
  full << f.cheap << "|so" << render_second_order(ap.blocks, true);
  if (G.n <= 8) full << "|oh" << order_histogram(G);
  f.full = full.str();
  return f;
}

namespace detail {

struct ElementTable {
  std::vector<Element> elems;
  std::map<std::vector<uint8_t>, int> index;
  std::vector<int> cls;        // conjugacy class id per element
  std::vector<int> cls_size;   // size per class id
  std::vector<long> ord;       // element order

  static ElementTable build(const PcGroup& G) {
    ElementTable t;
    G.for_each_element([&](const Element& x) {
      t.index[x.v] = static_cast<int>(t.elems.size());
      t.elems.push_back(x);
    });
    t.ord.resize(t.elems.size());
    for (size_t i = 0; i < t.elems.size(); ++i) t.ord[i] = G.element_order(t.elems[i]);
    // conjugacy classes: orbit closure under conjugation by the generators
    t.cls.assign(t.elems.size(), -1);
    int nc = 0;
    for (size_t i = 0; i < t.elems.size(); ++i) {
      if (t.cls[i] >= 0) continue;
      std::vector<int> orbit = {static_cast<int>(i)};
      t.cls[i] = nc;
      for (size_t q = 0; q < orbit.size(); ++q)
        for (int k = 1; k <= G.n; ++k) {
          Element y = G.conj(t.elems[orbit[q]], G.gen(k));
          int yi = t.index.at(y.v);
          if (t.cls[yi] < 0) {
            t.cls[yi] = nc;
            orbit.push_back(yi);
          }
        }
      t.cls_size.push_back(static_cast<int>(orbit.size()));
      ++nc;
    }
    return t;
  }
};

}  // namespace detail

// exhaustive generator-image search for two-generator p-groups; images of the
// two weight-1 generators force all others through the stored derivations
inline bool isomorphic(const PcGroup& A, const PcGroup& B) {
  if (A.n != B.n || A.p != B.p) return false;
  {
    std::vector<int> wa = A.weight, wb = B.weight;
    std::sort(wa.begin(), wa.end());
    std::sort(wb.begin(), wb.end());
    if (wa != wb) return false;
  }
  if (A.rank() != 2 || B.rank() != 2)
    throw std::domain_error("isomorphic: generator-image search implemented for rank 2");
  SubgroupOps opsA(A), opsB(B);
  if (opsA.nilpotency_class() != opsB.nilpotency_class()) return false;
  if (opsA.derived_length() != opsB.derived_length()) return false;

  int a1 = 0, a2 = 0;
  for (int k = 1; k <= A.n; ++k)
    if (A.weight[k - 1] == 1) (a1 ? a2 : a1) = k;

  detail::ElementTable tb = detail::ElementTable::build(B);
  long o1 = A.element_order(A.gen(a1));
  long o2 = A.element_order(A.gen(a2));
  // class sizes on the A side
  auto class_size_of = [&](const PcGroup& G, const Element& x) {
    std::set<std::vector<uint8_t>> orbit = {x.v};
    std::vector<Element> q = {x};
    while (!q.empty()) {
      Element e = q.back();
      q.pop_back();
      for (int k = 1; k <= G.n; ++k) {
        Element y = G.conj(e, G.gen(k));
        if (orbit.insert(y.v).second) q.push_back(y);
      }
    }
    return static_cast<int>(orbit.size());
  };
  int cs1 = class_size_of(A, A.gen(a1));
  int cs2 = class_size_of(A, A.gen(a2));

  Subgroup phiB;
  {
    std::vector<Element> fr;
    for (int i = 1; i <= B.n; ++i) {
      fr.push_back(B.pow(B.gen(i), B.p));
      for (int j = i + 1; j <= B.n; ++j) fr.push_back(B.commutator(B.gen(j), B.gen(i)));
    }
    std::vector<Element> gens;
    for (int k = 1; k <= B.n; ++k) gens.push_back(B.gen(k));
    phiB = opsB.closure(std::move(fr), gens);
  }

  std::vector<int> reps;
  {
    std::set<int> seen;
    for (size_t i = 0; i < tb.elems.size(); ++i)
      if (seen.insert(tb.cls[i]).second) reps.push_back(static_cast<int>(i));
  }

  for (int xi : reps) {
    if (tb.ord[xi] != o1 || tb.cls_size[tb.cls[xi]] != cs1) continue;
    const Element& x = tb.elems[xi];
    if (opsB.contains(phiB, x)) continue;
    Subgroup xspan;
    {
      std::vector<Element> g = phiB.igs;
      g.push_back(x);
      xspan = opsB.closure(std::move(g));
    }
    for (size_t yi = 0; yi < tb.elems.size(); ++yi) {
      if (tb.ord[yi] != o2 || tb.cls_size[tb.cls[yi]] != cs2) continue;
      const Element& y = tb.elems[yi];
      if (opsB.contains(xspan, y)) continue;
      std::map<int, Element> atoms = {{a1, x}, {a2, y}};
      std::vector<Element> images;
      if (!evaluate_slp(A, B, atoms, images)) continue;
      if (images_satisfy_relations(A, B, images)) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Immediate descendants
// ---------------------------------------------------------------------------

struct Candidate {
  PcGroup group;
  ArtinPattern pattern;
  Fingerprint fp;
  int multiplicity = 1;  // allowable subgroups that produced this class
};

namespace detail {

// quotient of the cover by an allowable subgroup given as a RREF basis;
// pivot relations at the new class with empty non-tail part keep the new
// generators bare in their defining relations
inline PcGroup cover_quotient(const PcGroup& G, const PCover& pc, const GfMat& trref, int s) {
  const int p = G.p, n = pc.n_orig, mu = pc.mu;
  const int cnew = pc.orig_class + 1;
  std::vector<int> freecols;
  {
    std::vector<bool> ispiv(mu, false);
    for (const GfVec& row : trref) {
      size_t c = 0;
      while (c < row.size() && !row[c]) ++c;
      if (c < row.size()) ispiv[c] = true;
    }
    for (int c = 0; c < mu; ++c)
      if (!ispiv[c]) freecols.push_back(c);
  }
  auto psi0 = [&](const GfVec& v) {
    GfVec red = gf_reduce(v, trref, p);
    GfVec out(s, 0);
    for (int i = 0; i < s; ++i) out[i] = red[freecols[i]];
    return out;
  };

  GfMat pm;
  for (size_t r = 0; r < pc.relation_order.size(); ++r) {
    if (relation_weight(G, pc.relation_order[r]) != cnew) continue;
    if (pc.relation_has_gpart[r]) continue;
    GfVec img = psi0(pc.relation_tailvec[r]);
    GfMat test = pm;
    test.push_back(img);
    if (gf_rank(test, p) > static_cast<int>(pm.size())) {
      pm.push_back(img);
      if (static_cast<int>(pm.size()) == s) break;
    }
  }
  if (static_cast<int>(pm.size()) != s)
    throw std::logic_error("cover_quotient: no clean pivot relations at the new class");

  // A = pm^-1 (row reduction of pm against the identity)
  GfMat A(s, GfVec(s, 0));
  {
    GfMat work = pm;
    for (int i = 0; i < s; ++i) A[i][i] = 1;
    for (int c2 = 0; c2 < s; ++c2) {
      int piv = c2;
      while (piv < s && !work[piv][c2]) ++piv;
      if (piv == s) throw std::logic_error("cover_quotient: singular pivot matrix");
      std::swap(work[c2], work[piv]);
      std::swap(A[c2], A[piv]);
      int inv = unit_inverse(work[c2][c2], p);
      for (int j = 0; j < s; ++j) {
        work[c2][j] = (work[c2][j] * inv) % p;
        A[c2][j] = (A[c2][j] * inv) % p;
      }
      for (int i = 0; i < s; ++i) {
        if (i == c2 || !work[i][c2]) continue;
        int f = work[i][c2];
        for (int j = 0; j < s; ++j) {
          work[i][j] = (work[i][j] - f * work[c2][j]) % p;
          if (work[i][j] < 0) work[i][j] += p;
          A[i][j] = (A[i][j] - f * A[c2][j]) % p;
          if (A[i][j] < 0) A[i][j] += p;
        }
      }
    }
  }
  // we need M with sum_k M[i][k] pm[j][k] = delta_ij, i.e. M = (pm^-1)^T
  auto psi = [&](const GfVec& v) {
    GfVec im = psi0(v);
    GfVec out(s, 0);
    for (int i = 0; i < s; ++i) {
      long acc = 0;
      for (int j = 0; j < s; ++j) acc += A[j][i] * im[j];
      out[i] = static_cast<int>(acc % p);
    }
    return out;
  };

  std::vector<int> w = G.weight;
  for (int i = 0; i < s; ++i) w.push_back(cnew);
  PcGroup child(p, n + s, w);
  for (size_t r = 0; r < pc.relation_order.size(); ++r) {
    const RelId& rel = pc.relation_order[r];
    const Word& cover_rhs = relation_rhs(pc.cover, rel);
    Word rhs;
    for (auto& [gen, e] : cover_rhs.syl)
      if (gen <= n) rhs.syl.emplace_back(gen, e);
    GfVec img = psi(pc.relation_tailvec[r]);
    for (int i = 0; i < s; ++i)
      if (img[i]) rhs.syl.emplace_back(n + 1 + i, img[i]);
    if (rel.kind == RelId::Power)
      child.power_rhs(rel.i) = rhs;
    else
      child.comm_rhs(rel.j, rel.i) = rhs;
  }
  child.rebuild_flags();
  recover_definitions(child);
  return child;
}

}  // namespace detail

// quotients of the p-cover by the allowable subgroups of index p^s in the
// multiplicator, deduplicated up to isomorphism (fingerprint stages first,
// exhaustive generator-image search on collisions up to order 3^8)
inline std::vector<Candidate> descendants(const PcGroup& G, int s,
                                          const PCover* precomputed = nullptr) {
  PCover local;
  if (!precomputed) local = p_cover(G);
  const PCover& pc = precomputed ? *precomputed : local;
  if (s < 1 || s > pc.nu)
    throw std::domain_error("descendants: step size outside 1..nu");
  const int p = G.p, mu = pc.mu;

  struct Raw {
    PcGroup group;
    ArtinPattern first_order;
    std::string cheap;
  };
  std::vector<Raw> raws;
  for (const GfMat& Tsub : gf_subspaces(mu, mu - s, p)) {
    GfMat join = Tsub;
    for (const GfVec& r : pc.nucleus) join.push_back(r);
    if (gf_rank(join, p) != mu) continue;
    PcGroup child = detail::cover_quotient(G, pc, gf_rref(Tsub, p), s);
    ArtinPattern ap = artin_pattern(child, false);
    Fingerprint fp = fingerprint(child, ap);
    raws.push_back({std::move(child), std::move(ap), fp.cheap});
  }

  std::vector<Candidate> classes;
  for (Raw& raw : raws) {
    bool merged = false;
    // full data only for candidates whose cheap key collides with a class
    std::optional<ArtinPattern> full_ap;
    std::optional<Fingerprint> full_fp;
    for (Candidate& cand : classes) {
      if (cand.fp.cheap != raw.cheap) continue;
      if (!full_ap) {
        full_ap = raw.first_order.elementary ? artin_pattern(raw.group) : raw.first_order;
        full_fp = fingerprint(raw.group, *full_ap);
      }
      if (cand.fp.full != full_fp->full) continue;
      if (raw.group.n <= 8) {
        if (isomorphic(raw.group, cand.group)) {
          cand.multiplicity++;
          merged = true;
          break;
        }
      } else {
        cand.multiplicity++;  // fingerprint-only deduplication beyond 3^8
        merged = true;
        break;
      }
    }
    if (!merged) {
      if (!full_ap) {
        full_ap = raw.first_order.elementary ? artin_pattern(raw.group) : raw.first_order;
        full_fp = fingerprint(raw.group, *full_ap);
      }
      classes.push_back({std::move(raw.group), std::move(*full_ap), std::move(*full_fp), 1});
    }
  }

  std::sort(classes.begin(), classes.end(), [](const Candidate& a, const Candidate& b) {
    if (a.fp.full != b.fp.full) return a.fp.full < b.fp.full;
    return write_pc(a.group) < write_pc(b.group);
  });
  return classes;
}

// ---------------------------------------------------------------------------
// Descendant trees
// ---------------------------------------------------------------------------

struct TreeNode {
  PcGroup group;
  int parent = -1;
  int step = 0;
  int ordinal = 0;       // position among the deduplicated siblings
  int multiplicity = 1;  // allowable-subgroup count behind this class
  ArtinPattern pattern;
  Fingerprint fp;
  int cls = 0, coclass = 0, dl = 0;
  int nu = -1;  // nuclear rank (-1: not computed)
  std::string catalog_id;  // filled by the catalog match when known
};

struct GrowPolicy {
  int max_lo = 8;
  std::vector<int> steps = {1, 2};
  bool prune_by_target = false;
  std::vector<AbelianType> target_tau1;  // accumulated form
  std::string target_kappa;              // canonical orbit representative
  bool require_metabelian = false;       // restrict matches (not growth)
};

struct Tree {
  std::vector<TreeNode> nodes;
  bool bound_hit = false;  // capable live vertices remained at max_lo

  std::vector<int> children_of(int idx) const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].parent == idx) out.push_back(static_cast<int>(i));
    return out;
  }
};

namespace detail {

// componentwise quotient order on abelian types: a <= b iff a_i <= b_i with
// padding; a quotient of a group has a dominated type
inline bool type_le(const AbelianType& a, const AbelianType& b) {
  if (a.e.size() > b.e.size()) return false;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

// does some injective matching take every component of "have" below the
// corresponding component of "want"?  (4 components: brute force)
inline bool tau1_can_reach(const std::vector<AbelianType>& have,
                           const std::vector<AbelianType>& want) {
  if (have.size() != want.size()) return false;
  std::vector<int> perm(have.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    bool ok = true;
    for (size_t i = 0; i < perm.size(); ++i)
      if (!type_le(have[i], want[perm[i]])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace detail

inline bool pattern_matches_target(const ArtinPattern& ap, const GrowPolicy& pol) {
  if (!pol.prune_by_target) return true;
  if (!pol.target_kappa.empty() && canonical_tkt(ap.kappa1) != pol.target_kappa) return false;
  if (!pol.target_tau1.empty()) {
    std::vector<AbelianType> want = order_types(pol.target_tau1, TypeOrder::Accumulated);
    std::vector<AbelianType> have = order_types(ap.tau1, TypeOrder::Accumulated);
    if (!(want == have)) return false;
  }
  return true;
}

inline bool node_compatible_with_target(const ArtinPattern& ap, const GrowPolicy& pol) {
  if (!pol.prune_by_target) return true;
  // total kernels only decrease along descent
  if (!pol.target_kappa.empty()) {
    int want = total_kernel_count(pol.target_kappa);
    if (total_kernel_count(canonical_tkt(ap.kappa1)) < want) return false;
  }
  // first-layer types only grow along descent
  if (!pol.target_tau1.empty() &&
      !detail::tau1_can_reach(order_types(ap.tau1, TypeOrder::Accumulated),
                              order_types(pol.target_tau1, TypeOrder::Accumulated)))
    return false;
  return true;
}

inline Tree grow_tree(const PcGroup& root, const GrowPolicy& pol) {
  Tree tree;
  {
    TreeNode nd;
    nd.group = root;
    nd.pattern = artin_pattern(root);
    nd.fp = fingerprint(root, nd.pattern);
    SubgroupOps ops(root);
    nd.cls = ops.nilpotency_class();
    nd.coclass = root.n - nd.cls;
    nd.dl = ops.derived_length();
    tree.nodes.push_back(std::move(nd));
  }
  size_t head = 0;
  while (head < tree.nodes.size()) {
    int idx = static_cast<int>(head);
    ++head;
    PcGroup g = tree.nodes[idx].group;  // copy: nodes vector may reallocate
    if (!node_compatible_with_target(tree.nodes[idx].pattern, pol)) continue;
    PCover pc = p_cover(g);
    tree.nodes[idx].nu = pc.nu;
    if (pc.nu == 0) continue;
    if (g.n >= pol.max_lo) {
      tree.nodes[idx].nu = pc.nu;
      tree.bound_hit = true;
      continue;
    }
    for (int s : pol.steps) {
      if (s < 1 || s > pc.nu || g.n + s > pol.max_lo) continue;
      std::vector<Candidate> kids = descendants(g, s, &pc);
      int ordinal = 1;
      for (Candidate& k : kids) {
        // the trees in scope keep an elementary abelianization; descendants
        // that leave it never return
        if (!k.pattern.elementary) continue;
        TreeNode nd;
        nd.group = std::move(k.group);
        nd.pattern = std::move(k.pattern);
        nd.fp = std::move(k.fp);
        nd.parent = idx;
        nd.step = s;
        nd.ordinal = ordinal++;
        nd.multiplicity = k.multiplicity;
        SubgroupOps ops(nd.group);
        nd.cls = ops.nilpotency_class();
        nd.coclass = nd.group.n - nd.cls;
        nd.dl = ops.derived_length();
        tree.nodes.push_back(std::move(nd));
      }
    }
  }
  return tree;
}

// matches in a grown tree
inline std::vector<int> tree_matches(const Tree& tree, const GrowPolicy& pol) {
  std::vector<int> out;
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    if (pol.require_metabelian && tree.nodes[i].dl > 2) continue;
    if (pattern_matches_target(tree.nodes[i].pattern, pol)) out.push_back(static_cast<int>(i));
  }
  return out;
}

// the unique coclass-preserving capable child chain from a coclass-tree root
inline std::vector<int> mainline_of(Tree& tree, int root_idx, int depth) {
  std::vector<int> path = {root_idx};
  int cur = root_idx;
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int ch : tree.children_of(cur)) {
      if (tree.nodes[ch].step != 1) continue;
      if (tree.nodes[ch].coclass != tree.nodes[root_idx].coclass) continue;
      if (tree.nodes[ch].nu == 0) continue;  // capable vertices only
      if (tree.nodes[ch].nu < 0) {
        PCover pc = p_cover(tree.nodes[ch].group);
        tree.nodes[ch].nu = pc.nu;
        if (pc.nu == 0) continue;
      }
      next.push_back(ch);
    }
    if (next.size() != 1)
      throw std::runtime_error("mainline_of: selection ambiguous or empty at depth " +
                               std::to_string(d + 1));
    path.push_back(next[0]);
    cur = next[0];
  }
  return path;
}

}  // namespace artin
