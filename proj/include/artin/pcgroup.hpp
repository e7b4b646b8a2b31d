#pragma once

// Power-commutator presentations of finite p-groups with normal-form
// collection from the left.  Exponent convention: every pc generator has
// relative order p, so elements are exponent vectors mod p.  Right-hand
// sides reference only generators of strictly larger index; generator
// weights (lower exponent-p central series) are non-decreasing in the index.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "artin/abelian.hpp"

namespace artin {

// word in pc generators: list of (generator, exponent), 0 < exponent < p
struct Word {
  std::vector<std::pair<int, int>> syl;

  bool empty() const { return syl.empty(); }
  bool operator==(const Word& o) const { return syl == o.syl; }
};

// relation slot identifier: power relation of g_i, or commutator [g_j, g_i]
struct RelId {
  enum Kind { Power, Comm } kind = Power;
  int i = 0;
  int j = 0;  // only for Comm, j > i

  bool operator==(const RelId& o) const { return kind == o.kind && i == o.i && j == o.j; }
  bool operator<(const RelId& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (j != o.j) return j < o.j;
    return i < o.i;
  }
};

struct Element {
  std::vector<uint8_t> v;  // v[k-1] = exponent of g_k

  bool is_identity() const {
    for (uint8_t x : v)
      if (x) return false;
    return true;
  }
  // smallest index with nonzero exponent, 0 if identity
  int lead() const {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i]) return static_cast<int>(i) + 1;
    return 0;
  }
  bool operator==(const Element& o) const { return v == o.v; }
  bool operator!=(const Element& o) const { return v != o.v; }
  bool operator<(const Element& o) const { return v < o.v; }
};

// straight-line derivation of a generator from the weight-1 generators;
// used by the isomorphism search to force images of all generators
struct SlpExpr {
  enum Kind { Atom, PowerOfGen, CommOfGens, Conjugate } kind = Atom;
  int a = 0, b = 0;            // generator indices for PowerOfGen / CommOfGens
  Word pre, post;              // value = pre^-1 * base * post^-1  (then ^unit)
  int unit = 1;                // 1 or inverse of the definition coefficient
};

class PcGroup {
 public:
  int p = 3;
  int n = 0;
  std::vector<int> weight;               // [k-1] = weight of g_k
  std::vector<Word> power;               // [i-1] = rhs of g_i^p
  std::vector<std::vector<Word>> comm;   // comm[j-1][i-1] = rhs of [g_j,g_i], j > i
  std::vector<std::optional<RelId>> def; // definition relation per generator
  std::vector<SlpExpr> slp;              // derivation of each generator

  PcGroup() = default;
  PcGroup(int prime, int ngens, std::vector<int> weights)
      : p(prime), n(ngens), weight(std::move(weights)) {
    power.resize(n);
    comm.resize(n);
    for (int j = 0; j < n; ++j) comm[j].resize(j);
    def.resize(n);
    slp.resize(n);
    rebuild_flags();
  }

  const Word& comm_rhs(int j, int i) const { return comm[j - 1][i - 1]; }
  Word& comm_rhs(int j, int i) { return comm[j - 1][i - 1]; }
  const Word& power_rhs(int i) const { return power[i - 1]; }
  Word& power_rhs(int i) { return power[i - 1]; }

  int rank() const {  // number of weight-1 generators
    int d = 0;
    for (int w : weight)
      if (w == 1) ++d;
    return d;
  }
  int max_weight() const {
    int m = 0;
    for (int w : weight) m = std::max(m, w);
    return m;
  }
  int lo() const { return n; }
  Int order() const {
    Int o = 1;
    for (int i = 0; i < n; ++i) o *= p;
    return o;
  }

  void rebuild_flags() {
    comm_nontrivial_.assign(static_cast<size_t>(n) * n, 0);
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i)
        if (!comm_rhs(j, i).empty()) {
          comm_nontrivial_[idx(j, i)] = 1;
          comm_nontrivial_[idx(i, j)] = 1;
        }
  }
  bool commutes(int a, int b) const { return !comm_nontrivial_[idx(a, b)]; }

  Element identity() const {
    Element e;
    e.v.assign(n, 0);
    return e;
  }
  Element gen(int k) const {
    Element e = identity();
    e.v[k - 1] = 1;
    return e;
  }

  // ----- collection ------------------------------------------------------

  Element collect_word(const Word& w) const {
    Element c = identity();
    std::vector<std::pair<int, int>> stack(w.syl.rbegin(), w.syl.rend());
    run(c.v, stack);
    return c;
  }

  Element mul(const Element& a, const Element& b) const {
    Element c = a;
    std::vector<std::pair<int, int>> stack;
    for (int k = n; k >= 1; --k)
      if (b.v[k - 1]) stack.emplace_back(k, b.v[k - 1]);
    run(c.v, stack);
    return c;
  }

  Element mul_gen(const Element& a, int g, int e) const {
    Element c = a;
    std::vector<std::pair<int, int>> stack;
    if (e % p) stack.emplace_back(g, e % p);
    run(c.v, stack);
    return c;
  }

  Element inv(const Element& a) const {
    Element r = a;
    Element x = identity();
    for (int k = 1; k <= n; ++k) {
      int t = r.v[k - 1];
      if (!t) continue;
      int f = p - t;
      x.v[k - 1] = static_cast<uint8_t>(f);
      r = mul_gen(r, k, f);
    }
    return x;
  }

  Element pow(const Element& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Element acc = identity();
    Element base = a;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Element conj(const Element& a, const Element& b) const {  // b^-1 a b
    return mul(mul(inv(b), a), b);
  }
  Element commutator(const Element& a, const Element& b) const {  // a^-1 b^-1 a b
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  long element_order(const Element& a) const {
    Element x = a;
    long o = 1;
    while (!x.is_identity()) {
      x = pow(x, p);
      o *= p;
    }
    return o;
  }

  // ----- consistency ------------------------------------------------------

  struct ConsistencyFailure {
    std::string word;
    Element lhs, rhs;
  };

  // evaluates the standard associativity and power overlap test words;
  // empty result means the presentation defines a group of order p^n
  std::vector<ConsistencyFailure> consistency_failures(bool stop_at_first = false) const {
    std::vector<ConsistencyFailure> fails;
    auto check = [&](const std::string& label, const Element& l, const Element& r) {
      if (l != r) fails.push_back({label, l, r});
    };
    for (int k = 3; k <= n && (!stop_at_first || fails.empty()); ++k)
      for (int j = 2; j < k && (!stop_at_first || fails.empty()); ++j)
        for (int i = 1; i < j && (!stop_at_first || fails.empty()); ++i) {
          // skip triples that commute entirely; both sides collect identically
          if (commutes(k, j) && commutes(k, i) && commutes(j, i)) continue;
          Element l = mul(mul_gen(gen(k), j, 1), gen(i));
          Element r = mul(gen(k), mul_gen(gen(j), i, 1));
          check("g" + std::to_string(k) + ".g" + std::to_string(j) + ".g" + std::to_string(i), l, r);
        }
    for (int j = 2; j <= n && (!stop_at_first || fails.empty()); ++j)
      for (int i = 1; i < j && (!stop_at_first || fails.empty()); ++i) {
        Element pj = pow(gen(j), p);
        Element l = mul(pj, gen(i));
        Element r = mul(pow(gen(j), p - 1), mul_gen(gen(j), i, 1));
        check("g" + std::to_string(j) + "^p.g" + std::to_string(i), l, r);
        Element pi = pow(gen(i), p);
        Element l2 = mul(gen(j), pi);
        Element r2 = mul(mul_gen(gen(j), i, 1), pow(gen(i), p - 1));
        check("g" + std::to_string(j) + ".g" + std::to_string(i) + "^p", l2, r2);
      }
    for (int i = 1; i <= n && (!stop_at_first || fails.empty()); ++i) {
      Element pi = pow(gen(i), p);
      check("g" + std::to_string(i) + "^p.g" + std::to_string(i), mul(pi, gen(i)),
            mul(gen(i), pi));
    }
    return fails;
  }

  bool consistent() const { return consistency_failures(true).empty(); }

  // ----- iteration over all elements --------------------------------------

  template <typename F>
  void for_each_element(F&& f) const {
    Element x = identity();
    while (true) {
      f(static_cast<const Element&>(x));
      int k = 0;
      while (k < n) {
        if (++x.v[k] < p) break;
        x.v[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
  }

  std::string print_word(const Word& w) const {
    if (w.syl.empty()) return "1";
    std::string s;
    for (auto& [g, e] : w.syl) {
      if (!s.empty()) s += ' ';
      s += "g" + std::to_string(g);
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  std::string print_element(const Element& x) const {
    Word w;
    for (int k = 1; k <= n; ++k)
      if (x.v[k - 1]) w.syl.emplace_back(k, x.v[k - 1]);
    return print_word(w);
  }

 private:
  std::vector<uint8_t> comm_nontrivial_;
  size_t idx(int a, int b) const { return static_cast<size_t>(a - 1) * n + (b - 1); }

  // collection from the left: c := c * product(stack back to front)
  void run(std::vector<uint8_t>& c, std::vector<std::pair<int, int>>& stack) const {
    while (!stack.empty()) {
      auto [g, e] = stack.back();
      stack.pop_back();
      // largest index beyond g that is present in c
      int m = 0;
      for (int k = n; k > g; --k)
        if (c[k - 1]) {
          m = k;
          break;
        }
      if (m == 0) {
        int s = c[g - 1] + e;
        if (s < p) {
          c[g - 1] = static_cast<uint8_t>(s);
        } else {
          c[g - 1] = static_cast<uint8_t>(s - p);
          const Word& pw = power_rhs(g);
          for (auto it = pw.syl.rbegin(); it != pw.syl.rend(); ++it) stack.push_back(*it);
        }
        continue;
      }
      // if everything beyond g commutes with g and no power spill occurs,
      // the insertion is exact
      if (c[g - 1] + e < p) {
        bool clean = true;
        for (int k = g + 1; k <= m; ++k)
          if (c[k - 1] && !commutes(k, g)) {
            clean = false;
            break;
          }
        if (clean) {
          c[g - 1] = static_cast<uint8_t>(c[g - 1] + e);
          continue;
        }
      }
      // peel one swap:  c' g_m^cm g^e  ->  c' g_m^(cm-1) g g_m R g^(e-1)
      int cm = c[m - 1];
      c[m - 1] = 0;
      if (e > 1) stack.emplace_back(g, e - 1);
      const Word& R = comm_rhs(m, g);
      for (auto it = R.syl.rbegin(); it != R.syl.rend(); ++it) stack.push_back(*it);
      stack.emplace_back(m, 1);
      stack.emplace_back(g, 1);
      if (cm > 1) stack.emplace_back(m, cm - 1);
    }
  }
};

// ---------------------------------------------------------------------------
// Subgroups via induced generating sequences
// ---------------------------------------------------------------------------

struct Subgroup {
  std::vector<Element> igs;  // strictly increasing leading indices

  int log_order() const { return static_cast<int>(igs.size()); }
  bool operator==(const Subgroup& o) const { return igs == o.igs; }
};

namespace detail {

inline int unit_inverse(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw std::logic_error("not a unit");
}

}  // namespace detail

class SubgroupOps {
 public:
  explicit SubgroupOps(const PcGroup& g) : G(g) {}

  // strips x through the sequence; returns the residue (identity iff member)
  Element sift(const Subgroup& U, Element x) const {
    for (const Element& u : U.igs) {
      int l = x.lead();
      if (l == 0) break;
      int lu = u.lead();
      if (lu > l) break;
      if (lu < l) continue;
      int a = x.v[l - 1], b = u.v[l - 1];
      int cexp = (a * detail::unit_inverse(b, G.p)) % G.p;
      x = G.mul(G.pow(u, -cexp), x);
    }
    return x;
  }

  bool contains(const Subgroup& U, const Element& x) const {
    return sift(U, x).is_identity();
  }

  // coordinates of a member in the induced sequence
  std::vector<int> coordinates(const Subgroup& U, Element x) const {
    std::vector<int> c(U.igs.size(), 0);
    for (size_t t = 0; t < U.igs.size(); ++t) {
      int l = x.lead();
      if (l == 0) break;
      const Element& u = U.igs[t];
      int lu = u.lead();
      if (lu > l) throw std::logic_error("element not in subgroup");
      if (lu < l) continue;
      int a = x.v[l - 1], b = u.v[l - 1];
      int cexp = (a * detail::unit_inverse(b, G.p)) % G.p;
      c[t] = cexp;
      x = G.mul(G.pow(u, -cexp), x);
    }
    if (!x.is_identity()) throw std::logic_error("element not in subgroup");
    return c;
  }

  // closure of the generated subgroup; extra_conjugators, when given, force
  // closure under conjugation by them (normal closure in their span)
  Subgroup closure(std::vector<Element> gens,
                   const std::vector<Element>& extra_conjugators = {}) const {
    Subgroup U;
    std::vector<Element> queue = std::move(gens);
    while (!queue.empty()) {
      Element x = queue.back();
      queue.pop_back();
      Element r = sift(U, x);
      if (r.is_identity()) continue;
      // insert, keep leads strictly increasing
      auto it = U.igs.begin();
      while (it != U.igs.end() && it->lead() < r.lead()) ++it;
      U.igs.insert(it, r);
      queue.push_back(G.pow(r, G.p));
      for (const Element& u : U.igs)
        if (u != r) queue.push_back(G.commutator(r, u));
      for (const Element& c : extra_conjugators) queue.push_back(G.conj(r, c));
    }
    return U;
  }

  Subgroup whole_group() const {
    std::vector<Element> gens;
    for (int k = 1; k <= G.n; ++k) gens.push_back(G.gen(k));
    return closure(std::move(gens));
  }

  Subgroup trivial() const { return Subgroup{}; }

  std::vector<Element> group_generators() const {
    std::vector<Element> gens;
    for (int k = 1; k <= G.n; ++k)
      if (G.weight[k - 1] == 1) gens.push_back(G.gen(k));
    return gens;
  }

  // derived subgroup of U (normal closure inside U of commutators)
  Subgroup derived(const Subgroup& U) const {
    std::vector<Element> gens;
    for (size_t a = 0; a < U.igs.size(); ++a)
      for (size_t b = a + 1; b < U.igs.size(); ++b)
        gens.push_back(G.commutator(U.igs[a], U.igs[b]));
    return closure(std::move(gens), U.igs);
  }

  Subgroup derived_subgroup() const { return derived(whole_group()); }

  // gamma_1 = G, gamma_{k+1} = [gamma_k, G]; list ends with the last
  // nontrivial term
  std::vector<Subgroup> lower_central_series() const {
    std::vector<Subgroup> series;
    series.push_back(whole_group());
    std::vector<Element> gens = group_generators();
    while (true) {
      const Subgroup& prev = series.back();
      std::vector<Element> c;
      for (const Element& x : prev.igs)
        for (const Element& g : gens) c.push_back(G.commutator(x, g));
      Subgroup next = closure(std::move(c), gens);
      if (next.igs.empty()) break;
      series.push_back(next);
      if (series.size() > static_cast<size_t>(G.n + 2))
        throw std::logic_error("lower central series does not terminate");
    }
    return series;
  }

  int nilpotency_class() const { return static_cast<int>(lower_central_series().size()); }
  int coclass() const { return G.n - nilpotency_class(); }

  int derived_length() const {
    Subgroup d = whole_group();
    int len = 0;
    while (!d.igs.empty()) {
      d = derived(d);
      ++len;
      if (len > G.n + 1) throw std::logic_error("derived series does not terminate");
    }
    return len;
  }

  Subgroup centre() const {
    std::vector<Element> zs;
    std::vector<Element> gens = group_generators();
    G.for_each_element([&](const Element& x) {
      for (const Element& g : gens)
        if (!G.commutator(x, g).is_identity()) return;
      zs.push_back(x);
    });
    return closure(std::move(zs));
  }

  // ----- abelian quotients -------------------------------------------------

  struct AbelianisedSubgroup {
    Subgroup U;
    AbelianType type;
    SmithDecomposition smith;
    std::vector<size_t> live;      // positions with nontrivial invariant factor
    std::vector<Int> live_moduli;  // corresponding d_i

    // image of a member of U in the cyclic decomposition (nontrivial factors)
    std::vector<Int> project(const SubgroupOps& ops, const Element& x) const {
      std::vector<int> c = ops.coordinates(U, x);
      std::vector<Int> xi(c.begin(), c.end());
      std::vector<Int> full = smith.project(xi);
      std::vector<Int> out;
      for (size_t i = 0; i < live.size(); ++i) out.push_back(full[live[i]]);
      return out;
    }
  };

  AbelianisedSubgroup abelianised(const Subgroup& U) const {
    const int m = static_cast<int>(U.igs.size());
    std::vector<std::vector<int>> cols;
    for (int t = 0; t < m; ++t) {
      std::vector<int> col = coordinates_checked(U, G.pow(U.igs[t], G.p));
      col[t] -= G.p;
      for (int& x : col) x = -x;  // p e_t - coords
      cols.push_back(col);
    }
    for (int s = 0; s < m; ++s)
      for (int t = s + 1; t < m; ++t)
        cols.push_back(coordinates_checked(U, G.commutator(U.igs[s], U.igs[t])));

    IntMatrix A(m, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < m; ++i) A.at(i, static_cast<int>(j)) = cols[j][i];

    AbelianisedSubgroup out;
    out.U = U;
    out.smith = smith_decompose(A);
    AbelianType t;
    t.p = G.p;
    for (size_t i = 0; i < out.smith.diag.size(); ++i) {
      const Int& di = out.smith.diag[i];
      if (di == 0) throw std::domain_error("infinite abelianization");
      if (di == 1) continue;
      Int v = di;
      int e = 0;
      while (v % G.p == 0) {
        v /= G.p;
        ++e;
      }
      if (v != 1) throw std::logic_error("non p-power invariant factor in p-group");
      t.e.push_back(e);
      out.live.push_back(i);
      out.live_moduli.push_back(di);
    }
    t.normalize();
    // normalize() sorts; recompute live order to match the sorted type:
    // sort live positions by descending exponent for a stable convention
    std::vector<std::pair<int, size_t>> tmp;
    for (size_t i = 0; i < out.live.size(); ++i) {
      Int v = out.live_moduli[i];
      int e = 0;
      while (v % G.p == 0) {
        v /= G.p;
        ++e;
      }
      tmp.emplace_back(-e, out.live[i]);
    }
    std::sort(tmp.begin(), tmp.end());
    out.live.clear();
    out.live_moduli.clear();
    for (auto& [ne, pos] : tmp) {
      out.live.push_back(pos);
      Int d = 1;
      for (int k = 0; k < -ne; ++k) d *= G.p;
      out.live_moduli.push_back(d);
    }
    out.type = t;
    return out;
  }

  AbelianType abelian_quotient_type(const Subgroup& U) const { return abelianised(U).type; }

  AbelianType abelianization() const { return abelian_quotient_type(whole_group()); }

 private:
  std::vector<int> coordinates_checked(const Subgroup& U, const Element& x) const {
    return coordinates(U, x);
  }

  const PcGroup& G;
};

// ---------------------------------------------------------------------------
// Quotient presentations
// ---------------------------------------------------------------------------

// coset reduction of x modulo the normal subgroup N (canonical representative
// with zero exponents at the leading indices of N's sequence)
inline Element reduce_mod(const PcGroup& G, const Subgroup& N, Element x) {
  bool again = true;
  while (again) {
    again = false;
    for (const Element& u : N.igs) {
      int lu = u.lead();
      int c = x.v[lu - 1];
      if (!c) continue;
      int b = u.v[lu - 1];
      int cexp = (c * detail::unit_inverse(b, G.p)) % G.p;
      x = G.mul(G.pow(u, -cexp), x);
      again = true;
    }
  }
  return x;
}

struct Quotient {
  PcGroup group;
  std::vector<int> kept;  // old index per new generator (1-based old indices)

  Element project(const PcGroup& parent, const Subgroup& N, const Element& x) const {
    Element r = reduce_mod(parent, N, x);
    Element y = group.identity();
    for (size_t t = 0; t < kept.size(); ++t) y.v[t] = r.v[kept[t] - 1];
    return y;
  }
};

inline void recover_definitions(PcGroup& g);  // forward

inline Quotient quotient_by(const PcGroup& G, const Subgroup& N) {
  std::set<int> leads;
  for (const Element& u : N.igs) leads.insert(u.lead());
  Quotient q;
  std::vector<int> newidx(G.n + 1, 0);
  for (int k = 1; k <= G.n; ++k)
    if (!leads.count(k)) {
      q.kept.push_back(k);
      newidx[k] = static_cast<int>(q.kept.size());
    }
  const int m = static_cast<int>(q.kept.size());
  std::vector<int> w;
  for (int k : q.kept) w.push_back(G.weight[k - 1]);
  q.group = PcGroup(G.p, m, w);

  auto push_rhs = [&](const Element& val, Word& out) {
    Element r = reduce_mod(G, N, val);
    for (int k = 1; k <= G.n; ++k)
      if (r.v[k - 1]) {
        if (!newidx[k]) throw std::logic_error("reduction left a quotient coordinate");
        out.syl.emplace_back(newidx[k], r.v[k - 1]);
      }
  };

  for (int a = 1; a <= m; ++a) {
    int i = q.kept[a - 1];
    push_rhs(G.pow(G.gen(i), G.p), q.group.power_rhs(a));
    for (int b = 1; b < a; ++b) {
      int ii = q.kept[b - 1];
      push_rhs(G.commutator(G.gen(i), G.gen(ii)), q.group.comm_rhs(a, b));
    }
  }
  q.group.rebuild_flags();
  recover_definitions(q.group);
  return q;
}

inline PcGroup metabelianisation(const PcGroup& G) {
  SubgroupOps ops(G);
  Subgroup d1 = ops.derived_subgroup();
  // derived subgroup of the derived subgroup, closed normally in G
  std::vector<Element> gg;
  for (int k = 1; k <= G.n; ++k) gg.push_back(G.gen(k));
  std::vector<Element> c2;
  for (size_t a = 0; a < d1.igs.size(); ++a)
    for (size_t b = a + 1; b < d1.igs.size(); ++b)
      c2.push_back(G.commutator(d1.igs[a], d1.igs[b]));
  Subgroup d2 = ops.closure(std::move(c2), gg);
  if (d2.igs.empty()) return G;
  return quotient_by(G, d2).group;
}

// ---------------------------------------------------------------------------
// Definitions and derivations
// ---------------------------------------------------------------------------

namespace detail {

inline int relation_weight(const PcGroup& g, const RelId& r) {
  if (r.kind == RelId::Power) return g.weight[r.i - 1] + 1;
  return g.weight[r.i - 1] + g.weight[r.j - 1];
}

inline const Word& relation_rhs(const PcGroup& g, const RelId& r) {
  if (r.kind == RelId::Power) return g.power_rhs(r.i);
  return g.comm_rhs(r.j, r.i);
}

inline std::vector<RelId> all_relations(const PcGroup& g) {
  std::vector<RelId> rels;
  for (int j = 2; j <= g.n; ++j)
    for (int i = 1; i < j; ++i) rels.push_back({RelId::Comm, i, j});
  for (int i = 1; i <= g.n; ++i) rels.push_back({RelId::Power, i, 0});
  return rels;
}

}  // namespace detail

// Assigns to every generator of weight >= 2 a defining relation: a relation
// of matching weight whose right-hand side involves exactly one not-yet
// defined generator of that weight (with unit coefficient).  Commutator
// relations are preferred.  Builds the straight-line derivations as well.
inline void recover_definitions(PcGroup& g) {
  for (int k = 1; k <= g.n; ++k) {
    g.def[k - 1].reset();
    if (g.weight[k - 1] == 1) {
      SlpExpr e;
      e.kind = SlpExpr::Atom;
      e.a = k;
      g.slp[k - 1] = e;
    }
  }
  std::vector<RelId> rels = detail::all_relations(g);
  std::set<RelId> used;
  int maxw = g.max_weight();
  for (int w = 2; w <= maxw; ++w) {
    std::vector<int> todo;
    for (int k = 1; k <= g.n; ++k)
      if (g.weight[k - 1] == w && !g.def[k - 1]) todo.push_back(k);
    bool progress = true;
    while (!todo.empty() && progress) {
      progress = false;
      for (const RelId& r : rels) {
        if (used.count(r) || detail::relation_weight(g, r) != w) continue;
        const Word& rhs = detail::relation_rhs(g, r);
        int cand = 0, coeff = 0;
        bool ok = true;
        for (auto& [gen, e] : rhs.syl) {
          if (g.weight[gen - 1] == w && !g.def[gen - 1]) {
            if (cand) {
              ok = false;
              break;
            }
            cand = gen;
            coeff = e;
          }
        }
        if (!ok || !cand) continue;
        g.def[cand - 1] = r;
        used.insert(r);
        // derivation: rhs = pre . cand^coeff . post, so
        // cand = (pre^-1 . lhs . post^-1)^(coeff^-1)
        SlpExpr e;
        if (r.kind == RelId::Power) {
          e.kind = SlpExpr::PowerOfGen;
          e.a = r.i;
        } else {
          e.kind = SlpExpr::CommOfGens;
          e.a = r.j;
          e.b = r.i;
        }
        bool before = true;
        for (auto& [gen, ex] : rhs.syl) {
          if (gen == cand) {
            before = false;
            continue;
          }
          (before ? e.pre : e.post).syl.emplace_back(gen, ex);
        }
        e.unit = detail::unit_inverse(coeff, g.p);
        g.slp[cand - 1] = e;
        auto it = std::find(todo.begin(), todo.end(), cand);
        todo.erase(it);
        progress = true;
        if (todo.empty()) break;
      }
    }
    if (!todo.empty())
      throw std::runtime_error("presentation admits no definition assignment at weight " +
                               std::to_string(w));
  }
}

// evaluates the derivation of every generator under images of the weight-1
// generators; img must hold images for atoms (indexed by generator)
inline bool evaluate_slp(const PcGroup& src, const PcGroup& tgt,
                         const std::map<int, Element>& atom_images,
                         std::vector<Element>& images) {
  images.assign(src.n + 1, tgt.identity());
  std::vector<int> state(src.n + 1, 0);  // 0 new, 1 in progress, 2 done
  std::function<bool(int)> eval = [&](int k) -> bool {
    if (state[k] == 2) return true;
    if (state[k] == 1) return false;  // cycle
    state[k] = 1;
    const SlpExpr& e = src.slp[k - 1];
    auto eval_word = [&](const Word& w, Element& out) -> bool {
      out = tgt.identity();
      for (auto& [gen, ex] : w.syl) {
        if (!eval(gen)) return false;
        out = tgt.mul(out, tgt.pow(images[gen], ex));
      }
      return true;
    };
    Element val;
    switch (e.kind) {
      case SlpExpr::Atom: {
        auto it = atom_images.find(e.a);
        if (it == atom_images.end()) return false;
        val = it->second;
        break;
      }
      case SlpExpr::PowerOfGen: {
        if (!eval(e.a)) return false;
        val = tgt.pow(images[e.a], src.p);
        break;
      }
      case SlpExpr::CommOfGens: {
        if (!eval(e.a) || !eval(e.b)) return false;
        val = tgt.commutator(images[e.a], images[e.b]);
        break;
      }
      default:
        return false;
    }
    Element pre, post;
    if (!eval_word(e.pre, pre) || !eval_word(e.post, post)) return false;
    val = tgt.mul(tgt.mul(tgt.inv(pre), val), tgt.inv(post));
    images[k] = tgt.pow(val, e.unit);
    state[k] = 2;
    return true;
  };
  for (int k = 1; k <= src.n; ++k)
    if (!eval(k)) return false;
  return true;
}

// do the images satisfy every presentation relation?
inline bool images_satisfy_relations(const PcGroup& src, const PcGroup& tgt,
                                     const std::vector<Element>& images) {
  auto word_value = [&](const Word& w) {
    Element v = tgt.identity();
    for (auto& [gen, ex] : w.syl) v = tgt.mul(v, tgt.pow(images[gen], ex));
    return v;
  };
  for (int i = 1; i <= src.n; ++i) {
    if (tgt.pow(images[i], src.p) != word_value(src.power_rhs(i))) return false;
    for (int j = i + 1; j <= src.n; ++j)
      if (tgt.commutator(images[j], images[i]) != word_value(src.comm_rhs(j, i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presentation file format
// ---------------------------------------------------------------------------
//
//   p n
//   w1 w2 ... wn
//   g<i>^p = g<k>^<e> g<m>^<e> ...
//   [g<j>,g<i>] = ...
//
// Omitted relations default to a trivial right-hand side; exponent 1 is
// omitted on output.  Lines starting with '#' are comments.

inline std::string write_pc(const PcGroup& g) {
  std::ostringstream os;
  os << g.p << ' ' << g.n << '\n';
  for (int k = 1; k <= g.n; ++k) os << (k > 1 ? " " : "") << g.weight[k - 1];
  os << '\n';
  auto word_str = [&](const Word& w) {
    std::string s;
    for (auto& [gen, e] : w.syl) {
      if (!s.empty()) s += ' ';
      s += 'g' + std::to_string(gen);
      if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
  };
  for (int i = 1; i <= g.n; ++i)
    if (!g.power_rhs(i).empty())
      os << 'g' << i << "^" << g.p << " = " << word_str(g.power_rhs(i)) << '\n';
  for (int j = 2; j <= g.n; ++j)
    for (int i = 1; i < j; ++i)
      if (!g.comm_rhs(j, i).empty())
        os << "[g" << j << ",g" << i << "] = " << word_str(g.comm_rhs(j, i)) << '\n';
  return os.str();
}

inline PcGroup read_pc(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      if (line[a] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw std::runtime_error("pc file: missing header");
  int p, n;
  {
    std::istringstream ls(line);
    if (!(ls >> p >> n)) throw std::runtime_error("pc file: bad header");
  }
  if (!next_line()) throw std::runtime_error("pc file: missing weights");
  std::vector<int> w(n);
  {
    std::istringstream ls(line);
    for (int k = 0; k < n; ++k)
      if (!(ls >> w[k])) throw std::runtime_error("pc file: bad weights line");
  }
  PcGroup g(p, n, w);
  auto parse_word = [&](const std::string& s) {
    Word out;
    size_t k = 0;
    while (k < s.size()) {
      if (isspace(static_cast<unsigned char>(s[k]))) {
        ++k;
        continue;
      }
      if (s[k] == '1') {  // explicit trivial rhs
        ++k;
        continue;
      }
      if (s[k] != 'g') throw std::runtime_error("pc file: bad word token in: " + s);
      ++k;
      size_t start = k;
      while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
      int gen = std::stoi(s.substr(start, k - start));
      int e = 1;
      if (k < s.size() && s[k] == '^') {
        ++k;
        start = k;
        while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
        e = std::stoi(s.substr(start, k - start));
      }
      if (gen < 1 || gen > n || e < 1 || e >= p)
        throw std::runtime_error("pc file: generator or exponent out of range in: " + s);
      out.syl.emplace_back(gen, e);
    }
    return out;
  };
  while (next_line()) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("pc file: relation without '=': " + line);
    std::string lhs = line.substr(0, eq);
    std::string rhs = line.substr(eq + 1);
    lhs.erase(std::remove_if(lhs.begin(), lhs.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              lhs.end());
    Word wrd = parse_word(rhs);
    if (lhs.size() > 1 && lhs[0] == 'g') {
      size_t caret = lhs.find('^');
      if (caret == std::string::npos) throw std::runtime_error("pc file: bad power lhs: " + line);
      int i = std::stoi(lhs.substr(1, caret - 1));
      int e = std::stoi(lhs.substr(caret + 1));
      if (e != p) throw std::runtime_error("pc file: power relation must use exponent p");
      g.power_rhs(i) = wrd;
    } else if (!lhs.empty() && lhs[0] == '[') {
      size_t commapos = lhs.find(',');
      size_t close = lhs.find(']');
      if (commapos == std::string::npos || close == std::string::npos || lhs[1] != 'g')
        throw std::runtime_error("pc file: bad commutator lhs: " + line);
      int j = std::stoi(lhs.substr(2, commapos - 2));
      if (lhs[commapos + 1] != 'g') throw std::runtime_error("pc file: bad commutator lhs: " + line);
      int i = std::stoi(lhs.substr(commapos + 2, close - commapos - 2));
      if (!(j > i && i >= 1 && j <= n))
        throw std::runtime_error("pc file: commutator indices out of order: " + line);
      g.comm_rhs(j, i) = wrd;
    } else {
      throw std::runtime_error("pc file: unrecognized relation: " + line);
    }
  }
  // structural validation: rhs indices strictly larger, weights sane
  for (int i = 1; i <= n; ++i)
    for (auto& [gen, e] : g.power_rhs(i).syl)
      if (gen <= i) throw std::runtime_error("pc file: power rhs not above lhs");
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      for (auto& [gen, e] : g.comm_rhs(j, i).syl)
        if (gen <= j) throw std::runtime_error("pc file: commutator rhs not above lhs");
  for (int k = 1; k < n; ++k)
    if (w[k] < w[k - 1]) throw std::runtime_error("pc file: weights must be non-decreasing");
  g.rebuild_flags();
  recover_definitions(g);
  return g;
}

}  // namespace artin
