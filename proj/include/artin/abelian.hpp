#pragma once

// Abelian invariants: exact integer matrices, Smith normal form, the nearly
// homocyclic 3-group constructors A(3,n) / B(3,n), ordering conventions for
// families of type invariants, and the compact digit^exponent notation.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace artin {

using Int = boost::multiprecision::cpp_int;

// Abelian p-group type as a non-increasing sequence of exponent logarithms.
// (2,1) with p=3 denotes C9 x C3.  The trivial group is the empty sequence.
struct AbelianType {
  std::vector<int> e;
  int p = 3;

  AbelianType() = default;
  AbelianType(std::initializer_list<int> init, int prime = 3) : e(init), p(prime) {
    normalize();
  }
  explicit AbelianType(std::vector<int> init, int prime = 3) : e(std::move(init)), p(prime) {
    normalize();
  }

  void normalize() {
    std::sort(e.begin(), e.end(), std::greater<int>());
    while (!e.empty() && e.back() == 0) e.pop_back();
    for (int x : e)
      if (x < 0) throw std::invalid_argument("negative exponent in abelian type");
  }

  bool trivial() const { return e.empty(); }
  int rank() const { return static_cast<int>(e.size()); }

  // logarithmic order: sum of exponent logs
  int lo() const {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }

  Int order() const {
    Int o = 1;
    for (int x : e)
      for (int i = 0; i < x; ++i) o *= p;
    return o;
  }

  // direct product; exponents merge and re-sort
  AbelianType times(const AbelianType& other) const {
    AbelianType r = *this;
    r.e.insert(r.e.end(), other.e.begin(), other.e.end());
    r.normalize();
    return r;
  }

  bool operator==(const AbelianType& o) const { return e == o.e; }
  bool operator!=(const AbelianType& o) const { return !(*this == o); }
};

// Canonical sequence order for families of types: larger logarithmic order
// first; among equal orders ascending lexicographic exponent sequences.
// This reproduces the printed layout of the reference tables, e.g. (1^3)
// precedes (21), and (21^2) precedes (2^2) precedes (31).
inline bool type_before(const AbelianType& a, const AbelianType& b) {
  int la = a.lo(), lb = b.lo();
  if (la != lb) return la > lb;
  return a.e < b.e;
}

inline bool type_list_before(const std::vector<AbelianType>& a,
                             const std::vector<AbelianType>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return type_before(a[i], b[i]);
  }
  return a.size() < b.size();
}

// ---------------------------------------------------------------------------
// Rendering grammar.  A type is a juxtaposition of digit^exp factors with
// single-digit exponents ("2^21" = (2,2,1), "21^2" = (2,1,1)); the trivial
// type prints as "0".  A list is comma separated with parenthesized
// repetition counts: "1^3,(21)^3" or "(1^2)^13".  Repetition counts after a
// closing parenthesis may have several digits.
// ---------------------------------------------------------------------------

inline std::string render_type(const AbelianType& t) {
  if (t.trivial()) return "0";
  std::string s;
  size_t i = 0;
  while (i < t.e.size()) {
    size_t j = i;
    while (j < t.e.size() && t.e[j] == t.e[i]) ++j;
    size_t run = j - i;
    if (t.e[i] > 9) throw std::invalid_argument("exponent too large to render");
    s += std::to_string(t.e[i]);
    if (run > 1) {
      s += '^';
      s += std::to_string(run);
    }
    i = j;
  }
  return s;
}

// run-length rendering of a list in the order given (callers canonicalize)
inline std::string render_type_list(const std::vector<AbelianType>& ts) {
  std::string s;
  size_t i = 0;
  while (i < ts.size()) {
    size_t j = i;
    while (j < ts.size() && ts[j] == ts[i]) ++j;
    size_t run = j - i;
    if (!s.empty()) s += ',';
    if (run == 1) {
      s += render_type(ts[i]);
    } else {
      s += '(';
      s += render_type(ts[i]);
      s += ")^";
      s += std::to_string(run);
    }
    i = j;
  }
  return s;
}

namespace detail {

inline void skip_ws(const std::string& s, size_t& k) {
  while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
}

// parse a bare type body (digits with optional single-digit exponents) until
// a delimiter; "0" denotes the trivial type
inline AbelianType parse_type_body(const std::string& s, size_t& k, int p) {
  AbelianType t;
  t.p = p;
  skip_ws(s, k);
  if (k < s.size() && s[k] == '0') {
    ++k;
    return t;
  }
  while (k < s.size() && s[k] >= '1' && s[k] <= '9') {
    int d = s[k] - '0';
    ++k;
    int rep = 1;
    if (k < s.size() && s[k] == '^') {
      ++k;
      if (k >= s.size() || s[k] < '1' || s[k] > '9')
        throw std::invalid_argument("bad exponent in type notation");
      rep = s[k] - '0';
      ++k;
    }
    for (int i = 0; i < rep; ++i) t.e.push_back(d);
  }
  if (t.e.empty()) throw std::invalid_argument("empty type in notation");
  t.normalize();
  return t;
}

}  // namespace detail

inline AbelianType parse_type(const std::string& s, int p = 3) {
  size_t k = 0;
  AbelianType t = detail::parse_type_body(s, k, p);
  detail::skip_ws(s, k);
  if (k != s.size()) throw std::invalid_argument("trailing characters in type: " + s);
  return t;
}

// Parses "1^3,(21)^3,(1^2)^9"; also accepts ';' as separator.
inline std::vector<AbelianType> parse_type_list(const std::string& s, int p = 3) {
  std::vector<AbelianType> out;
  size_t k = 0;
  detail::skip_ws(s, k);
  while (k < s.size()) {
    if (s[k] == ',' || s[k] == ';') {
      ++k;
      detail::skip_ws(s, k);
      continue;
    }
    if (s[k] == '(') {
      ++k;
      AbelianType t = detail::parse_type_body(s, k, p);
      detail::skip_ws(s, k);
      if (k >= s.size() || s[k] != ')')
        throw std::invalid_argument("unbalanced parenthesis in type list: " + s);
      ++k;
      long rep = 1;
      if (k < s.size() && s[k] == '^') {
        ++k;
        size_t start = k;
        while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == start) throw std::invalid_argument("bad repetition count: " + s);
        rep = std::stol(s.substr(start, k - start));
      }
      for (long i = 0; i < rep; ++i) out.push_back(t);
    } else {
      out.push_back(detail::parse_type_body(s, k, p));
    }
    detail::skip_ws(s, k);
  }
  return out;
}

enum class TypeOrder { Ordered, Accumulated };

// Canonical arrangement of a family of type invariants.  Both modes sort into
// the canonical sequence order; "accumulated" is the multiset view (same
// content; rendering collapses repetitions either way).
inline std::vector<AbelianType> order_types(std::vector<AbelianType> ts, TypeOrder) {
  std::sort(ts.begin(), ts.end(), type_before);
  return ts;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form
// ---------------------------------------------------------------------------

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // row major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Smith normal form of A with a record of the row transform:  L * A * R = D
// with L, R unimodular.  Only L is kept; it is what cokernel coordinates
// need.  Columns of A are relations, rows are generators: the cokernel of A
// is Z^rows / colspan(A) and x maps to (L x) mod diag.
struct SmithDecomposition {
  std::vector<Int> diag;  // d1 | d2 | ... (non-negative), length = rows
  IntMatrix L;            // rows x rows unimodular

  // coordinates of a generator-space vector in the cyclic decomposition
  std::vector<Int> project(const std::vector<Int>& x) const {
    std::vector<Int> y(diag.size(), 0);
    for (size_t i = 0; i < diag.size(); ++i) {
      Int s = 0;
      for (int j = 0; j < L.cols; ++j) s += L.at(static_cast<int>(i), j) * x[j];
      if (diag[i] != 0) {
        s %= diag[i];
        if (s < 0) s += diag[i];
      }
      y[i] = s;
    }
    return y;
  }
};

inline SmithDecomposition smith_decompose(IntMatrix A) {
  const int m = A.rows, n = A.cols;
  SmithDecomposition out;
  out.L = IntMatrix(m, m);
  for (int i = 0; i < m; ++i) out.L.at(i, i) = 1;

  auto swap_rows = [&](int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < n; ++j) std::swap(A.at(r1, j), A.at(r2, j));
    for (int j = 0; j < m; ++j) std::swap(out.L.at(r1, j), out.L.at(r2, j));
  };
  auto swap_cols = [&](int c1, int c2) {
    if (c1 == c2) return;
    for (int i = 0; i < m; ++i) std::swap(A.at(i, c1), A.at(i, c2));
  };
  // row[r1] -= q * row[r2]
  auto row_op = [&](int r1, int r2, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < n; ++j) A.at(r1, j) -= q * A.at(r2, j);
    for (int j = 0; j < m; ++j) out.L.at(r1, j) -= q * out.L.at(r2, j);
  };
  auto col_op = [&](int c1, int c2, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < m; ++i) A.at(i, c1) -= q * A.at(i, c2);
  };

  int t = 0;
  const int bound = std::min(m, n);
  while (t < bound) {
    // locate a nonzero pivot with minimal absolute value
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        if (A.at(i, j) == 0) continue;
        Int v = abs(A.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < m; ++i) {
        if (A.at(i, t) == 0) continue;
        Int q = A.at(i, t) / A.at(t, t);
        row_op(i, t, q);
        if (A.at(i, t) != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (A.at(t, j) == 0) continue;
        Int q = A.at(t, j) / A.at(t, t);
        col_op(j, t, q);
        if (A.at(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
    }
    ++t;
  }

  // enforce the divisibility chain d1 | d2 | ...
  for (int i = 0; i < bound; ++i)
    if (A.at(i, i) < 0) {
      for (int j = 0; j < n; ++j) A.at(i, j) = -A.at(i, j);
      for (int j = 0; j < m; ++j) out.L.at(i, j) = -out.L.at(i, j);
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < t; ++i) {
      Int a = A.at(i, i), b = A.at(i + 1, i + 1);
      if (a == 0 || b % a == 0) continue;
      // standard 2x2 trick: replace (a, b) by (gcd, lcm)
      Int g = gcd(a, b);
      // col i gains col i+1, giving rows (a, b) in the 2x2 block
      col_op(i, i + 1, Int(-1));
      // clear with row/col ops on the block
      Int q = b / g;
      // row i+1 -= (b/a') ... do a small local reduction loop
      while (A.at(i + 1, i) != 0) {
        Int aa = A.at(i, i);
        if (aa != 0) {
          Int qq = A.at(i + 1, i) / aa;
          row_op(i + 1, i, qq);
        }
        if (A.at(i + 1, i) != 0) swap_rows(i, i + 1);
      }
      while (A.at(i, i + 1) != 0) {
        Int aa = A.at(i, i);
        if (aa != 0) {
          Int qq = A.at(i, i + 1) / aa;
          col_op(i + 1, i, qq);
        }
        if (A.at(i, i + 1) != 0) swap_cols(i, i + 1);
      }
      if (A.at(i, i) < 0) {
        for (int j = 0; j < n; ++j) A.at(i, j) = -A.at(i, j);
        for (int j = 0; j < m; ++j) out.L.at(i, j) = -out.L.at(i, j);
      }
      if (A.at(i + 1, i + 1) < 0) {
        for (int j = 0; j < n; ++j) A.at(i + 1, j) = -A.at(i + 1, j);
        for (int j = 0; j < m; ++j) out.L.at(i + 1, j) = -out.L.at(i + 1, j);
      }
      (void)q;
      changed = true;
    }
  }

  out.diag.resize(m);
  for (int i = 0; i < m; ++i) out.diag[i] = (i < bound) ? A.at(i, i) : Int(0);
  return out;
}

// p-part of the cokernel of m as abelian type invariants.  The groups in
// scope are finite, so a free part (a zero invariant factor) is an error.
inline AbelianType smith_invariants(const IntMatrix& m, int p) {
  SmithDecomposition d = smith_decompose(m);
  AbelianType t;
  t.p = p;
  for (const Int& di : d.diag) {
    if (di == 0) throw std::domain_error("infinite abelianization");
    Int v = di;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e > 0) t.e.push_back(e);
  }
  t.normalize();
  return t;
}

// ---------------------------------------------------------------------------
// Nearly homocyclic constructors
// ---------------------------------------------------------------------------

// A(3,n): type (q+r, q) for n = 2q+r, 0 <= r < 2; A(3,1) = (1), A(3,0) = ().
inline AbelianType nearly_homocyclic(int n, int p = 3) {
  if (n < 0) throw std::invalid_argument("nearly_homocyclic: n must be >= 0");
  AbelianType t;
  t.p = p;
  if (n == 0) return t;
  int q = n / 2, r = n % 2;
  if (q + r > 0) t.e.push_back(q + r);
  if (q > 0) t.e.push_back(q);
  t.normalize();
  return t;
}

// B(3,n): (2) for n=2; (m+1, m) for n=2m+1; (m+2, m) for n=2m+2, m >= 1.
inline AbelianType variant_b(int n, int p = 3) {
  if (n < 2) throw std::invalid_argument("variant_b: n must be >= 2");
  AbelianType t;
  t.p = p;
  if (n == 2) {
    t.e = {2};
    return t;
  }
  if (n % 2 == 1) {
    int m = (n - 1) / 2;
    t.e = {m + 1, m};
  } else {
    int m = (n - 2) / 2;
    t.e = {m + 2, m};
  }
  t.normalize();
  return t;
}

// human-oriented rendering: "21 = C9 x C3"
inline std::string describe_type(const AbelianType& t) {
  if (t.trivial()) return "0 = 1";
  std::string s = render_type(t) + " = ";
  for (size_t i = 0; i < t.e.size(); ++i) {
    if (i) s += " x ";
    Int o = 1;
    for (int k = 0; k < t.e[i]; ++k) o *= t.p;
    s += "C" + o.str();
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const AbelianType& t) {
  return os << render_type(t);
}

}  // namespace artin
