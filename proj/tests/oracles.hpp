// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library's own algorithms.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hvase/presentation.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
inline constexpr double kPi = std::numbers::pi;

/// Bisection to machine precision on a bracketing interval.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Heights in (0, m] where sin(pi p / z) = -1, found as sign changes of cos(pi p / z)
/// with negative sine. Descending; stops after `count`.
inline std::vector<double> inner_heights_by_bisection(double p, double m, std::size_t count) {
  std::vector<double> out;
  auto c = [p](double z) { return std::cos(kPi * p / z); };
  double hi = m;
  while (out.size() < count && hi > 1e-6) {
    const double step = hi * hi / (p * 64.0);
    const double lo = hi - step;
    if ((c(lo) > 0.0) != (c(hi) > 0.0)) {
      const double z = bisect(c, lo, hi);
      if (std::sin(kPi * p / z) < 0.0) out.push_back(z);
    }
    hi = lo;
  }
  return out;
}

/// Roots of f on [a, b] certified by the Lipschitz bound L(lo) on each cell [lo, hi]:
/// a cell with |f(lo)| + |f(hi)| > L (hi - lo) has no root. Cells are split until either
/// excluded or narrower than `width`, then sign changes are bisected. Terminal cells that
/// are neither excluded nor bracketing are grouped into contiguous clusters; a cluster
/// without a bracketed root could hide an even number of roots and counts as unresolved.
struct RootScan {
  std::vector<double> roots;
  std::size_t unresolved = 0;
  std::size_t cells = 0;
};

inline RootScan certified_roots(const std::function<double(double)>& f, const std::function<double(double)>& lipschitz,
                                double a, double b, double width = 1e-12) {
  RootScan out;
  struct Cell {
    double lo, hi, flo, fhi;
  };
  struct Terminal {
    double lo, hi;
    bool root;
  };
  std::vector<Cell> stack{{a, b, f(a), f(b)}};
  std::vector<Terminal> terminals;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    ++out.cells;
    if (c.flo == 0.0) {
      out.roots.push_back(c.lo);
      terminals.push_back({c.lo, c.hi, true});
      continue;
    }
    if (std::abs(c.flo) + std::abs(c.fhi) > lipschitz(c.lo) * (c.hi - c.lo)) continue;
    if (c.hi - c.lo < width) {
      const bool bracket = (c.flo > 0.0) != (c.fhi > 0.0);
      if (bracket) out.roots.push_back(bisect(f, c.lo, c.hi));
      terminals.push_back({c.lo, c.hi, bracket});
      continue;
    }
    const double mid = 0.5 * (c.lo + c.hi);
    const double fm = f(mid);
    stack.push_back({c.lo, mid, c.flo, fm});
    stack.push_back({mid, c.hi, fm, c.fhi});
  }
  if (f(b) == 0.0) out.roots.push_back(b);

  std::sort(terminals.begin(), terminals.end(), [](const Terminal& x, const Terminal& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i < terminals.size();) {
    bool has_root = terminals[i].root;
    std::size_t j = i + 1;
    while (j < terminals.size() && terminals[j].lo == terminals[j - 1].hi) {
      has_root = has_root || terminals[j].root;
      ++j;
    }
    if (!has_root) ++out.unresolved;
    i = j;
  }

  std::sort(out.roots.begin(), out.roots.end(), std::greater<>());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end(),
                              [](double x, double y) { return std::abs(x - y) < 1e-13; }),
                  out.roots.end());
  return out;
}

/// Greedy bijective matching of two descending lists within `tol`.
inline bool matches_bijectively(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

/// Cancels adjacent inverse pairs until none remain (quadratic, obviously correct).
inline hvase::Word naive_reduce(hvase::Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

/// Exact determinant by cofactor expansion (small matrices only).
inline cpp_int determinant(const std::vector<std::vector<cpp_int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  cpp_int det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<cpp_int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<cpp_int> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const cpp_int term = m[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : cpp_int(-term);
  }
  return det;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors from determinantal divisors: d_k = gcd of all k x k minors,
/// factor_k = d_k / d_{k-1}; zeros once d_k vanishes.
inline std::vector<cpp_int> invariant_factors_by_minors(const std::vector<std::vector<cpp_int>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const std::size_t r = std::min(rows, cols);
  std::vector<cpp_int> out;
  cpp_int prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    choose(rows, k, 0, cur, rs);
    choose(cols, k, 0, cur, cs);
    cpp_int g = 0;
    for (const auto& ri : rs) {
      for (const auto& ci : cs) {
        std::vector<std::vector<cpp_int>> sub(k, std::vector<cpp_int>(k));
        for (std::size_t x = 0; x < k; ++x) {
          for (std::size_t y = 0; y < k; ++y) sub[x][y] = a[ri[x]][ci[y]];
        }
        g = boost::multiprecision::gcd(g, cpp_int(abs(determinant(sub))));
      }
    }
    if (g == 0 || prev == 0) {
      out.push_back(0);
      prev = 0;
    } else {
      out.push_back(g / prev);
      prev = g;
    }
  }
  return out;
}

/// Multiplication table of permutations of {0..n-1} listed lexicographically, with
/// (ab)(x) = a(b(x)). Built without the library's group constructors.
struct Table {
  int order = 0;
  std::vector<int> mul;
  int identity = 0;
  std::vector<int> inv;
};

inline Table cyclic(int n) {
  Table t;
  t.order = n;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t.mul.push_back((a + b) % n);
  }
  for (int a = 0; a < n; ++a) t.inv.push_back((n - a) % n);
  return t;
}

/// Permutation group generated by `gens_in`, elements found by closure.
inline Table permutation_group(const std::vector<std::vector<int>>& gens_in, int degree) {
  std::vector<std::vector<int>> elems;
  std::vector<int> id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i;
  elems.push_back(id);
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : gens_in) {
      std::vector<int> prod(static_cast<std::size_t>(degree));
      for (int x = 0; x < degree; ++x) prod[static_cast<std::size_t>(x)] = g[static_cast<std::size_t>(elems[k][static_cast<std::size_t>(x)])];
      if (std::find(elems.begin(), elems.end(), prod) == elems.end()) elems.push_back(prod);
    }
  }
  Table t;
  t.order = static_cast<int>(elems.size());
  auto index_of = [&](const std::vector<int>& p) {
    return static_cast<int>(std::find(elems.begin(), elems.end(), p) - elems.begin());
  };
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      std::vector<int> ab(static_cast<std::size_t>(degree));
      for (int x = 0; x < degree; ++x) ab[static_cast<std::size_t>(x)] = a[static_cast<std::size_t>(b[static_cast<std::size_t>(x)])];
      t.mul.push_back(index_of(ab));
    }
  }
  t.identity = 0;
  for (int a = 0; a < t.order; ++a) {
    for (int b = 0; b < t.order; ++b) {
      if (t.mul[static_cast<std::size_t>(a * t.order + b)] == 0) {
        t.inv.push_back(b);
        break;
      }
    }
  }
  return t;
}

inline Table s3() { return permutation_group({{1, 0, 2}, {1, 2, 0}}, 3); }
inline Table d4() { return permutation_group({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4); }

/// Counts generator tuples satisfying every relator by full enumeration.
inline std::uint64_t brute_force_homs(const hvase::Presentation& p, const Table& g) {
  const int n = p.generator_count();
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& r : p.relators) {
      int acc = g.identity;
      for (const auto& l : r) {
        int x = tuple[static_cast<std::size_t>(l.gen.index - 1)];
        if (l.sign < 0) x = g.inv[static_cast<std::size_t>(x)];
        acc = g.mul[static_cast<std::size_t>(acc * g.order + x)];
      }
      if (acc != g.identity) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int k = 0;
    while (k < n && ++tuple[static_cast<std::size_t>(k)] == g.order) tuple[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return count;
}

}  // namespace oracle
