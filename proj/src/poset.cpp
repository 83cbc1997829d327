#include "qdom/poset.hpp"

#include <cstdint>

namespace qdom {

PosetCheck validate_poset(const FinitePoset& p) {
  const std::size_t n = p.size();
  if (p.leq.size() != n) return {false, "shape"};
  for (const auto& row : p.leq) {
    if (row.size() != n) return {false, "shape"};
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.le(i, i)) return {false, "reflexivity"};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (p.le(i, j) && p.le(j, k) && !p.le(i, k)) return {false, "transitivity"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.le(i, j) && p.le(j, i)) return {false, "antisymmetry"};
  return {};
}

std::optional<std::size_t> bottom_of(const FinitePoset& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool below_all = true;
    for (std::size_t j = 0; j < p.size() && below_all; ++j) below_all = p.le(i, j);
    if (below_all) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> lub(const FinitePoset& p, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> upper;
  for (std::size_t u = 0; u < p.size(); ++u) {
    bool is_upper = true;
    for (std::size_t a : subset) {
      if (!p.le(a, u)) {
        is_upper = false;
        break;
      }
    }
    if (is_upper) upper.push_back(u);
  }
  for (std::size_t u : upper) {
    bool least = true;
    for (std::size_t w : upper) {
      if (!p.le(u, w)) {
        least = false;
        break;
      }
    }
    if (least) return u;
  }
  return std::nullopt;
}

bool is_monotone(const FinitePoset& p, const std::vector<std::size_t>& f) {
  if (f.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "function table size");
  for (std::size_t y : f) {
    if (y >= p.size()) throw Error(ErrorCode::InvalidArgument, "function value out of range");
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.le(i, j) && !p.le(f[i], f[j])) return false;
  return true;
}

std::size_t least_fixed_point_bruteforce(const FinitePoset& p, const std::vector<std::size_t>& f) {
  if (!is_monotone(p, f)) throw Error(ErrorCode::NotMonotone, "function is not monotone");
  std::vector<std::size_t> fixed;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (f[x] == x) fixed.push_back(x);
  }
  for (std::size_t x : fixed) {
    bool least = true;
    for (std::size_t y : fixed) {
      if (!p.le(x, y)) {
        least = false;
        break;
      }
    }
    if (least) return x;
  }
  throw Error(ErrorCode::NoFixedPoint,
              fixed.empty() ? "no fixed point" : "fixed points have no least element");
}

namespace {

// Nonempty A is directed when every pair in A has an upper bound in A.
bool is_directed(const FinitePoset& p, const std::vector<std::size_t>& a) {
  for (std::size_t i : a) {
    for (std::size_t j : a) {
      bool bounded = false;
      for (std::size_t k : a) {
        if (p.le(i, k) && p.le(j, k)) {
          bounded = true;
          break;
        }
      }
      if (!bounded) return false;
    }
  }
  return true;
}

}  // namespace

bool way_below_finite(const FinitePoset& p, std::size_t x, std::size_t y) {
  const std::size_t n = p.size();
  if (n > 20) throw Error(ErrorCode::CapExceeded, "way_below_finite enumerates 2^n subsets");
  std::vector<std::size_t> subset;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) subset.push_back(i);
    }
    if (!is_directed(p, subset)) continue;
    const auto sup = lub(p, subset);
    if (!sup || !p.le(y, *sup)) continue;
    bool hit = false;
    for (std::size_t a : subset) {
      if (p.le(x, a)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace qdom
