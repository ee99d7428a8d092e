#pragma once

#include <compare>

#include "wnaforge/rational.hpp"
#include <stdexcept>
#include <string>
#include <vector>

namespace wnaforge {

// Evolution-variable index. Two kinds:
//   Time  — a composition multi-index t_{m1...mr}; r == 1 is an ordinary t_m.
//           The word is NOT symmetrized: t_{12} and t_{21} are distinct.
//   Theta — an antisymmetric deformation parameter th_{mn}, stored with m < n;
//           the swapped orientation is the same variable with opposite sign,
//           which callers absorb into coefficients (see theta_oriented).
struct VarIndex {
  enum class Kind : unsigned char { Time, Theta };
  Kind kind = Kind::Time;
  std::vector<int> idx;

  static VarIndex time(std::vector<int> word) {
    if (word.empty()) throw ConfigError("empty time word");
    for (int m : word)
      if (m < 1) throw ConfigError("time index must be positive");
    return VarIndex{Kind::Time, std::move(word)};
  }
  static VarIndex time(int m) { return time(std::vector<int>{m}); }

  // Normalized theta variable; requires m != n (th_{mm} is identically zero).
  static VarIndex theta(int m, int n) {
    if (m == n) throw ConfigError("theta indices must differ");
    if (m > n) std::swap(m, n);
    if (m < 1) throw ConfigError("theta index must be positive");
    return VarIndex{Kind::Theta, {m, n}};
  }

  // Oriented theta: returns the stored variable and the orientation sign
  // (+1 if already m < n, -1 if swapped).
  static std::pair<VarIndex, int> theta_oriented(int m, int n) {
    return {theta(m, n), m < n ? +1 : -1};
  }

  bool is_time(int r = -1) const {
    return kind == Kind::Time && (r < 0 || static_cast<int>(idx.size()) == r);
  }
  bool is_theta() const { return kind == Kind::Theta; }

  friend auto operator<=>(const VarIndex& a, const VarIndex& b) = default;

  std::string str() const {
    std::string out = kind == Kind::Theta ? "th{" : "t{";
    for (size_t i = 0; i < idx.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(idx[i]);
    }
    return out + "}";
  }

  // Subscript form for LaTeX output, e.g. t_1, t_{12}, \theta_{12}.
  std::string latex() const {
    std::string digits;
    for (int m : idx) digits += std::to_string(m);
    if (kind == Kind::Theta) return "\\theta_{" + digits + "}";
    if (digits.size() == 1) return "t_" + digits;
    return "t_{" + digits + "}";
  }
};

}  // namespace wnaforge
