#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "wnaforge/rational.hpp"
#include "wnaforge/var_index.hpp"

namespace wnaforge {

// Monomial key: 8 bits per variable, so exponents stay below 256 and key
// addition never carries between lanes at the orders this ring supports.
using JetKey = unsigned __int128;

constexpr size_t kMaxJetVars = 16;

// Truncated polynomial ring with a weight per variable. Truncation is by
// weighted total degree, which every product here respects exactly.
class JetRing {
 public:
  // Default weight of a variable: the number of indices it carries.
  static int default_weight(const VarIndex& v) { return static_cast<int>(v.idx.size()); }

  JetRing(std::vector<VarIndex> vars, int order) : order_(order) {
    if (vars.size() > kMaxJetVars)
      throw ConfigError("jet ring supports at most 16 variables, got " +
                        std::to_string(vars.size()));
    if (order < 0 || order > 120) throw ConfigError("jet ring order out of range");
    for (VarIndex& v : vars) {
      int w = default_weight(v);
      if (w < 1) throw ConfigError("jet variable must carry at least one index");
      if (index_.count(v)) throw ConfigError("duplicate jet variable " + v.str());
      index_.emplace(v, vars_.size());
      weights_.push_back(w);
      vars_.push_back(std::move(v));
    }
  }

  int order() const { return order_; }
  size_t size() const { return vars_.size(); }
  const VarIndex& var(size_t i) const { return vars_[i]; }
  int weight(size_t i) const { return weights_[i]; }

  bool has_var(const VarIndex& v) const { return index_.count(v) != 0; }
  size_t var_slot(const VarIndex& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw ConfigError("variable " + v.str() + " not in jet ring");
    return it->second;
  }

  static int exponent(JetKey k, size_t slot) {
    return static_cast<int>((k >> (8 * slot)) & 0xff);
  }
  static JetKey unit(size_t slot) { return JetKey(1) << (8 * slot); }

  int key_weight(JetKey k) const {
    int w = 0;
    for (size_t i = 0; i < vars_.size(); ++i) w += exponent(k, i) * weights_[i];
    return w;
  }

  std::string key_str(JetKey k) const {
    if (k == 0) return "1";
    std::string s;
    for (size_t i = 0; i < vars_.size(); ++i) {
      int e = exponent(k, i);
      if (e == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_[i].str();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const JetRing& a, const JetRing& b) {
    return a.order_ == b.order_ && a.vars_ == b.vars_;
  }

 private:
  std::vector<VarIndex> vars_;
  std::vector<int> weights_;
  std::map<VarIndex, size_t> index_;
  int order_;
};

class Jet {
 public:
  Jet() : ring_(nullptr) {}
  explicit Jet(const JetRing& ring) : ring_(&ring) {}

  static Jet scalar(const JetRing& ring, Rational c) {
    Jet j(ring);
    j.add_term(0, c);
    return j;
  }
  static Jet variable(const JetRing& ring, const VarIndex& v) {
    Jet j(ring);
    j.add_term(JetRing::unit(ring.var_slot(v)), Rational(1));
    return j;
  }

  const JetRing& ring() const {
    if (!ring_) throw ConfigError("jet has no ring");
    return *ring_;
  }
  const std::map<JetKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(JetKey k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient(0); }

  void add_term(JetKey k, const Rational& c) {
    if (c.is_zero() || ring().key_weight(k) > ring_->order()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Jet& operator+=(const Jet& o) {
    check_same_ring(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a += Rational(-1) * b; }
  friend Jet operator*(const Rational& c, const Jet& j) {
    Jet out(j.ring());
    if (c.is_zero()) return out;
    for (const auto& [k, v] : j.terms_) out.terms_[k] = c * v;
    return out;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_same_ring(b);
    std::vector<std::pair<JetKey, Rational>> acc;
    multiply_into(acc, a, b, Rational(1), 0, 0);
    return from_accumulated(a.ring(), std::move(acc));
  }

  // Append scale * a * b * (monomial shift) to the accumulator, pruning by
  // weighted degree. Callers combine with from_accumulated.
  static void multiply_into(std::vector<std::pair<JetKey, Rational>>& acc, const Jet& a,
                            const Jet& b, const Rational& scale, JetKey shift,
                            int shift_weight) {
    a.check_same_ring(b);
    const JetRing& ring = a.ring();
    int budget = ring.order() - shift_weight;
    if (budget < 0) return;
    struct BTerm {
      int w;
      JetKey k;
      const Rational* c;
    };
    std::vector<BTerm> bw;
    bw.reserve(b.terms_.size());
    for (const auto& [kb, cb] : b.terms_) bw.push_back({ring.key_weight(kb), kb, &cb});
    std::sort(bw.begin(), bw.end(), [](const BTerm& x, const BTerm& y) { return x.w < y.w; });
    for (const auto& [ka, ca] : a.terms_) {
      int room = budget - ring.key_weight(ka);
      if (room < 0) continue;
      Rational cs = ca * scale;
      for (const BTerm& t : bw) {
        if (t.w > room) break;
        acc.emplace_back(ka + t.k + shift, cs * *t.c);
      }
    }
  }

  // Sort by key and merge duplicate monomials, dropping exact zeros.
  static void combine_in_place(std::vector<std::pair<JetKey, Rational>>& acc) {
    std::sort(acc.begin(), acc.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    size_t w = 0;
    size_t i = 0;
    while (i < acc.size()) {
      JetKey k = acc[i].first;
      Rational c = std::move(acc[i].second);
      for (++i; i < acc.size() && acc[i].first == k; ++i) c += acc[i].second;
      if (!c.is_zero()) acc[w++] = {k, std::move(c)};
    }
    acc.resize(w);
  }

  static Jet from_accumulated(const JetRing& ring,
                              std::vector<std::pair<JetKey, Rational>>&& acc) {
    combine_in_place(acc);
    Jet out(ring);
    auto hint = out.terms_.end();
    for (auto& [k, c] : acc) hint = out.terms_.emplace_hint(hint, k, std::move(c));
    return out;
  }
  friend bool operator==(const Jet& a, const Jet& b) {
    a.check_same_ring(b);
    return a.terms_ == b.terms_;
  }

  // Formal partial derivative in one ring variable.
  Jet partial(const VarIndex& v) const {
    size_t slot = ring().var_slot(v);
    Jet out(*ring_);
    for (const auto& [k, c] : terms_) {
      int e = JetRing::exponent(k, slot);
      if (e == 0) continue;
      out.add_term(k - JetRing::unit(slot), Rational(e) * c);
    }
    return out;
  }

  // Multiply by a single monomial, truncating by weighted degree.
  Jet shifted(JetKey mono, const Rational& c) const {
    Jet out(ring());
    if (c.is_zero()) return out;
    int wm = ring_->key_weight(mono);
    for (const auto& [k, v] : terms_) {
      if (ring_->key_weight(k) + wm > ring_->order()) continue;
      out.add_term(k + mono, c * v);
    }
    return out;
  }

  Jet truncated(int max_weight) const {
    Jet out(ring());
    for (const auto& [k, c] : terms_)
      if (ring_->key_weight(k) <= max_weight) out.terms_.emplace(k, c);
    return out;
  }

  // Exponential of a jet with zero constant term.
  Jet exp() const {
    if (!constant_term().is_zero())
      throw ConfigError("jet exponential needs a zero constant term");
    Jet result = scalar(ring(), Rational(1));
    Jet term = result;
    for (int k = 1; k <= ring_->order(); ++k) {
      term = Rational(1, k) * (term * *this);
      if (term.is_zero()) break;
      result += term;
    }
    return result;
  }

  // Multiplicative inverse of a jet with invertible constant term.
  Jet inverse() const {
    Rational c0 = constant_term();
    if (c0.is_zero()) throw ConfigError("jet inverse needs a nonzero constant term");
    Rational inv0 = Rational(1) / c0;
    Jet u = inv0 * *this;  // 1 + nilpotent
    u.add_term(0, Rational(-1));
    Jet result = scalar(ring(), Rational(1));
    Jet term = result;
    for (int k = 1; k <= ring_->order(); ++k) {
      term = Rational(-1) * (term * u);
      if (term.is_zero()) break;
      result += term;
    }
    return inv0 * result;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rational_to_string(c);
      if (k != 0) s += "*" + ring_->key_str(k);
    }
    return s;
  }

 private:
  void check_same_ring(const Jet& o) const {
    if (ring_ != o.ring_ && !(ring_ && o.ring_ && *ring_ == *o.ring_))
      throw ConfigError("jets from different rings");
  }

  const JetRing* ring_;
  std::map<JetKey, Rational> terms_;
};

}  // namespace wnaforge
