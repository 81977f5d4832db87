#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "walg/scalar.hpp"

namespace walg {

// One normally ordered factor: d-th derivative of generator g.  Generator
// ids are assigned in the table's canonical order, so factors compare
// numerically.
struct Factor {
  uint16_t g = 0;
  uint16_t d = 0;
  bool operator==(const Factor& o) const { return g == o.g && d == o.d; }
  auto operator<=>(const Factor& o) const = default;
};

// Right-nested normally ordered word :f1 (f2 (... fn)):, factors weakly
// increasing; the empty word is the vacuum.
using Word = std::vector<Factor>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Linear combination of canonical words.
class VState {
 public:
  std::map<Word, Scalar, WordLess> t;

  VState() = default;
  static VState vacuum(const Scalar& c = Scalar(1)) {
    VState v;
    v.add(Word{}, c);
    return v;
  }
  static VState word(Word w, const Scalar& c = Scalar(1)) {
    VState v;
    v.add(std::move(w), c);
    return v;
  }

  bool isZero() const { return t.empty(); }
  void add(Word w, const Scalar& c) {
    if (c.isZero()) return;
    auto [it, fresh] = t.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second += c;
      if (it->second.isZero()) t.erase(it);
    }
  }
  void addState(const VState& o, const Scalar& c = Scalar(1)) {
    if (c.isZero()) return;
    for (auto& [w, x] : o.t) add(w, x * c);
  }
  VState operator+(const VState& o) const {
    VState r = *this;
    r.addState(o);
    return r;
  }
  VState operator-(const VState& o) const {
    VState r = *this;
    r.addState(o, Scalar(-1));
    return r;
  }
  VState scaled(const Scalar& c) const {
    VState r;
    if (c.isZero()) return r;
    for (auto& [w, x] : t) r.add(w, x * c);
    return r;
  }
  bool operator==(const VState& o) const { return t == o.t; }

  // coefficient of the vacuum word
  Scalar vacuumCoeff() const {
    auto it = t.find(Word{});
    return it == t.end() ? Scalar(0) : it->second;
  }
};

// Polynomial in lambda with VState coefficients; coeff[n] is the coefficient
// of lambda^n, i.e. (1/n!) a_(n) b for a bracket.
class LambdaPoly {
 public:
  std::vector<VState> c;

  bool isZero() const {
    for (auto& x : c)
      if (!x.isZero()) return false;
    return true;
  }
  int topDegree() const {
    for (int n = int(c.size()) - 1; n >= 0; --n)
      if (!c[n].isZero()) return n;
    return -1;
  }
  VState& at(size_t n) {
    if (c.size() <= n) c.resize(n + 1);
    return c[n];
  }
  VState coeff(size_t n) const { return n < c.size() ? c[n] : VState(); }
  void addAt(size_t n, const VState& v, const Scalar& s = Scalar(1)) {
    if (v.isZero() || s.isZero()) return;
    at(n).addState(v, s);
  }
  void addPoly(const LambdaPoly& o, const Scalar& s = Scalar(1)) {
    for (size_t n = 0; n < o.c.size(); ++n) addAt(n, o.c[n], s);
  }
  void trim() {
    while (!c.empty() && c.back().isZero()) c.pop_back();
  }
  bool operator==(const LambdaPoly& o) const {
    for (size_t n = 0; n < std::max(c.size(), o.c.size()); ++n)
      if (!(coeff(n) == o.coeff(n))) return false;
    return true;
  }
};

}  // namespace walg
