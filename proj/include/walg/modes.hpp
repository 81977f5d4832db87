#pragma once

#include <map>

#include "walg/engine.hpp"

namespace walg {

// Fourier mode of a field: X_n lowers conformal weight by n; n is integral
// or half-integral depending on the sector.
struct ModeKey {
  int gen = 0;
  Rat n;  // mode index
  bool operator<(const ModeKey& o) const {
    if (gen != o.gen) return gen < o.gen;
    return n < o.n;
  }
  bool operator==(const ModeKey& o) const { return gen == o.gen && n == o.n; }
};

// Linear combination of generator modes plus a central term.
struct ModeExpr {
  std::map<ModeKey, Scalar> terms;
  Scalar central;

  static ModeExpr mode(int gen, const Rat& n, const Scalar& c = Scalar(1)) {
    ModeExpr m;
    m.terms[{gen, n}] = c;
    return m;
  }
  void add(const ModeKey& k, const Scalar& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.isZero()) terms.erase(it);
    }
  }
  bool isZero() const { return terms.empty() && central.isZero(); }
  bool operator==(const ModeExpr& o) const {
    return terms == o.terms && central == o.central;
  }
};

// generalized binomial C(q, j)
Rat binomRat(const Rat& q, long j);

// mode of a linear state (combination of derivatives of generators and the
// vacuum); throws "mode expansion depth" on composite words
ModeExpr stateMode(const AlgebraTable& t, const VState& v, const Rat& n);

// super-commutator [x_m, y_n] via the commutator formula
// sum_j C(m + Delta_x - 1, j) (x_(j) y)_{m+n}
ModeExpr modeBracket(Engine& e, int genX, const Rat& m, int genY, const Rat& n);
ModeExpr modeBracket(Engine& e, const ModeExpr& x, const ModeExpr& y);

std::string modeStr(const AlgebraTable& t, const ModeExpr& m);

}  // namespace walg
