#include "walg/engine.hpp"

#include <algorithm>

namespace walg {

namespace {

Rat binom(long n, long k) {
  if (k < 0) return 0;
  Rat r(1);
  for (long t = 0; t < k; ++t) r *= frac(n - t, t + 1);
  return r;
}

}  // namespace

struct Engine::DepthGuard {
  Engine& e;
  explicit DepthGuard(Engine& eng) : e(eng) {
    if (++e.depth_ > 20000) throw Error("engine recursion depth exceeded");
  }
  ~DepthGuard() { --e.depth_; }
};

VState Engine::gen(const std::string& name, int d) {
  return genState(T_.genIndex(name), d);
}

VState Engine::genState(int g, int d) {
  if (T_.isFam(g) && d > 0) return canonicalize({Factor{uint16_t(g), uint16_t(d)}});
  return VState::word(Word{Factor{uint16_t(g), uint16_t(d)}});
}

VState Engine::canonicalize(const std::vector<Factor>& rightNested) {
  VState s = VState::vacuum();
  for (auto it = rightNested.rbegin(); it != rightNested.rend(); ++it)
    s = insertFactor(*it, s);
  return s;
}

LambdaPoly Engine::skewed(const LambdaPoly& p, bool bothOdd) {
  // [b lambda a] = -(-1)^{p_a p_b} [a_{-lambda-d} b]
  LambdaPoly out;
  Scalar outer(bothOdd ? 1 : -1);
  for (size_t n = 0; n < p.c.size(); ++n) {
    if (p.c[n].isZero()) continue;
    // (-lambda-d)^n X = sum_k C(n,k) (-1)^n lambda^{n-k} d^k X
    for (size_t k = 0; k <= n; ++k) {
      Scalar coef = outer * Scalar(binom(n, k) * Rat((n % 2) ? -1 : 1));
      out.addAt(n - k, derive(p.c[n], int(k)), coef);
    }
  }
  out.trim();
  return out;
}

LambdaPoly Engine::bracketGG(int g1, int g2) {
  bool f1 = T_.isFam(g1), f2 = T_.isFam(g2);
  if (f1 && f2) return LambdaPoly{};
  if (!f1 && f2) {
    LambdaPoly p;
    auto it = T_.famPair.find(g1);
    if (it != T_.famPair.end() && !it->second.isZero()) {
      int m = T_.famMOf(g2);
      p.addAt(0, genState(g2), it->second * Scalar(Rat(m)));
    }
    return p;
  }
  if (f1 && !f2) {
    return skewed(bracketGG(g2, g1), false);  // family generators are even
  }
  auto it = T_.br.find({g1, g2});
  if (it != T_.br.end()) return it->second;
  auto it2 = T_.br.find({g2, g1});
  if (it2 != T_.br.end())
    return skewed(it2->second, T_.gens[g1].odd && T_.gens[g2].odd);
  return LambdaPoly{};
}

LambdaPoly Engine::lbGenWord(int g, const Word& w) {
  DepthGuard dg(*this);
  if (w.empty()) return LambdaPoly{};
  Factor head = w[0];
  // base bracket with the head generator, then (lambda+d)^{head.d}
  LambdaPoly P = bracketGG(g, head.g);
  for (int t = 0; t < head.d; ++t) {
    LambdaPoly Q;
    for (size_t n = 0; n < P.c.size(); ++n) {
      if (P.c[n].isZero()) continue;
      Q.addAt(n + 1, P.c[n]);
      Q.addAt(n, derive(P.c[n]));
    }
    Q.trim();
    P = std::move(Q);
  }
  if (w.size() == 1) return P;

  Word c(w.begin() + 1, w.end());
  VState cState = VState::word(c);
  LambdaPoly R = lbGenWord(g, c);
  LambdaPoly out;
  // term 1: :[g lambda head] c:
  for (size_t n = 0; n < P.c.size(); ++n)
    if (!P.c[n].isZero()) out.addAt(n, normalOrder(P.c[n], cState));
  // term 2: +- :head [g lambda c]:
  bool sgn = T_.gens[g].odd && T_.gens[head.g].odd;
  Scalar sign(sgn ? -1 : 1);
  for (size_t n = 0; n < R.c.size(); ++n)
    if (!R.c[n].isZero()) out.addAt(n, insertFactor(head, R.c[n]), sign);
  // term 3: integral term
  for (size_t j = 0; j < P.c.size(); ++j) {
    if (P.c[j].isZero()) continue;
    LambdaPoly Q = bracket(P.c[j], cState);
    for (size_t i = 0; i < Q.c.size(); ++i)
      if (!Q.c[i].isZero()) out.addAt(i + j + 1, Q.c[i], Scalar(Rat(1, long(i + 1))));
  }
  out.trim();
  return out;
}

LambdaPoly Engine::lbFactorWord(const Factor& f, const Word& b) {
  if (T_.isFam(f.g) && f.d > 0) {
    // expand the derivative of a lattice operator first
    VState ex = derive(genState(f.g), f.d);
    return bracket(ex, VState::word(b));
  }
  LambdaPoly base = lbGenWord(f.g, b);
  if (f.d == 0) return base;
  // [d^k a lambda b] = (-lambda)^k [a lambda b]
  LambdaPoly out;
  for (size_t n = 0; n < base.c.size(); ++n)
    if (!base.c[n].isZero())
      out.addAt(n + f.d, base.c[n], Scalar(Rat((f.d % 2) ? -1 : 1)));
  return out;
}

LambdaPoly Engine::lbWords(const Word& a, const Word& b) {
  if (a.empty() || b.empty()) return LambdaPoly{};
  if (a.size() == 1) return lbFactorWord(a[0], b);
  auto key = std::make_pair(a, b);
  if (auto it = lbCache_.find(key); it != lbCache_.end()) return it->second;
  DepthGuard dg(*this);

  Factor f = a[0];
  Word r(a.begin() + 1, a.end());
  VState rState = VState::word(r);
  bool pf = T_.gens[f.g].odd;
  bool pr = T_.oddWord(r);
  Scalar sign((pf && pr) ? -1 : 1);

  LambdaPoly Y = lbWords(r, b);
  LambdaPoly Z = lbFactorWord(f, b);
  LambdaPoly out;

  // term 1: sum_j C(m+j, j) :(d^j f)(Y_{m+j}):
  for (size_t mj = 0; mj < Y.c.size(); ++mj) {
    if (Y.c[mj].isZero()) continue;
    for (size_t j = 0; j <= mj; ++j) {
      size_t m = mj - j;
      out.addAt(m, insertFactor(Factor{f.g, uint16_t(f.d + j)}, Y.c[mj]),
                Scalar(binom(long(mj), long(j))));
    }
  }
  // term 2
  for (size_t j = 0; j < Z.c.size(); ++j) {
    if (Z.c[j].isZero()) continue;
    // 2a: brackets [r mu Z_j]
    LambdaPoly W = bracket(rState, Z.c[j]);
    for (size_t i = 0; i < W.c.size(); ++i) {
      if (W.c[i].isZero()) continue;
      size_t m = i + j + 1;
      // j! i! / m!
      Rat coef(1);
      for (size_t t = 1; t <= m; ++t) coef /= Rat(long(t));
      for (size_t t = 1; t <= j; ++t) coef *= Rat(long(t));
      for (size_t t = 1; t <= i; ++t) coef *= Rat(long(t));
      out.addAt(m, W.c[i], sign * Scalar(coef));
    }
    // 2b: m = j
    out.addAt(j, normalOrder(rState, Z.c[j]), sign);
    // 2c: m < j
    for (size_t m = 0; m < j; ++m)
      out.addAt(m, normalOrder(derive(rState, int(j - m)), Z.c[j]),
                sign * Scalar(binom(long(j), long(m))));
  }
  out.trim();
  lbCache_.emplace(std::move(key), out);
  return out;
}

LambdaPoly Engine::bracket(const VState& a, const VState& b) {
  LambdaPoly out;
  for (auto& [wa, ca] : a.t)
    for (auto& [wb, cb] : b.t) {
      LambdaPoly p = lbWords(wa, wb);
      out.addPoly(p, ca * cb);
    }
  out.trim();
  return out;
}

VState Engine::insertFactor(const Factor& f, const VState& x) {
  VState out;
  for (auto& [w, c] : x.t) out.addState(insertFactorWord(f, w), c);
  return out;
}

VState Engine::insertFactorWord(const Factor& f, const Word& w) {
  DepthGuard dg(*this);
  if (T_.isFam(f.g) && f.d > 0) {
    VState ex = derive(genState(f.g), f.d);
    return normalOrder(ex, VState::word(w));
  }
  if (w.empty()) return VState::word(Word{f});
  Factor h = w[0];
  Word rest(w.begin() + 1, w.end());
  VState restState = VState::word(rest);

  if (T_.isFam(f.g) && T_.isFam(h.g)) {
    // lattice fusion :e^{mc} e^{nc}: = e^{(m+n)c}; family factors sit last
    int m = T_.famMOf(f.g) + T_.famMOf(h.g);
    if (!rest.empty()) throw Error("lattice factor not rightmost");
    if (m == 0) return VState::vacuum();
    return VState::word(Word{Factor{uint16_t(T_.famGen(m)), 0}});
  }

  if (f == h && T_.gens[f.g].odd) {
    // a_(-1) a_(-1) x = 1/2 sum_j (-1)^j/(j+1) :(d^{j+1}(a_(j)a)) x:
    LambdaPoly P = lbFactorWord(f, Word{h});
    VState out;
    for (size_t j = 0; j < P.c.size(); ++j) {
      if (P.c[j].isZero()) continue;
      Scalar coef(Rat((j % 2) ? -1 : 1, 2 * long(j + 1)));
      out.addState(normalOrder(derive(P.c[j], int(j + 1)), restState), coef);
    }
    return out;
  }

  if (f < h || f == h) {
    Word nw;
    nw.reserve(w.size() + 1);
    nw.push_back(f);
    nw.insert(nw.end(), w.begin(), w.end());
    return VState::word(nw);
  }

  // out-of-order: swap past the head
  bool sgn = T_.gens[f.g].odd && T_.gens[h.g].odd;
  VState swapped = insertFactor(h, insertFactorWord(f, rest));
  if (sgn) swapped = swapped.scaled(Scalar(-1));
  LambdaPoly P = lbFactorWord(f, Word{h});
  for (size_t j = 0; j < P.c.size(); ++j) {
    if (P.c[j].isZero()) continue;
    Scalar coef(Rat((j % 2) ? -1 : 1, long(j + 1)));
    swapped.addState(normalOrder(derive(P.c[j], int(j + 1)), restState), coef);
  }
  return swapped;
}

VState Engine::norWords(const Word& a, const Word& b) {
  if (a.empty()) return VState::word(b);
  if (b.empty()) return VState::word(a);
  if (a.size() == 1) return insertFactorWord(a[0], b);
  auto key = std::make_pair(a, b);
  if (auto it = norCache_.find(key); it != norCache_.end()) return it->second;
  DepthGuard dg(*this);

  Factor f = a[0];
  Word r(a.begin() + 1, a.end());
  VState rState = VState::word(r);
  VState bState = VState::word(b);
  bool sgn = T_.gens[f.g].odd && T_.oddWord(r);
  Scalar sign(sgn ? -1 : 1);

  VState out = insertFactor(f, norWords(r, b));
  LambdaPoly Pr = lbWords(r, b);
  for (size_t j = 0; j < Pr.c.size(); ++j)
    if (!Pr.c[j].isZero())
      out.addState(insertFactor(Factor{f.g, uint16_t(f.d + j + 1)}, Pr.c[j]),
                   Scalar(Rat(1, long(j + 1))));
  LambdaPoly Pf = lbFactorWord(f, b);
  for (size_t j = 0; j < Pf.c.size(); ++j)
    if (!Pf.c[j].isZero())
      out.addState(normalOrder(derive(rState, int(j + 1)), Pf.c[j]),
                   sign * Scalar(Rat(1, long(j + 1))));
  norCache_.emplace(std::move(key), out);
  return out;
}

VState Engine::normalOrder(const VState& a, const VState& b) {
  VState out;
  for (auto& [wa, ca] : a.t)
    for (auto& [wb, cb] : b.t) out.addState(norWords(wa, wb), ca * cb);
  return out;
}

VState Engine::deriveWord(const Word& w) {
  VState out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (T_.isFam(w[i].g)) {
      // translation rule d e^{mc} = m :c e^{mc}:
      int m = T_.famMOf(w[i].g);
      std::vector<Factor> fs(w.begin(), w.begin() + i);
      fs.push_back(Factor{uint16_t(T_.famTranslate), 0});
      fs.insert(fs.end(), w.begin() + i, w.end());
      out.addState(canonicalize(fs), Scalar(Rat(m)));
    } else {
      std::vector<Factor> fs(w.begin(), w.end());
      fs[i].d += 1;
      out.addState(canonicalize(fs));
    }
  }
  return out;
}

VState Engine::derive(const VState& a, int times) {
  VState cur = a;
  for (int t = 0; t < times; ++t) {
    VState next;
    for (auto& [w, c] : cur.t) next.addState(deriveWord(w), c);
    cur = std::move(next);
  }
  return cur;
}

VState Engine::nproduct(const VState& a, int n, const VState& b) {
  if (n < -1) throw Error("unsupported product depth");
  if (n == -1) return normalOrder(a, b);
  LambdaPoly p = bracket(a, b);
  Rat fact(1);
  for (int t = 2; t <= n; ++t) fact *= t;
  return p.coeff(n).scaled(Scalar(fact));
}

Engine::JacobiResult Engine::checkJacobi(const VState& a, const VState& b,
                                         const VState& c) {
  std::map<std::pair<int, int>, VState> jac;
  auto addTo = [&](int i, int j, const VState& v, const Scalar& s) {
    if (v.isZero() || s.isZero()) return;
    auto& slot = jac[{i, j}];
    slot.addState(v, s);
    if (slot.isZero()) jac.erase({i, j});
  };

  // [a lambda [b mu c]]
  LambdaPoly inner = bracket(b, c);
  for (size_t j = 0; j < inner.c.size(); ++j) {
    if (inner.c[j].isZero()) continue;
    LambdaPoly p = bracket(a, inner.c[j]);
    for (size_t i = 0; i < p.c.size(); ++i) addTo(int(i), int(j), p.c[i], Scalar(1));
  }
  // -(-1)^{p_a p_b} [b mu [a lambda c]]
  bool bothOdd = T_.oddState(a) && T_.oddState(b);
  Scalar s2(bothOdd ? 1 : -1);
  LambdaPoly inner2 = bracket(a, c);
  for (size_t i = 0; i < inner2.c.size(); ++i) {
    if (inner2.c[i].isZero()) continue;
    LambdaPoly p = bracket(b, inner2.c[i]);
    for (size_t j = 0; j < p.c.size(); ++j) addTo(int(i), int(j), p.c[j], s2);
  }
  // -[[a lambda b] lambda+mu c]
  LambdaPoly ab = bracket(a, b);
  for (size_t m = 0; m < ab.c.size(); ++m) {
    if (ab.c[m].isZero()) continue;
    LambdaPoly p = bracket(ab.c[m], c);
    for (size_t i2 = 0; i2 < p.c.size(); ++i2) {
      if (p.c[i2].isZero()) continue;
      for (size_t t = 0; t <= i2; ++t)
        addTo(int(m + t), int(i2 - t), p.c[i2], Scalar(-binom(long(i2), long(t))));
    }
  }

  JacobiResult r;
  r.residual = std::move(jac);
  r.ok = r.residual.empty();
  return r;
}

bool Engine::isPrimary(const VState& x, int w2) {
  if (!T_.hasConformal) throw Error("table has no conformal vector");
  LambdaPoly p = bracket(T_.conformal, x);
  LambdaPoly expect;
  expect.addAt(0, derive(x));
  expect.addAt(1, x, Scalar(frac(w2, 2)));
  return p == expect;
}

Scalar Engine::centralChargeOf(const VState& L) {
  LambdaPoly p = bracket(L, L);
  VState cubic = p.coeff(3);
  if (cubic.isZero()) return Scalar(0);
  if (cubic.t.size() != 1 || !cubic.t.begin()->first.empty())
    throw Error("lambda^3 term of [L,L] is not central");
  return cubic.t.begin()->second * Scalar(12);
}

}  // namespace walg
