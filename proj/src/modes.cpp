#include "walg/modes.hpp"

#include <sstream>

namespace walg {

Rat binomRat(const Rat& q, long j) {
  Rat r(1);
  for (long t = 0; t < j; ++t) r *= (q - t) / Rat(t + 1);
  return r;
}

ModeExpr stateMode(const AlgebraTable& t, const VState& v, const Rat& n) {
  ModeExpr out;
  for (auto& [w, c] : v.t) {
    if (w.empty()) {
      if (n == 0) out.central += c;
      continue;  // (1)_n = 0 for n != 0
    }
    if (w.size() > 1) throw Error("mode expansion depth");
    Factor f = w[0];
    // (dX)_n = -(n + Delta_X) X_n applied d times
    Rat coef(1);
    Rat base = frac(t.gens[f.g].w2, 2);
    for (int i = f.d - 1; i >= 0; --i) coef *= -(n + base + i);
    out.add({f.g, n}, c * Scalar(coef));
  }
  return out;
}

ModeExpr modeBracket(Engine& e, int genX, const Rat& m, int genY, const Rat& n) {
  const AlgebraTable& t = e.table();
  LambdaPoly p = e.bracket(e.genState(genX), e.genState(genY));
  ModeExpr out;
  Rat shift = m + frac(t.gens[genX].w2, 2) - 1;
  Rat fact(1);
  for (size_t j = 0; j < p.c.size(); ++j) {
    if (j > 0) fact *= Rat(long(j));
    if (p.c[j].isZero()) continue;
    // x_(j) y = j! * coeff_j
    Rat coef = binomRat(shift, long(j)) * fact;
    ModeExpr part = stateMode(t, p.c[j], m + n);
    for (auto& [k, c] : part.terms) out.add(k, c * Scalar(coef));
    out.central += part.central * Scalar(coef);
  }
  return out;
}

ModeExpr modeBracket(Engine& e, const ModeExpr& x, const ModeExpr& y) {
  ModeExpr out;
  for (auto& [kx, cx] : x.terms)
    for (auto& [ky, cy] : y.terms) {
      ModeExpr part = modeBracket(e, kx.gen, kx.n, ky.gen, ky.n);
      Scalar c = cx * cy;
      for (auto& [k, v] : part.terms) out.add(k, v * c);
      out.central += part.central * c;
    }
  return out;
}

std::string modeStr(const AlgebraTable& t, const ModeExpr& m) {
  if (m.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : m.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << t.gens[k.gen].name << "_{" << k.n.get_str()
       << "}";
  }
  if (!m.central.isZero()) {
    if (!first) os << " + ";
    os << "(" << m.central.str() << ")*K";
  }
  return os.str();
}

}  // namespace walg
