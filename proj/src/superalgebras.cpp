#include "walg/superalgebras.hpp"

#include <array>
#include <cstdlib>

namespace walg {

namespace {
std::string g_dataDir;
}

#ifndef WALG_DEFAULT_DATA_DIR
#define WALG_DEFAULT_DATA_DIR "data/algebras"
#endif

std::string dataDir() {
  if (!g_dataDir.empty()) return g_dataDir;
  if (const char* env = std::getenv("WALG_DATA_DIR")) return env;
  return WALG_DEFAULT_DATA_DIR;
}

void setDataDir(const std::string& dir) { g_dataDir = dir; }

void validateTable(const AlgebraTable& t) {
  for (auto& [key, poly] : t.br) {
    auto [a, b] = key;
    const GenInfo& ga = t.gens[a];
    const GenInfo& gb = t.gens[b];
    for (size_t n = 0; n < poly.c.size(); ++n) {
      if (poly.c[n].isZero()) continue;
      if (2 * int(n) > ga.w2 + gb.w2 - 2)
        throw Error("lambda degree bound violated for [" + ga.name + "," + gb.name + "]");
      for (auto& [w, c] : poly.c[n].t) {
        if (t.oddWord(w) != (ga.odd ^ gb.odd))
          throw Error("parity mismatch in [" + ga.name + "," + gb.name + "]");
        if (t.weight2(w) != ga.w2 + gb.w2 - 2 - 2 * int(n))
          throw Error("weight mismatch in [" + ga.name + "," + gb.name + "]");
        if (t.grade(w) != ga.grade + gb.grade)
          throw Error("grade mismatch in [" + ga.name + "," + gb.name + "]");
      }
    }
  }
}

AlgebraTable loadAlgebra(const std::string& name, const Scalar& level) {
  static const std::array<const char*, 6> known = {
      "psl22_affine", "ghosts", "wpr", "sf", "pi", "n4min"};
  bool ok = false;
  for (auto* k : known) ok |= (name == k);
  if (!ok) throw Error("unknown algebra '" + name + "'");

  AlgebraTable t = loadTableFile(dataDir() + "/" + name + ".json");
  if (t.hasConformal && level.isRational() && level.rationalValue() == 0)
    throw Error("critical level");
  bool symbolic = level == Scalar::kappa();
  if (!symbolic) t = t.atLevel(level);
  validateTable(t);

  // every stored word must already be canonical
  Engine e(t);
  for (auto& [key, poly] : t.br)
    for (auto& v : poly.c)
      for (auto& [w, c] : v.t) {
        VState canon = e.canonicalize(std::vector<Factor>(w.begin(), w.end()));
        if (!(canon == VState::word(w)))
          throw Error("non-canonical word in data: " + t.wordStr(w));
      }
  return t;
}

void validateConformal(Engine& e) {
  const AlgebraTable& t = e.table();
  if (!t.hasConformal) return;
  Scalar c = e.centralChargeOf(t.conformal);
  if (!(c == t.centralCharge))
    throw Error("central charge mismatch in " + t.name + ": got " + c.str());
  LambdaPoly ll = e.bracket(t.conformal, t.conformal);
  if (!(ll.coeff(0) == e.derive(t.conformal)))
    throw Error("[L,L] lambda^0 is not dL in " + t.name);
  if (!(ll.coeff(1) == t.conformal.scaled(Scalar(2))))
    throw Error("[L,L] lambda^1 is not 2L in " + t.name);
  if (!ll.coeff(2).isZero()) throw Error("[L,L] lambda^2 nonzero in " + t.name);
  for (int g : t.primaries)
    if (!e.isPrimary(e.genState(g), t.gens[g].w2))
      throw Error("generator " + t.gens[g].name + " is not primary in " + t.name);
}

int verifyJacobiAll(Engine& e, int famSample) {
  const AlgebraTable& t = e.table();
  std::vector<int> ids;
  for (size_t g = 0; g < t.gens.size(); ++g) {
    if (t.gens[g].family && std::abs(t.gens[g].famM) > famSample) continue;
    ids.push_back(int(g));
  }
  int count = 0;
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i; j < ids.size(); ++j)
      for (size_t l = j; l < ids.size(); ++l) {
        auto r = e.checkJacobi(e.genState(ids[i]), e.genState(ids[j]),
                               e.genState(ids[l]));
        ++count;
        if (!r.ok)
          throw Error("Jacobi fails on (" + t.gens[ids[i]].name + "," +
                      t.gens[ids[j]].name + "," + t.gens[ids[l]].name + ") in " +
                      t.name);
      }
  return count;
}

VState sugawara(Engine& e, const Scalar& kk) {
  auto no = [&](const char* a, const char* b) {
    return e.normalOrder(e.gen(a), e.gen(b));
  };
  VState even = no("H1", "H1").scaled(Scalar(Rat(1, 2)));
  even.addState(no("E1", "F1"));
  even.addState(no("F1", "E1"));
  even.addState(no("H2", "H2"), Scalar(Rat(-1, 2)));
  even.addState(no("E2", "F2"), Scalar(-1));
  even.addState(no("F2", "E2"), Scalar(-1));

  VState odd;
  odd.addState(no("epp", "fmm"));
  odd.addState(no("fmm", "epp"), Scalar(-1));
  odd.addState(no("epm", "fmp"), Scalar(-1));
  odd.addState(no("fmp", "epm"));
  odd.addState(no("emp", "fpm"), Scalar(-1));
  odd.addState(no("fpm", "emp"));
  odd.addState(no("emm", "fpp"));
  odd.addState(no("fpp", "emm"), Scalar(-1));

  VState total = even - odd;
  return total.scaled(Scalar(1) / (Scalar(2) * kk));
}

VState applyOmega(Engine& e, const VState& x) {
  const AlgebraTable& t = e.table();
  static const std::pair<const char*, const char*> swaps[] = {
      {"E1", "E2"}, {"H1", "H2"}, {"F1", "F2"}, {"epp", "fpp"},
      {"epm", "fmp"}, {"emp", "fpm"}, {"emm", "fmm"}};
  std::map<int, int> m;
  for (auto& [a, b] : swaps) {
    int ia = t.genIndex(a), ib = t.genIndex(b);
    m[ia] = ib;
    m[ib] = ia;
  }
  Scalar minusK = -Scalar::kappa();
  VState out;
  for (auto& [w, c] : x.t) {
    std::vector<Factor> fs(w.begin(), w.end());
    for (auto& f : fs)
      if (auto it = m.find(f.g); it != m.end()) f.g = uint16_t(it->second);
    out.addState(e.canonicalize(fs), c.subst(VarK, minusK));
  }
  return out;
}

Scalar supertracePairing(Engine& e, const std::string& a, const std::string& b) {
  LambdaPoly p = e.bracket(e.gen(a), e.gen(b));
  VState lin = p.coeff(1);
  if (lin.isZero()) return Scalar(0);
  if (lin.t.size() != 1 || !lin.t.begin()->first.empty())
    throw Error("lambda^1 part of current bracket not central");
  return lin.t.begin()->second / Scalar::kappa();
}

}  // namespace walg
