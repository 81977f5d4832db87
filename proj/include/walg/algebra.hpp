#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walg/state.hpp"

namespace walg {

struct GenInfo {
  std::string name;
  bool odd = false;
  int w2 = 2;        // twice the conformal weight
  int grade = 0;     // horizontal (or ghost) grade
  bool family = false;
  int famM = 0;      // lattice exponent m for family members
};

// Structure-constant table of a vertex superalgebra.  Generator ids double
// as the canonical ordering of factors in normally ordered words.
class AlgebraTable {
 public:
  std::string name;
  std::vector<GenInfo> gens;
  // brackets keyed by (a,b) as stored in the data file; the engine derives
  // the opposite direction by skew-symmetry
  std::map<std::pair<int, int>, LambdaPoly> br;

  // lattice family e^{mc}: ids famBase .. famBase+2*famMaxAbs-1 correspond to
  // m = -famMaxAbs..-1,1..famMaxAbs; [h lambda e^{mc}] = famPair(h)*m e^{mc}
  bool hasFamily = false;
  int famBase = -1;
  int famMaxAbs = 0;
  std::string famName;
  int famTranslate = -1;  // Heisenberg generator in d e^{mc} = m :X e^{mc}:
  std::map<int, Scalar> famPair;  // generator id -> pairing coefficient

  bool hasConformal = false;
  VState conformal;
  Scalar centralCharge;
  std::vector<int> primaries;

  int genIndex(const std::string& n) const;
  // id of e^{mc}; m != 0, |m| <= famMaxAbs
  int famGen(int m) const;
  bool isFam(int g) const { return hasFamily && g >= famBase; }
  int famMOf(int g) const;

  bool oddWord(const Word& w) const;
  int weight2(const Word& w) const;
  int grade(const Word& w) const;
  bool oddState(const VState& v) const;      // all terms odd (throws if mixed)
  int weight2Gen(int g) const { return gens[g].w2; }

  std::string genName(int g) const;
  std::string wordStr(const Word& w) const;
  std::string stateStr(const VState& v) const;
  std::string lambdaStr(const LambdaPoly& p) const;

  // substitute the level k -> value in every stored coefficient
  AlgebraTable atLevel(const Scalar& kval) const;
};

// Load a table from its JSON definition (see data/algebras/README.md).
AlgebraTable loadTableFile(const std::string& path);

// Tensor product table: generators of a then b, zero cross brackets.
// weight2 overrides (by generator name) let the caller re-grade generators,
// e.g. to weights under a different conformal vector.
AlgebraTable tensorTables(const AlgebraTable& a, const AlgebraTable& b,
                          const std::string& name,
                          const std::map<std::string, int>& w2Override = {},
                          const std::map<std::string, int>& gradeOverride = {});

}  // namespace walg
