#include "walg/algebra.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace walg {

using nlohmann::json;

int AlgebraTable::genIndex(const std::string& n) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == n) return int(i);
  throw Error("unknown generator '" + n + "' in algebra " + name);
}

int AlgebraTable::famGen(int m) const {
  if (!hasFamily || m == 0 || m < -famMaxAbs || m > famMaxAbs)
    throw Error("lattice exponent out of range: " + std::to_string(m));
  return famBase + (m < 0 ? m + famMaxAbs : m + famMaxAbs - 1);
}

int AlgebraTable::famMOf(int g) const {
  return gens[g].famM;
}

bool AlgebraTable::oddWord(const Word& w) const {
  bool odd = false;
  for (auto& f : w) odd ^= gens[f.g].odd;
  return odd;
}

int AlgebraTable::weight2(const Word& w) const {
  int s = 0;
  for (auto& f : w) s += gens[f.g].w2 + 2 * f.d;
  return s;
}

int AlgebraTable::grade(const Word& w) const {
  int s = 0;
  for (auto& f : w) s += gens[f.g].grade;
  return s;
}

bool AlgebraTable::oddState(const VState& v) const {
  bool first = true, odd = false;
  for (auto& [w, c] : v.t) {
    bool o = oddWord(w);
    if (first) {
      odd = o;
      first = false;
    } else if (o != odd) {
      throw Error("state of mixed parity");
    }
  }
  return odd;
}

std::string AlgebraTable::genName(int g) const { return gens[g].name; }

std::string AlgebraTable::wordStr(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  if (w.size() > 1) os << ":";
  bool first = true;
  for (auto& f : w) {
    if (!first) os << " ";
    first = false;
    os << gens[f.g].name;
    for (int i = 0; i < f.d; ++i) os << "'";
  }
  if (w.size() > 1) os << ":";
  return os.str();
}

std::string AlgebraTable::stateStr(const VState& v) const {
  if (v.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : v.t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << wordStr(w);
  }
  return os.str();
}

std::string AlgebraTable::lambdaStr(const LambdaPoly& p) const {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t n = 0; n < p.c.size(); ++n) {
    if (p.c[n].isZero()) continue;
    if (!first) os << " + ";
    first = false;
    if (n > 0) os << "L^" << n << "*";
    os << "[" << stateStr(p.c[n]) << "]";
  }
  return os.str();
}

AlgebraTable AlgebraTable::atLevel(const Scalar& kval) const {
  AlgebraTable t = *this;
  auto sub = [&](Scalar& s) { s = s.subst(VarK, kval); };
  for (auto& [key, poly] : t.br)
    for (auto& v : poly.c)
      for (auto& [w, c] : v.t) sub(c);
  for (auto& [g, c] : t.famPair) sub(c);
  if (t.hasConformal) {
    for (auto& [w, c] : t.conformal.t) sub(c);
    sub(t.centralCharge);
  }
  // drop terms that became zero
  for (auto& [key, poly] : t.br)
    for (auto& v : poly.c)
      std::erase_if(v.t, [](const auto& p) { return p.second.isZero(); });
  return t;
}

namespace {

Factor parseFactor(const AlgebraTable& t, const std::string& s) {
  std::string base = s;
  int d = 0;
  while (!base.empty() && base.back() == '\'') {
    base.pop_back();
    ++d;
  }
  int g;
  auto lb = base.find('[');
  if (lb != std::string::npos && base.back() == ']') {
    std::string fam = base.substr(0, lb);
    if (!t.hasFamily || fam != t.famName)
      throw Error("unknown family factor " + s);
    int m = std::stoi(base.substr(lb + 1, base.size() - lb - 2));
    g = t.famGen(m);
  } else {
    g = t.genIndex(base);
  }
  return Factor{uint16_t(g), uint16_t(d)};
}

// raw right-nested word; canonicalized later by the loader's engine pass
std::vector<Factor> parseWordList(const AlgebraTable& t, const json& j) {
  std::vector<Factor> fs;
  for (auto& e : j) fs.push_back(parseFactor(t, e.get<std::string>()));
  return fs;
}

}  // namespace

// states in data files are given as raw factor lists; canonicalization needs
// the engine, so the loader stores them verbatim and algebra consumers run
// Engine::canonicalize once at load (see superalgebras.cpp).
AlgebraTable loadTableFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open algebra file " + path);
  json j;
  in >> j;

  AlgebraTable t;
  t.name = j.at("name").get<std::string>();
  for (auto& g : j.at("generators")) {
    GenInfo gi;
    gi.name = g.at("name").get<std::string>();
    gi.odd = g.at("parity").get<std::string>() == "odd";
    Scalar w = Scalar::parse(g.at("weight").get<std::string>());
    Rat w2 = Rat(w.rationalValue() * 2);
    if (w2.get_den() != 1) throw Error("weight not half-integral");
    gi.w2 = int(w2.get_num().get_si());
    gi.grade = g.value("grade", 0);
    t.gens.push_back(gi);
  }
  if (j.contains("family")) {
    auto& f = j.at("family");
    t.hasFamily = true;
    t.famName = f.at("name").get<std::string>();
    t.famMaxAbs = f.value("max_abs_m", 8);
    Scalar wpm = Scalar::parse(f.at("weight_per_m").get<std::string>());
    Rat w2pm = Rat(wpm.rationalValue() * 2);
    t.famBase = int(t.gens.size());
    for (int m = -t.famMaxAbs; m <= t.famMaxAbs; ++m) {
      if (m == 0) continue;
      GenInfo gi;
      gi.name = t.famName + "[" + std::to_string(m) + "]";
      gi.odd = f.at("parity").get<std::string>() == "odd";
      gi.w2 = int(Rat(w2pm * m).get_num().get_si());
      gi.grade = 0;
      gi.family = true;
      gi.famM = m;
      t.gens.push_back(gi);
    }
    for (auto& [gname, coef] : f.at("pairing").items())
      t.famPair[t.genIndex(gname)] = Scalar::parse(coef.get<std::string>());
    t.famTranslate = t.genIndex(f.at("translate").get<std::string>());
  }
  for (auto& b : j.at("brackets")) {
    int a = t.genIndex(b.at("a").get<std::string>());
    int bb = t.genIndex(b.at("b").get<std::string>());
    LambdaPoly p;
    for (auto& [deg, terms] : b.at("poly").items()) {
      int n = std::stoi(deg);
      for (auto& term : terms) {
        Scalar c = Scalar::parse(term.at("c").get<std::string>());
        auto fs = parseWordList(t, term.at("w"));
        // loader invariant: data words are sorted canonical words already;
        // validated by the canonicalization pass in load_algebra
        Word w;
        for (auto& f : fs) w.push_back(f);
        p.at(n).add(w, c);
      }
    }
    p.trim();
    if (t.br.count({a, bb})) throw Error("duplicate bracket entry");
    t.br[{a, bb}] = p;
  }
  if (j.contains("conformal")) {
    auto& c = j.at("conformal");
    t.hasConformal = true;
    for (auto& term : c.at("state")) {
      Scalar coef = Scalar::parse(term.at("c").get<std::string>());
      auto fs = parseWordList(t, term.at("w"));
      Word w(fs.begin(), fs.end());
      t.conformal.add(w, coef);
    }
    t.centralCharge = Scalar::parse(c.at("central_charge").get<std::string>());
    for (auto& p : c.value("primary", json::array()))
      t.primaries.push_back(t.genIndex(p.get<std::string>()));
  }
  return t;
}

AlgebraTable tensorTables(const AlgebraTable& a, const AlgebraTable& b,
                          const std::string& name,
                          const std::map<std::string, int>& w2Override,
                          const std::map<std::string, int>& gradeOverride) {
  if (a.hasFamily) throw Error("tensorTables: family must sit in the right factor");
  AlgebraTable t;
  t.name = name;
  t.gens = a.gens;
  int off = int(a.gens.size());
  for (auto& g : b.gens) t.gens.push_back(g);
  for (auto& gi : t.gens) {
    if (auto it = w2Override.find(gi.name); it != w2Override.end()) gi.w2 = it->second;
    if (auto it = gradeOverride.find(gi.name); it != gradeOverride.end())
      gi.grade = it->second;
  }
  for (auto& [key, p] : a.br) t.br[key] = p;
  for (auto& [key, p] : b.br) {
    LambdaPoly q = p;
    for (auto& v : q.c) {
      VState nv;
      for (auto& [w, c] : v.t) {
        Word nw = w;
        for (auto& f : nw) f.g += off;
        nv.add(nw, c);
      }
      v = nv;
    }
    t.br[{key.first + off, key.second + off}] = q;
  }
  if (b.hasFamily) {
    t.hasFamily = true;
    t.famName = b.famName;
    t.famMaxAbs = b.famMaxAbs;
    t.famBase = b.famBase + off;
    t.famTranslate = b.famTranslate + off;
    for (auto& [g, c] : b.famPair) t.famPair[g + off] = c;
  }
  if (a.hasConformal && b.hasConformal) {
    t.hasConformal = true;
    t.conformal = a.conformal;
    for (auto& [w, c] : b.conformal.t) {
      Word nw = w;
      for (auto& f : nw) f.g += off;
      t.conformal.add(nw, c);
    }
    t.centralCharge = a.centralCharge + b.centralCharge;
    t.primaries = a.primaries;
    for (int p : b.primaries) t.primaries.push_back(p + off);
  }
  return t;
}

}  // namespace walg
