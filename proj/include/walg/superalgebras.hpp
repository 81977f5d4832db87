#pragma once

#include <memory>
#include <string>

#include "walg/engine.hpp"

namespace walg {

// Directory holding the algebra definition files; WALG_DATA_DIR overrides
// the compiled-in default.
std::string dataDir();
void setDataDir(const std::string& dir);

// Load one of {psl22_affine, ghosts, wpr, sf, pi, n4min} at the given level
// (pass Scalar::kappa() to stay symbolic).  The loaded table is validated:
// canonical words, parity/weight/grade homogeneity, lambda-degree bound.
AlgebraTable loadAlgebra(const std::string& name,
                         const Scalar& level = Scalar::kappa());

// structural validation used by loadAlgebra; throws on violation
void validateTable(const AlgebraTable& t);

// engine-level validation of the conformal data (central charge, primaries)
void validateConformal(Engine& e);

// Jacobi sweep over all unordered generator triples (lattice families are
// sampled at |m| <= famSample).  Returns the number of triples checked;
// throws with the offending triple on failure.
int verifyJacobiAll(Engine& e, int famSample = 2);

// Sugawara vector of V^k(psl(2|2)) over a table containing the currents.
VState sugawara(Engine& e, const Scalar& kk);

// Order-2 automorphism: swaps the two sl(2)s, negates the level.
VState applyOmega(Engine& e, const VState& x);

// supertrace pairing read off the lambda^1 part of the current brackets
Scalar supertracePairing(Engine& e, const std::string& a, const std::string& b);

}  // namespace walg
