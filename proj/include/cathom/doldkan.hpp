#pragma once

#include <vector>

#include "cathom/chain.hpp"
#include "cathom/intmatrix.hpp"
#include "cathom/simpset.hpp"

namespace cathom {

// truncated simplicial abelian group: free modules M_0 .. M_{dim+1} with all
// structure maps as integer matrices.  face[n][i] : M_n -> M_{n-1} for n >= 1
// (face[0] stays empty); degen[n][j] : M_n -> M_{n+1} for n <= dim, so
// degen.size() == ranks.size() - 1.
struct SimpModule {
  int dim = 0;
  std::vector<long> ranks;
  std::vector<std::vector<IntMatrix>> face;
  std::vector<std::vector<IntMatrix>> degen;

  int levels() const { return (int)ranks.size() - 1; }
  // shapes plus the full set of simplicial identities as matrix equations
  bool validate(std::string* why = nullptr) const;
};

// matrix of the contravariant action of a monotone table theta : [a] -> [cod],
// a = theta.size() - 1, as a map M_cod -> M_a.  Composite tables multiply:
// simp_action(alpha) * simp_action(gamma) == simp_action(gamma o alpha).
IntMatrix simp_action(const SimpModule& m, const std::vector<int>& theta, int cod);

// free simplicial module on the simplices of x, basis in simplex_at order
SimpModule linearize(const TruncSimpSet& x);

// right adjoint of normalization: D(E)_n = sum over surjections [n] ->> [k]
// of a copy of E_k, summands ordered (k ascending, table lex), so the
// identity summand sits last in each level.  Levels run through dim + 1
// (default dim: the top nonzero degree of e).  Rejects complexes below 0.
SimpModule dold_kan_D(const ChainComplex& e, int dim = -1);

// intersection of the kernels of face[n][1..n]: columns form a basis of the
// normalized subgroup N(M)_n inside M_n, in Hermite normal form (so the
// basis, and everything built from it, is canonical)
IntMatrix normalized_basis(const SimpModule& m, int n);

// normalized chains, differential induced by face[n][0]; valid through m.dim
TruncChains dold_kan_N(const SimpModule& m);

// the denormalization isomorphism phi_n : D(N(M))_n -> M_n, one matrix per
// level of m; each is unimodular and the family is a simplicial map.  For
// m = dold_kan_D(e) every matrix is an identity: N and D round-trip on the
// nose in that order.
std::vector<IntMatrix> dold_kan_iso(const SimpModule& m);

// counit of the adjunction: the chain map dold_kan_N-of-D(E) composed with
// the identification above, concretely the projection of D(E)_n onto its
// identity summand.  Returned per level through the truncation of D(E).
std::vector<IntMatrix> assembly(const ChainComplex& e, int dim = -1);

// given a chain map f from chains(x) to e (one matrix per level, validated),
// produce the simplicial map u : R[x] -> D(e) through which f factors: per
// level, assembly(e)[n] * u[n] agrees with f[n] on the nondegenerate columns
// and vanishes on the degenerate ones.  u has one matrix per level
// 0 .. x.dim + 1, columns indexed by all simplices in simplex_at order.
std::vector<IntMatrix> adjunct_map(const TruncSimpSet& x, const ChainComplex& e,
                                   const std::vector<IntMatrix>& f);

}  // namespace cathom
