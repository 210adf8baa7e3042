#pragma once

#include "cathom/abgroup.hpp"
#include "cathom/fincat.hpp"
#include "cathom/intmatrix.hpp"

namespace cathom {

// pointwise-free module over a finite category: a free abelian group per
// object, an integer matrix per morphism acting on column vectors.
// Covariant: action(f) : E(src f) -> E(tgt f), action(g.f) = action(g)*action(f).
// Contravariant: action(f) : E(tgt f) -> E(src f), action(g.f) = action(f)*action(g).
struct CoeffFunctor {
  CatPtr base;
  bool contravariant = false;
  std::vector<long> rank;           // per object
  std::vector<IntMatrix> action;    // per morphism

  long rank_at(int obj) const { return rank[obj]; }
  // domain/codomain objects of action[m]
  int from_obj(int m) const { return contravariant ? base->tgt(m) : base->src(m); }
  int to_obj(int m) const { return contravariant ? base->src(m) : base->tgt(m); }

  bool validate(std::string* why = nullptr) const;
};

CoeffFunctor constant_coeff(const CatPtr& base, long rank, bool contravariant);
// covariant: free module on hom(c, -), action by post-composition;
// contravariant: free module on hom(-, c), action by pre-composition
CoeffFunctor representable_coeff(const CatPtr& base, int c, bool contravariant = false);
// restrict along a functor: (E . p) on dom(p)
CoeffFunctor restrict_coeff(const CoeffFunctor& e, const Functor& p);
// pointwise tensor product (Kronecker actions); same base, same variance
CoeffFunctor tensor_pointwise(const CoeffFunctor& a, const CoeffFunctor& b);

// bounded complex of coefficient functors; diffs[i] : terms[i] -> terms[i-1]
// is one matrix per object (a natural transformation), diffs[0] unused
struct FunctorComplex {
  int lo = 0;
  std::vector<CoeffFunctor> terms;
  std::vector<std::vector<IntMatrix>> diffs;

  int hi() const { return lo + (int)terms.size() - 1; }
  // naturality of every differential plus d.d = 0 pointwise
  bool validate(std::string* why = nullptr) const;
};

FunctorComplex complex_of(CoeffFunctor e);  // concentrated in degree 0

// coend over the base: cokernel of
//   ⊕_{f : c -> c'} E(c)⊗T(c')  →  ⊕_c E(c)⊗T(c),
//   e⊗t ↦ E(f)e⊗t − e⊗T(f)t
FgAbGroup tensor_over_cat(const CoeffFunctor& e, const CoeffFunctor& t);

// Hom(T(-), M) for pointwise-free contravariant T and a finitely generated M,
// as a (two-term, or one-term when M is free) complex of covariant functors;
// actions are precomposition, i.e. I ⊗ T(f)^T on flattened hom-modules
FunctorComplex hom_coeff(const CoeffFunctor& t, const FgAbGroup& m);

}  // namespace cathom
