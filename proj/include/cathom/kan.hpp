#pragma once

#include "cathom/classify.hpp"
#include "cathom/coeff.hpp"
#include "cathom/tor.hpp"

namespace cathom {

// Left Kan extension of E along p, derived, as a complex of functors on
// cod(p).  The value at c' is the two-sided bar complex of the comma category
// (p / c') with E pulled back and constant contravariant Z, so its homology
// below max_deg is L_i p_! E(c'); transitions act by post-composition.  When
// p is a discrete cofibration the result is instead concentrated in degree 0
// with value ⊕_{x over c'} E(x) and transitions along the unique lifts.
FunctorComplex lkan(const Functor& p, const CoeffFunctor& e, int max_deg);

// Relative tensor product of E and T over the base of the cofibration p, as
// a complex on cod(p) built from the same comma categories.  The value at c
// is quasi-isomorphic to the bar complex of the fiber restrictions; with T
// constant Z this reduces to lkan.  Throws when p is not a cofibration or
// when some action matrix of T fails to invert a cocartesian morphism.
FunctorComplex relative_tensor(const Functor& p, const CoeffFunctor& e, const CoeffFunctor& t,
                               int max_deg);

// fiberwise route used to cross-check the comma construction on cofibrations:
// Tor (resp. homology) of the restrictions of the coefficients to the fiber
// of p over c
std::vector<FgAbGroup> fiber_tor(const Functor& p, const CoeffFunctor& e, const CoeffFunctor& t,
                                 int c, int max_deg);
std::vector<FgAbGroup> fiber_homology(const Functor& p, const CoeffFunctor& e, int c,
                                      int max_deg);

}  // namespace cathom
