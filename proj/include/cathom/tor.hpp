#pragma once

#include "cathom/chain.hpp"
#include "cathom/coeff.hpp"

namespace cathom {

// Normalized two-sided bar complex of (E covariant, T contravariant) over
// their common base, in degrees 0..max_deg.  The degree-n term is a direct
// sum over composable chains of n non-identity morphisms c_0 -> ... -> c_n of
// E(c_0)(x)T(c_n); chains are ordered lexicographically by morphism index so
// the matrices are reproducible.  H_n is Tor_n for n < max_deg; the top
// degree only exists to make H_{max_deg-1} correct.
ChainComplex bar_complex(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg,
                         bool parallel = true);

// totalization of the bar double complex of a bounded complex of covariant
// functors; covers degrees e.lo .. e.lo + max_deg
ChainComplex bar_complex(const FunctorComplex& e, const CoeffFunctor& t, int max_deg,
                         bool parallel = true);

// Tor_0 .. Tor_max_deg via the bar resolution (entry k is degree e.lo + k for
// the complex overload)
std::vector<FgAbGroup> tor_bar(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg);
std::vector<FgAbGroup> tor_bar(const FunctorComplex& e, const CoeffFunctor& t, int max_deg);

// Tor via an explicit resolution of E by finite sums of representables; the
// degree-i module of the resulting complex is a sum of T-values (co-Yoneda),
// so this route scales past the point where bar chain counts explode.  The
// complex overload accepts at most two terms (a presentation); anything
// longer goes through tor_bar.
std::vector<FgAbGroup> tor_resolution(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg);
std::vector<FgAbGroup> tor_resolution(const FunctorComplex& e, const CoeffFunctor& t, int max_deg);

// H_i(C, E) = Tor_i(E, constant contravariant Z)
std::vector<FgAbGroup> cat_homology(const CatPtr& c, const CoeffFunctor& e, int max_deg);

}  // namespace cathom
