#pragma once

#include "cathom/fincat.hpp"

namespace cathom {

// exhaustive cartesian-morphism marking and lifting diagnostics for a functor
struct Classification {
  std::vector<char> cartesian, cocartesian;
  bool prefibration = false, precofibration = false;
  bool cartesian_closed = false, cocartesian_closed = false;  // under composition
  bool fibration = false, cofibration = false;
  bool discrete_fibration = false, discrete_opfibration = false;
};

Classification classify(const Functor& p);

// is f1 = f . g for exactly one g, over every competitor with the same image?
bool is_cartesian(const Functor& p, int f);
bool is_cocartesian(const Functor& p, int f);

// full subcategory over one base object, morphisms over its identity
struct FiberCat {
  CatPtr cat;
  Functor include;             // into the total category
  std::vector<int> obj_orig, mor_orig;
  std::vector<int> obj_back;   // total object -> fiber object or -1
};
FiberCat fiber_cat(const Functor& p, int c);

bool is_isomorphism_in(const FinCat& c, int m);
bool fully_faithful(const Functor& f);
bool essentially_surjective(const Functor& f);
bool is_equivalence(const Functor& f);

// inverse Grothendieck construction of a fibration: fibers are categories of
// cartesian functors from slices, transitions act by postcomposition
struct GrResult {
  CatValuedFunctor fv;  // contravariant
  // per base object: the evaluation equivalence Gr(p)(c) -> fiber of p at c,
  // plus the fiber category it lands in
  std::vector<Functor> eval;
  std::vector<FiberCat> fibers;
  // comparison Tot(Gr(p)) -> dom(p); an equivalence over the base
  Functor roundtrip;
  TotalCat total;
};
GrResult gr_of_fibration(const Functor& p);

}  // namespace cathom
