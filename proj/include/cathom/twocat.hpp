#pragma once

#include <functional>

#include "cathom/coeff.hpp"
#include "cathom/fincat.hpp"
#include "cathom/simpset.hpp"

namespace cathom {

// Finite 2-category.  Objects are dense indices; the morphisms from a to b
// form a finite category hom(a, b); composition is a functor
// hom(a, b) x hom(b, c) -> hom(a, c) written in diagrammatic order, so words
// read left to right.  Coherence is carried explicitly: associator and
// unitor components are morphisms of the hom categories, and validate()
// checks naturality plus the pentagon and triangle identities exhaustively.
// Instances built by the builders below are strict (all components are
// identities) unless a nontrivial associator is passed in.
struct Fin2Cat {
  struct CompTable {
    std::vector<std::vector<int>> obj;  // [x][y] -> object of hom(a, c)
    std::vector<std::vector<int>> mor;  // [u][v] -> morphism of hom(a, c)
  };

  int num_objects = 0;
  std::vector<CatPtr> hom;          // dense, index a * n + b
  std::vector<int> unit;            // per object: unit object of hom(a, a)
  std::vector<CompTable> comp;      // dense, index (a * n + b) * n + c
  // assoc[((a n + b) n + c) n + d][x][y][z] : m(m(x,y),z) -> m(x,m(y,z))
  std::vector<std::vector<std::vector<std::vector<int>>>> assoc;
  // lunit[a n + b][x] : m(unit_a, x) -> x;  runit[a n + b][x] : m(x, unit_b) -> x
  std::vector<std::vector<int>> lunit, runit;

  const CatPtr& homc(int a, int b) const { return hom[a * num_objects + b]; }
  const CompTable& comp_at(int a, int b, int c) const {
    return comp[(a * num_objects + b) * num_objects + c];
  }
  int m_obj(int a, int b, int c, int x, int y) const { return comp_at(a, b, c).obj[x][y]; }
  int m_mor(int a, int b, int c, int u, int v) const { return comp_at(a, b, c).mor[u][v]; }
  int alpha(int a, int b, int c, int d, int x, int y, int z) const {
    return assoc[((a * num_objects + b) * num_objects + c) * num_objects + d][x][y][z];
  }
  int lam(int a, int b, int x) const { return lunit[a * num_objects + b][x]; }
  int rho(int a, int b, int x) const { return runit[a * num_objects + b][x]; }

  bool strict() const;             // every coherence component is an identity
  bool groupoid_enriched() const;  // every 2-morphism is invertible
  bool validate(std::string* why = nullptr) const;
};

// a 1-category viewed as a 2-category with discrete hom categories
Fin2Cat two_cat_from_cat(const CatPtr& c);

// one-object 2-group: 1-morphisms a finite group pi1 (multiplication table,
// diagrammatic order), 2-morphisms an abelian group pi2 of automorphisms of
// every 1-morphism.  assoc3, when given, supplies the associator component at
// (g, h, k) as an element of pi2; the pentagon identity then says assoc3 is a
// 3-cocycle, and normalization (unit arguments give the pi2 unit) makes the
// unitors identities.
Fin2Cat two_group_cat(const std::vector<std::vector<int>>& pi1, int e1,
                      const std::vector<std::vector<int>>& pi2, int e2,
                      std::function<int(int, int, int)> assoc3 = {});

// nerve of a 2-category, truncated: the category fibered over the ordinals
// [0..d] whose fiber over [k] is the disjoint union over object tuples
// (c_0..c_k) of hom(c_0,c_1) x ... x hom(c_{k-1},c_k), with transitions that
// compose word segments (left to right) and insert units.  For strict input
// the transitions compose on the nose; otherwise the comparison isomorphisms
// are assembled from associator and unitor components.
struct NerveFibration {
  TotalCat total;           // fibered category, proj onto base.cat
  SimplexCat base;          // ordinals [0..dim]
  CatValuedFunctor fibers;  // contravariant pseudofunctor the total was built from
  int dim = 0;
  std::vector<std::vector<int>> word_objs;   // per total object: c_0..c_k
  std::vector<std::vector<int>> word_comps;  // per total object: x_1..x_k
  // per level, per fiber morphism: its component 2-morphisms u_1..u_k
  std::vector<std::vector<std::vector<int>>> fiber_mor_comps;
  std::vector<char> special;                 // per total morphism

  int find_word(const std::vector<int>& objs, const std::vector<int>& comps) const;
};

NerveFibration nerve2(const Fin2Cat& c, int d);

// marked = cartesian over a terminal-segment inclusion of ordinals.  Also
// verifies the marking contains all identities and is closed under
// composition before returning it.
std::vector<char> mark_special(const TotalCat& total, const SimplexCat& base);

// total category of the represented 2-functor hom(c, -) over the nerve: the
// fiber over a word is hom(c, last object), transitions append the tail of
// the target word.  Requires every 2-morphism invertible; the projection is a
// cofibration.
struct RepFibration {
  TotalCat total;           // over n.total.cat
  CatValuedFunctor fibers;  // covariant
};
RepFibration representable_total(const Fin2Cat& c2, const NerveFibration& n, int c);

// derived pushforward along the representable cofibration of the constant
// rank-1 coefficient: a complex of functors on n.total whose pointwise
// homology at a level-0 word (c') is the homology of hom(c, c').
FunctorComplex two_representable(const Fin2Cat& c2, const NerveFibration& n, int c, int max_deg);

}  // namespace cathom
