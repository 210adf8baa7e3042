#pragma once

#include "cathom/abgroup.hpp"
#include "cathom/chain.hpp"
#include "cathom/fincat.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cathom {

// ---- ordinal maps ----
// A monotone map [a] -> [b] between the standard ordinals [n] = {0, ..., n}
// is stored as its value table: length a+1, nondecreasing, values in [0, b].

// all monotone surjections [n] ->> [k], tables in lexicographic order;
// there are binomial(n, k) of them
std::vector<std::vector<int>> monotone_surjections(int n, int k);

// theta = mono ∘ epi with epi surjective and mono strictly increasing
void epi_mono_factor(const std::vector<int>& theta, std::vector<int>& epi,
                     std::vector<int>& mono);

// ---- truncated simplicial sets ----

// simplex in normal form: a nondegenerate base pushed along a monotone
// surjection of ordinals (the identity table when the simplex itself is
// nondegenerate); the pair is unique, so == is simplex equality
struct SimpRef {
  int base_dim = 0;
  long base = 0;
  std::vector<int> surj;  // [dim] ->> [base_dim]

  int dim() const { return (int)surj.size() - 1; }
  bool degenerate() const { return dim() != base_dim; }
  bool operator==(const SimpRef&) const = default;
};

// simplicial set truncated at dimension dim.  Nondegenerate simplices are
// stored through level dim+1 (one level of slack so degree-dim homology of
// chains() is correct); degenerate simplices exist only as SimpRefs.  All
// level-n simplices are enumerated (base_dim ascending, base ascending,
// surjection lex) by simplex_at / index_of.
struct TruncSimpSet {
  int dim = 0;
  std::vector<long> counts;  // nondegenerate simplices per level 0..dim+1
  // faces[n][x][i] = ∂_i of nondegenerate simplex x at level n >= 1;
  // faces[0][x] is empty
  std::vector<std::vector<std::vector<SimpRef>>> faces;

  int levels() const { return (int)counts.size() - 1; }
  SimpRef cell(int n, long x) const;

  SimpRef face(const SimpRef& x, int i) const;        // ∂_i
  SimpRef degeneracy(const SimpRef& x, int j) const;  // s_j
  // contravariant action x · theta for monotone theta : [m] -> [dim x]
  SimpRef act(const SimpRef& x, const std::vector<int>& theta) const;

  long simplex_count(int n) const;  // all simplices at level n
  long index_of(const SimpRef& x) const;
  SimpRef simplex_at(int n, long pos) const;

  // structural bounds plus the full simplicial identity suite, checked on
  // every stored simplex
  bool validate(std::string* why = nullptr) const;
};

// nondegenerate n-simplices are the identity-free composable chains of n
// morphisms; vertices are the objects, faces compose or drop, degeneracies
// insert identities
TruncSimpSet nerve(const FinCat& c, int dim);

// chain complex whose homology is certified only through a stated degree
struct TruncChains {
  ChainComplex complex;
  int valid_through = 0;
};

// normalized chains: one generator per nondegenerate simplex, differential the
// alternating face sum with degenerate faces dropped.  The matrices are
// integral in every coefficient mode: localization is exact, so groups are
// localized after homology is taken.
TruncChains chains(const TruncSimpSet& x, const LocalizationSpec& r = {});

// simplex category on the ordinals [0..top] in topological indexing
// ([n] = {0..n}; contrast DeltaCat, which counts elements and includes the
// empty ordinal).  Morphism tables are enumerated (source asc, target asc,
// table lex).
struct SimplexCat {
  CatPtr cat;
  int top = 0;
  std::vector<std::pair<int, int>> shape;  // (a, b) per morphism: [a] -> [b]
  std::vector<std::vector<int>> images;    // value tables, length a+1

  int find(int a, int b, const std::vector<int>& img) const;

 private:
  friend SimplexCat simplex_cat(int top);
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;
};
SimplexCat simplex_cat(int top);

// category of simplices of X (levels 0..dim, degenerate simplices included)
// over simplex_cat(x.dim); the projection is a discrete fibration, and the
// opposite total category computes the homology of chains(x) in the certified
// range.  Fiber objects over level n follow the simplex_at enumeration.
TotalCat tot_of_simpset(const TruncSimpSet& x);

}  // namespace cathom
