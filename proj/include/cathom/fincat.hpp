#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace cathom {

// Finite category.  Objects and morphisms are dense indices; names are
// metadata.  Composition lives in a dense mor x mor table when small enough,
// in a hash map of composable pairs otherwise, or behind a callback for
// categories too large to tabulate (see set_lazy_compose).
class FinCat {
 public:
  // dense table cap; the full table costs 4*n^2 bytes
  static constexpr int kDenseMor = 4096;

  int add_object(std::string name = "");
  int add_morphism(int s, int t, std::string name = "");
  void set_identity(int o, int m);
  void set_compose(int g, int f, int gf);
  void set_lazy_compose(std::function<int(int, int)> fn);
  void seal();  // choose table storage; idempotent, called by validate

  int num_objects() const { return (int)ids.size(); }
  int num_morphisms() const { return (int)msrc.size(); }
  int src(int m) const { return msrc[m]; }
  int tgt(int m) const { return mtgt[m]; }
  int identity(int o) const { return ids[o]; }
  bool is_identity(int m) const { return msrc[m] == mtgt[m] && ids[msrc[m]] == m; }
  bool lazy() const { return lazy_mode; }

  // g after f; requires tgt(f) == src(g)
  int compose(int g, int f) const;

  std::vector<int> hom(int a, int b) const;
  const std::vector<int>& out_of(int a) const { return outm[a]; }
  const std::vector<int>& in_of(int b) const { return inm[b]; }

  const std::string& object_name(int o) const { return onames[o]; }
  const std::string& morphism_name(int m) const { return mnames[m]; }

  // identities, unit laws, closure, associativity.  assoc_samples < 0 checks
  // every composable pair and triple; otherwise that many seeded random ones.
  bool validate(std::string* why = nullptr, long assoc_samples = -1) const;

 private:
  std::vector<int> ids;
  std::vector<int> msrc, mtgt;
  std::vector<std::vector<int>> outm, inm;
  std::vector<std::string> onames, mnames;
  std::vector<int> table;  // dense, index g * nmor + f, -1 = undefined
  std::unordered_map<uint64_t, int> comp;
  std::function<int(int, int)> lazy_fn;
  bool lazy_mode = false;
  bool sealed = false;

  static uint64_t key(int g, int f) { return (uint64_t(uint32_t(g)) << 32) | uint32_t(f); }
};

using CatPtr = std::shared_ptr<const FinCat>;

inline CatPtr wrap_cat(FinCat c) {
  auto p = std::make_shared<FinCat>(std::move(c));
  p->seal();
  return p;
}

struct Functor {
  CatPtr dom, cod;
  std::vector<int> obj_map, mor_map;

  int on_obj(int o) const { return obj_map[o]; }
  int on_mor(int m) const { return mor_map[m]; }
  bool validate(std::string* why = nullptr) const;
};

Functor identity_functor(const CatPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);  // g after f

// natural transformation data: one component morphism per dom object
bool is_natural(const Functor& f, const Functor& g, const std::vector<int>& comp);

// ---- builders ----

FinCat point_cat();
FinCat arrow_cat();                 // 0 --> 1
FinCat indiscrete_cat(int n);       // exactly one morphism between any two objects
// one object; compose(g, f) = mult[g][f]; unit must satisfy the monoid laws
FinCat monoid_cat(const std::vector<std::vector<int>>& mult, int unit);
// objects 0..n-1; morphisms = pairs of the reflexive-transitive closure of le
FinCat poset_cat(int n, const std::vector<std::pair<int, int>>& le);
FinCat opposite(const FinCat& c);
FinCat product_cat(const FinCat& a, const FinCat& b);

// category of finite ordinals [0..max_n]; [n] has n elements, so [0] is the
// empty ordinal and [1] is terminal
struct DeltaCat {
  FinCat cat;
  int max_n = 0;
  std::vector<std::pair<int, int>> shape;   // (a, b) per morphism
  std::vector<std::vector<int>> images;     // nondecreasing, length a, values < b

  int find(int a, int b, const std::vector<int>& img) const;

 private:
  friend DeltaCat make_delta(int max_n);
  std::map<std::pair<int, std::vector<int>>, int> index;
};
DeltaCat make_delta(int max_n);

struct SliceCat {
  CatPtr cat;
  Functor forget;
  std::vector<int> obj_mor;   // per slice object: the structure morphism in the base
  std::vector<int> mor_base;  // per slice morphism: underlying base morphism
  int find_obj(int base_mor) const;
};
SliceCat slice_cat(const CatPtr& c, int obj);    // C / obj
SliceCat coslice_cat(const CatPtr& c, int obj);  // obj \ C

// category-valued functor on a finite base.  compat[(g, f)] supplies the
// comparison isomorphisms of a pseudofunctor, one fiber morphism per object
// of the relevant fiber; absent entries mean the identity (strict case).
// Covariant: gamma_x : F(g)(F(f)(x)) -> F(gf)(x), x over src(f).
// Contravariant: gamma_x : F(f)(F(g)(x)) -> F(gf)(x), x over tgt(g).
struct CatValuedFunctor {
  CatPtr base;
  bool contravariant = false;
  std::vector<CatPtr> fiber;
  std::vector<std::vector<int>> act_obj, act_mor;
  std::map<std::pair<int, int>, std::vector<int>> compat;

  bool validate(std::string* why = nullptr) const;
};

struct TotalCat {
  CatPtr cat;
  Functor proj;  // onto the base
  std::vector<std::pair<int, int>> obj_pair;       // (base object, fiber object)
  std::vector<std::tuple<int, int, int>> mor_data; // (base morphism, source total object, fiber morphism)
  int find_obj(int c, int s) const;
};
TotalCat grothendieck_total(const CatValuedFunctor& f);

}  // namespace cathom
