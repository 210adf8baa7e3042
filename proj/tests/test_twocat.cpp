#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cathom/classify.hpp"
#include "cathom/coeff.hpp"
#include "cathom/fincat.hpp"
#include "cathom/simpset.hpp"
#include "cathom/tor.hpp"
#include "cathom/twocat.hpp"
#include "doctest.h"

using namespace cathom;

namespace {

std::vector<std::vector<int>> zmod_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

FinCat chain_poset(int n) {
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i + 1 < n; ++i) le.emplace_back(i, i + 1);
  return poset_cat(n, le);
}

// two objects with two parallel non-identity morphisms a => b
FinCat parallel_pair() {
  FinCat c;
  c.add_object("a");
  c.add_object("b");
  int ia = c.add_morphism(0, 0, "ia");
  int ib = c.add_morphism(1, 1, "ib");
  int f = c.add_morphism(0, 1, "f");
  int g = c.add_morphism(0, 1, "g");
  c.set_identity(0, ia);
  c.set_identity(1, ib);
  c.set_compose(ia, ia, ia);
  c.set_compose(ib, ib, ib);
  c.set_compose(f, ia, f);
  c.set_compose(g, ia, g);
  c.set_compose(ib, f, f);
  c.set_compose(ib, g, g);
  return c;
}

FgAbGroup ab(long free_rank, std::vector<long> orders = {}) {
  std::vector<Int> o(orders.begin(), orders.end());
  return group_from_cyclic(free_rank, std::move(o));
}

std::string show(const std::vector<FgAbGroup>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].render();
  }
  return s + "]";
}

void check_groups(const std::vector<FgAbGroup>& got, const std::vector<FgAbGroup>& want) {
  INFO("got ", show(got), " want ", show(want));
  CHECK(got == want);
}

void require_valid(const Fin2Cat& t) {
  std::string why;
  REQUIRE_MESSAGE(t.validate(&why), why);
}

// one object's slice of a complex of functors
ChainComplex value_complex(const FunctorComplex& fc, int obj) {
  std::vector<long> rk;
  rk.reserve(fc.terms.size());
  for (const CoeffFunctor& t : fc.terms) rk.push_back(t.rank[obj]);
  ChainComplex cc(fc.lo, std::move(rk));
  for (size_t k = 1; k < fc.terms.size(); ++k) cc.set_diff(fc.lo + (int)k, fc.diffs[k][obj]);
  return cc;
}

std::vector<FgAbGroup> homology_through(const ChainComplex& cc, int top) {
  return cc.homology_range(0, top);
}

// the strict one-object two-group with trivial 1-morphism group and
// 2-morphism group Z/2, and its associator-twisted cousin whose nontrivial
// 3-cocycle w(a,b,c) = abc generates H^3(Z/2; Z/2)
Fin2Cat z2_two_group() { return two_group_cat({{0}}, 0, zmod_table(2), 0); }

Fin2Cat anomaly_two_group() {
  return two_group_cat(zmod_table(2), 0, zmod_table(2), 0,
                       [](int a, int b, int c) { return (a == 1 && b == 1 && c == 1) ? 1 : 0; });
}

// one object, hom the arrow poset 0 -> 1, horizontal composition = min.
// Strict and coherent, but the generating 2-morphism is not invertible.
Fin2Cat min_monoidal() {
  Fin2Cat t;
  t.num_objects = 1;
  CatPtr h = wrap_cat(arrow_cat());  // morphisms: id0 = 0, id1 = 1, f = 2
  t.hom = {h};
  t.unit = {1};
  auto mor_between = [&](int s, int g) { return s == g ? s : 2; };
  Fin2Cat::CompTable tab;
  tab.obj.assign(2, std::vector<int>(2));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) tab.obj[x][y] = std::min(x, y);
  tab.mor.assign(3, std::vector<int>(3));
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      tab.mor[u][v] = mor_between(std::min(h->src(u), h->src(v)), std::min(h->tgt(u), h->tgt(v)));
  t.comp = {tab};
  t.assoc.assign(1, std::vector<std::vector<std::vector<int>>>(
                        2, std::vector<std::vector<int>>(2, std::vector<int>(2))));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) t.assoc[0][x][y][z] = h->identity(std::min(x, std::min(y, z)));
  t.lunit = {{0, 1}};
  t.runit = {{0, 1}};
  return t;
}

}  // namespace

TEST_CASE("a category is a strict groupoid-enriched two-category") {
  std::vector<FinCat> cats;
  cats.push_back(point_cat());
  cats.push_back(arrow_cat());
  cats.push_back(chain_poset(3));
  cats.push_back(parallel_pair());
  cats.push_back(monoid_cat(zmod_table(2), 0));
  for (auto& c : cats) {
    CatPtr cp = wrap_cat(std::move(c));
    Fin2Cat t = two_cat_from_cat(cp);
    require_valid(t);
    CHECK(t.num_objects == cp->num_objects());
    CHECK(t.strict());
    CHECK(t.groupoid_enriched());
    int n = t.num_objects;
    std::vector<std::vector<std::vector<int>>> homs(n, std::vector<std::vector<int>>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        homs[a][b] = cp->hom(a, b);
        CHECK(t.homc(a, b)->num_objects() == (int)homs[a][b].size());
      }
    auto posin = [&](int a, int b, int f) {
      const auto& h = homs[a][b];
      return (int)(std::find(h.begin(), h.end(), f) - h.begin());
    };
    // horizontal composition agrees with the category's, in diagram order
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int x = 0; x < (int)homs[a][b].size(); ++x)
            for (int y = 0; y < (int)homs[b][cc].size(); ++y)
              CHECK(t.m_obj(a, b, cc, x, y) ==
                    posin(a, cc, cp->compose(homs[b][cc][y], homs[a][b][x])));
    // units absorb
    for (int a = 0; a < n; ++a) {
      CHECK(t.unit[a] == posin(a, a, cp->identity(a)));
      for (int b = 0; b < n; ++b)
        for (int x = 0; x < (int)homs[a][b].size(); ++x) {
          CHECK(t.m_obj(a, a, b, t.unit[a], x) == x);
          CHECK(t.m_obj(a, b, b, x, t.unit[b]) == x);
        }
    }
  }
}

TEST_CASE("one-object two-groups validate and detect the associator twist") {
  Fin2Cat g = z2_two_group();
  require_valid(g);
  CHECK(g.strict());
  CHECK(g.groupoid_enriched());
  CHECK(g.homc(0, 0)->num_objects() == 1);
  CHECK(g.homc(0, 0)->num_morphisms() == 2);

  Fin2Cat a = anomaly_two_group();
  require_valid(a);
  CHECK_FALSE(a.strict());
  CHECK(a.groupoid_enriched());
  CHECK(a.homc(0, 0)->num_objects() == 2);
  CHECK(a.homc(0, 0)->num_morphisms() == 4);
  // normalized: unit slots leave the associator trivial, unitors identities
  CHECK(a.alpha(0, 0, 0, 0, 1, 0, 1) == a.homc(0, 0)->identity(0));
  CHECK(a.alpha(0, 0, 0, 0, 1, 1, 1) != a.homc(0, 0)->identity(1));
}

TEST_CASE("coherence violations are rejected") {
  // a non-cocycle: w(a,b,c) = 1 iff (a,b,c) = (1,1,0).  Unit slots stay
  // normalized, so only the pentagon can (and must) fail.
  Fin2Cat bad = two_group_cat(zmod_table(2), 0, zmod_table(2), 0,
                              [](int a, int b, int c) { return (a == 1 && b == 1 && c == 0) ? 1 : 0; });
  std::string why;
  CHECK_FALSE(bad.validate(&why));
  CHECK(why.find("pentagon") != std::string::npos);

  // twisting a strict associator component by the -1 automorphism
  Fin2Cat g1 = z2_two_group();
  g1.assoc[0][0][0][0] = 1;
  CHECK_FALSE(g1.validate(&why));

  // unit object out of range
  Fin2Cat g2 = z2_two_group();
  g2.unit[0] = 5;
  CHECK_FALSE(g2.validate(&why));

  // horizontal composition that is no longer a functor
  Fin2Cat g3 = z2_two_group();
  g3.comp[0].mor[1][0] = 0;
  CHECK_FALSE(g3.validate(&why));

  // nerve construction refuses incoherent input outright
  bool threw = false;
  try {
    nerve2(bad, 2);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).rfind("coherence violation", 0) == 0);
  }
  CHECK(threw);
}

TEST_CASE("the nerve of a point is the ordinal base itself") {
  Fin2Cat pt = two_cat_from_cat(wrap_cat(point_cat()));
  NerveFibration n = nerve2(pt, 3);
  CHECK(n.total.cat->num_objects() == 4);
  CHECK(n.total.cat->num_morphisms() == n.base.cat->num_morphisms());
  // marked lifts correspond exactly to the terminal-segment inclusions,
  // one for each pair [a] <= [b] with a, b <= 3
  CHECK(std::count(n.special.begin(), n.special.end(), 1) == 10);
  CHECK(classify(n.total.proj).fibration);
}

namespace {

// the nerve fibration of a 1-category must reproduce the fibered category of
// its simplicial nerve: same base, isomorphic totals over it.  The expected
// side enumerates simplices (degenerate ones included); words are recovered
// from vertex and edge actions.
void check_matches_simplicial_total(FinCat c, int d) {
  CatPtr cp = wrap_cat(std::move(c));
  TruncSimpSet x = nerve(*cp, d);
  TotalCat tot = tot_of_simpset(x);
  Fin2Cat t2 = two_cat_from_cat(cp);
  NerveFibration nf = nerve2(t2, d);
  REQUIRE(tot.cat->num_objects() == nf.total.cat->num_objects());
  REQUIRE(tot.cat->num_morphisms() == nf.total.cat->num_morphisms());
  REQUIRE(nf.base.cat->num_morphisms() == tot.proj.cod->num_morphisms());

  std::vector<int> nonid;  // level-1 cells are the non-identities in index order
  for (int m = 0; m < cp->num_morphisms(); ++m)
    if (!cp->is_identity(m)) nonid.push_back(m);

  int no = tot.cat->num_objects();
  std::vector<int> obj_map(no);
  for (int o = 0; o < no; ++o) {
    auto [lvl, p] = tot.obj_pair[o];
    SimpRef s = x.simplex_at(lvl, p);
    std::vector<int> objs(lvl + 1), comps(lvl);
    for (int j = 0; j <= lvl; ++j) objs[j] = (int)x.act(s, {j}).base;
    for (int j = 1; j <= lvl; ++j) {
      SimpRef e = x.act(s, {j - 1, j});
      int f = e.base_dim == 0 ? cp->identity((int)e.base) : nonid[e.base];
      auto h = cp->hom(objs[j - 1], objs[j]);
      comps[j - 1] = (int)(std::find(h.begin(), h.end(), f) - h.begin());
      REQUIRE(comps[j - 1] < (int)h.size());
    }
    obj_map[o] = nf.find_word(objs, comps);
  }
  std::vector<int> seen = obj_map;
  std::sort(seen.begin(), seen.end());
  REQUIRE(std::unique(seen.begin(), seen.end()) == seen.end());

  // both totals have discrete fibers, so a morphism is pinned down by its
  // base morphism and endpoints
  std::map<std::tuple<int, int, int>, int> at;
  for (int m = 0; m < nf.total.cat->num_morphisms(); ++m) {
    bool fresh = at.emplace(std::make_tuple(nf.total.proj.on_mor(m), nf.total.cat->src(m),
                                            nf.total.cat->tgt(m)),
                            m)
                     .second;
    REQUIRE(fresh);
  }
  std::vector<int> mor_map(tot.cat->num_morphisms());
  for (int m = 0; m < tot.cat->num_morphisms(); ++m) {
    auto it = at.find(std::make_tuple(tot.proj.on_mor(m), obj_map[tot.cat->src(m)],
                                      obj_map[tot.cat->tgt(m)]));
    REQUIRE(it != at.end());
    mor_map[m] = it->second;
  }
  std::vector<int> mseen = mor_map;
  std::sort(mseen.begin(), mseen.end());
  REQUIRE(std::unique(mseen.begin(), mseen.end()) == mseen.end());

  Functor iso{tot.cat, nf.total.cat, obj_map, mor_map};
  std::string why;
  REQUIRE_MESSAGE(iso.validate(&why), why);
  for (int o = 0; o < no; ++o) CHECK(nf.total.proj.on_obj(obj_map[o]) == tot.proj.on_obj(o));
  for (int m = 0; m < tot.cat->num_morphisms(); ++m)
    CHECK(nf.total.proj.on_mor(mor_map[m]) == tot.proj.on_mor(m));
}

}  // namespace

TEST_CASE("nerve fibrations of categories match their simplicial totals") {
  check_matches_simplicial_total(point_cat(), 3);
  check_matches_simplicial_total(arrow_cat(), 3);
  check_matches_simplicial_total(chain_poset(3), 2);
  check_matches_simplicial_total(parallel_pair(), 3);
  check_matches_simplicial_total(monoid_cat(zmod_table(2), 0), 2);
}

TEST_CASE("the nerve of a strict two-group stacks its 2-morphism group") {
  Fin2Cat g = z2_two_group();
  NerveFibration n = nerve2(g, 3);
  CHECK(n.total.cat->num_objects() == 4);  // one word per level
  // lifts of [a] -> [b]: 2^a endomorphisms of the unique level-a word, so
  // sum over a,b <= 3 of binom(a+b+1, a+1) 2^a = 10 + 40 + 140 + 448
  CHECK(n.total.cat->num_morphisms() == 638);
  for (int k = 0; k <= 3; ++k) {
    CHECK(n.fibers.fiber[k]->num_objects() == 1);
    CHECK(n.fibers.fiber[k]->num_morphisms() == 1 << k);
  }
  CHECK(n.fibers.compat.empty());  // strict input composes on the nose
  std::string why;
  CHECK_MESSAGE(n.total.cat->validate(&why, 200000), why);
  Classification cls = classify(n.total.proj);
  CHECK(cls.prefibration);
  CHECK(cls.fibration);
  // every lift over a terminal segment is cartesian: 2^a 2^b... with one
  // word per level the count is sum over a <= b <= 3 of 2^a
  CHECK(std::count(n.special.begin(), n.special.end(), 1) == 26);
  for (int o = 0; o < n.total.cat->num_objects(); ++o)
    CHECK(n.find_word(n.word_objs[o], n.word_comps[o]) == o);
}

TEST_CASE("the nerve of the anomalous two-group needs comparison twists") {
  Fin2Cat a = anomaly_two_group();
  NerveFibration n = nerve2(a, 3);
  CHECK(n.total.cat->num_objects() == 15);  // 1 + 2 + 4 + 8 words
  // lifts of [a] -> [b]: 2^b target words times 2^a automorphisms, so
  // sum over a,b <= 3 of binom(a+b+1, a+1) 2^a 2^b = 49 + 222 + 836 + 2808
  CHECK(n.total.cat->num_morphisms() == 3915);
  for (int k = 0; k <= 3; ++k) {
    CHECK(n.fibers.fiber[k]->num_objects() == 1 << k);
    CHECK(n.fibers.fiber[k]->num_morphisms() == 1 << (2 * k));
  }
  // the associator twist shows up in the transition comparisons
  CHECK_FALSE(n.fibers.compat.empty());
  std::string why;
  CHECK_MESSAGE(n.total.cat->validate(&why, 200000), why);
  CHECK(classify(n.total.proj).fibration);
  // sum over special [a] -> [b] of 2^a 2^b
  CHECK(std::count(n.special.begin(), n.special.end(), 1) == 155);
}

TEST_CASE("special morphisms are the cartesian lifts of terminal segments") {
  Fin2Cat g = z2_two_group();
  NerveFibration n = nerve2(g, 3);
  const CatPtr& t = n.total.cat;
  for (int m = 0; m < t->num_morphisms(); ++m) {
    int bm = n.total.proj.on_mor(m);
    auto [a, b] = n.base.shape[bm];
    const std::vector<int>& img = n.base.images[bm];
    bool terminal = true;
    for (int j = 0; j <= a; ++j) terminal = terminal && img[j] == b - a + j;
    bool expect = terminal && is_cartesian(n.total.proj, m);
    CHECK((bool)n.special[m] == expect);
    if (t->is_identity(m)) CHECK((bool)n.special[m]);
  }
  // closed under composition
  for (int gmor = 0; gmor < t->num_morphisms(); ++gmor)
    for (int f = 0; f < t->num_morphisms(); ++f)
      if (n.special[gmor] && n.special[f] && t->src(gmor) == t->tgt(f))
        CHECK((bool)n.special[t->compose(gmor, f)]);
  // lifts of the initial-vertex inclusion [0] -> [1] are never marked
  int init = n.base.find(0, 1, {0});
  for (int m = 0; m < t->num_morphisms(); ++m)
    if (n.total.proj.on_mor(m) == init) CHECK_FALSE((bool)n.special[m]);
  // in the base, terminal segments pull back along terminal segments
  auto terminal_seg = [&](int from, int to) {
    std::vector<int> img(from + 1);
    for (int j = 0; j <= from; ++j) img[j] = to - from + j;
    return n.base.find(from, to, img);
  };
  for (int m = 0; m <= 3; ++m)
    for (int p = 0; p <= m; ++p)
      for (int q = 0; q <= m; ++q) {
        int r = std::min(p, q);
        int viaP = n.base.cat->compose(terminal_seg(p, m), terminal_seg(r, p));
        int viaQ = n.base.cat->compose(terminal_seg(q, m), terminal_seg(r, q));
        CHECK(viaP == viaQ);
        CHECK(viaP == terminal_seg(r, m));
      }
}

TEST_CASE("representable totals over a category collapse to hom sets") {
  for (auto mk : {+[] { return parallel_pair(); }, +[] { return chain_poset(3); }}) {
    FinCat c = mk();
    CatPtr cp = wrap_cat(std::move(c));
    Fin2Cat t2 = two_cat_from_cat(cp);
    NerveFibration n = nerve2(t2, 2);
    RepFibration rep = representable_total(t2, n, 0);
    Classification cls = classify(rep.total.proj);
    CHECK(cls.cocartesian_closed);
    CHECK(cls.cofibration);
    CHECK(cls.discrete_opfibration);
    FunctorComplex fc = two_representable(t2, n, 0, 2);
    std::string why;
    REQUIRE_MESSAGE(fc.validate(&why), why);
    for (int w = 0; w < n.total.cat->num_objects(); ++w) {
      long fibsz = (long)cp->hom(0, n.word_objs[w].back()).size();
      ChainComplex cc = value_complex(fc, w);
      check_groups(homology_through(cc, 1), {ab(fibsz), ab(0)});
    }
  }
}

TEST_CASE("representable pushforward recovers hom-category homology") {
  // Truncating the nerve bounds the degrees that survive; every assertion
  // below sits inside the window checked against the untruncated oracle.
  SUBCASE("strict two-group, dimension 2, degrees 0..1") {
    Fin2Cat g = z2_two_group();
    NerveFibration n = nerve2(g, 2);
    RepFibration rep = representable_total(g, n, 0);
    CHECK(classify(rep.total.proj).cofibration);
    CHECK_FALSE(rep.fibers.compat.empty());  // unit insertions need bridging
    FunctorComplex fc = two_representable(g, n, 0, 2);
    auto oracle = cat_homology(g.homc(0, 0), constant_coeff(g.homc(0, 0), 1, false), 1);
    check_groups(oracle, {ab(1), ab(0, {2})});
    int w0 = n.find_word({0}, {});
    check_groups(homology_through(value_complex(fc, w0), 1), oracle);
    // deeper words see the same fiber
    int w1 = n.find_word({0, 0}, {0});
    check_groups(homology_through(value_complex(fc, w1), 1), oracle);
  }
  SUBCASE("anomalous two-group, dimension 1, degrees 0..1") {
    Fin2Cat a = anomaly_two_group();
    NerveFibration n = nerve2(a, 1);
    RepFibration rep = representable_total(a, n, 0);
    CHECK(classify(rep.total.proj).cofibration);
    CHECK_FALSE(rep.fibers.compat.empty());
    FunctorComplex fc = two_representable(a, n, 0, 2);
    auto oracle = cat_homology(a.homc(0, 0), constant_coeff(a.homc(0, 0), 1, false), 1);
    check_groups(oracle, {ab(2), ab(0, {2, 2})});
    int w0 = n.find_word({0}, {});
    check_groups(homology_through(value_complex(fc, w0), 1), oracle);
  }
  SUBCASE("anomalous two-group, dimension 2, degree 0") {
    Fin2Cat a = anomaly_two_group();
    NerveFibration n = nerve2(a, 2);
    FunctorComplex fc = two_representable(a, n, 0, 1);
    int w0 = n.find_word({0}, {});
    check_groups(homology_through(value_complex(fc, w0), 0), {ab(2)});
  }
}

TEST_CASE("representable totals require invertible 2-morphisms") {
  Fin2Cat t = min_monoidal();
  require_valid(t);
  CHECK(t.strict());
  CHECK_FALSE(t.groupoid_enriched());
  NerveFibration n = nerve2(t, 1);
  CHECK(n.fibers.compat.empty());
  CHECK_THROWS_WITH_AS(representable_total(t, n, 0),
                       "representable totals need invertible 2-morphisms", std::invalid_argument);
}
