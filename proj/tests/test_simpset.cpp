#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cathom/classify.hpp"
#include "cathom/coeff.hpp"
#include "cathom/doldkan.hpp"
#include "cathom/simpset.hpp"
#include "cathom/snf.hpp"
#include "cathom/tor.hpp"
#include "doctest.h"

using namespace cathom;

namespace {

FgAbGroup ab(long r, std::vector<Int> t = {}) { return {r, std::move(t)}; }

void check_groups(const std::vector<FgAbGroup>& got,
                  const std::vector<FgAbGroup>& want) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    INFO("degree ", i, ": ", got[i].render(), " vs ", want[i].render());
    CHECK(got[i] == want[i]);
  }
}

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

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// triangle boundary, stored with the given amount of degenerate headroom
TruncSimpSet circle(int dim = 1) {
  TruncSimpSet x;
  x.dim = dim;
  x.counts.assign(dim + 2, 0);
  x.counts[0] = 3;
  x.counts[1] = 3;
  x.faces.resize(dim + 2);
  x.faces[0].resize(3);
  auto v = [](long i) { return SimpRef{0, i, {0}}; };
  x.faces[1] = {{v(1), v(0)}, {v(2), v(1)}, {v(0), v(2)}};
  return x;
}

TruncSimpSet two_points() {
  TruncSimpSet x;
  x.dim = 0;
  x.counts = {2, 0};
  x.faces.resize(2);
  x.faces[0].resize(2);
  return x;
}

const IntMatrix& diff_or_zero(const ChainComplex& c, int n, IntMatrix& scratch) {
  if (const IntMatrix* d = c.diff(n)) return *d;
  scratch = IntMatrix((int)c.rank_at(n - 1), (int)c.rank_at(n));
  return scratch;
}

// homology of a finite category in degrees 0..dmax, through its nerve
std::vector<FgAbGroup> nerve_homology(const FinCat& c, int dmax) {
  TruncSimpSet x = nerve(c, dmax);
  return chains(x, LocalizationSpec::integers()).complex.homology_range(0, dmax);
}

std::vector<int> compose_tables(const std::vector<int>& outer,
                                const std::vector<int>& inner) {
  std::vector<int> r(inner.size());
  for (size_t j = 0; j < inner.size(); ++j) r[j] = outer[inner[j]];
  return r;
}

std::vector<int> random_monotone(std::mt19937& rng, int len, int hi) {
  std::vector<int> t(len);
  int v = 0;
  for (int j = 0; j < len; ++j) {
    v = std::min(hi, v + (int)(rng() % 3));
    t[j] = v;
  }
  return t;
}

// extraction of the nondegenerate coordinates of level n, which sit last
IntMatrix nondeg_rows(const TruncSimpSet& x, int n) {
  long total = x.simplex_count(n), lead = total - x.counts[n];
  IntMatrix q((int)x.counts[n], (int)total);
  for (long t = 0; t < x.counts[n]; ++t) q.set((int)t, (int)(lead + t), 1);
  return q;
}

// one-column complex Z --m--> Z in degrees k+1, k
ChainComplex cone(long m, int k = 0) {
  ChainComplex e(k, {1, 1});
  e.set_diff(k + 1, IntMatrix::from_rows({{m}}));
  return e;
}

ChainComplex sphere(int k) { return ChainComplex(k, {1}); }

void check_simplicial_map(const SimpModule& a, const SimpModule& b,
                          const std::vector<IntMatrix>& u) {
  REQUIRE(a.levels() == b.levels());
  REQUIRE((int)u.size() == a.levels() + 1);
  for (int n = 1; n <= a.levels(); ++n)
    for (int i = 0; i <= n; ++i) {
      INFO("face ", i, " at level ", n);
      CHECK(u[n - 1].mul(a.face[n][i]) == b.face[n][i].mul(u[n]));
    }
  for (int n = 0; n < a.levels(); ++n)
    for (int j = 0; j <= n; ++j) {
      INFO("degeneracy ", j, " at level ", n);
      CHECK(u[n + 1].mul(a.degen[n][j]) == b.degen[n][j].mul(u[n]));
    }
}

}  // namespace

TEST_CASE("monotone surjection tables") {
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      auto s = monotone_surjections(n, k);
      CHECK((long)s.size() == binom(n, k));
      for (auto& t : s) {
        CHECK(t.front() == 0);
        CHECK(t.back() == k);
        CHECK(std::is_sorted(t.begin(), t.end()));
      }
      CHECK(std::is_sorted(s.begin(), s.end()));
    }
  CHECK(monotone_surjections(2, 1) ==
        std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}});
  CHECK(monotone_surjections(3, 0) == std::vector<std::vector<int>>{{0, 0, 0, 0}});

  std::mt19937 rng(4457);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_monotone(rng, 1 + (int)(rng() % 6), (int)(rng() % 5));
    std::vector<int> epi, mono;
    epi_mono_factor(t, epi, mono);
    CHECK(compose_tables(mono, epi) == t);
    CHECK(epi.front() == 0);
    CHECK(epi.back() == (int)mono.size() - 1);
    for (size_t j = 1; j < mono.size(); ++j) CHECK(mono[j] > mono[j - 1]);
  }
  std::vector<int> epi, mono;
  CHECK_THROWS_AS(epi_mono_factor({0, 2, 1}, epi, mono), std::invalid_argument);
}

TEST_CASE("simplex bookkeeping round trips") {
  std::mt19937 rng(8231);
  for (const TruncSimpSet& x :
       {nerve(chain_poset(3), 2), nerve(monoid_cat(zmod_table(2), 0), 2), circle(2)}) {
    for (int n = 0; n <= x.levels(); ++n) {
      for (long p = 0; p < x.simplex_count(n); ++p) {
        SimpRef s = x.simplex_at(n, p);
        CHECK(x.index_of(s) == p);
        CHECK(s.dim() == n);
      }
    }
    // contravariant action is functorial: acting by theta then psi is
    // acting by the composite
    for (int trial = 0; trial < 40; ++trial) {
      int n = (int)(rng() % (x.levels() + 1));
      long p = (long)(rng() % (unsigned long)x.simplex_count(n));
      SimpRef s = x.simplex_at(n, p);
      auto theta = random_monotone(rng, 1 + (int)(rng() % 4), n);
      auto psi = random_monotone(rng, 1 + (int)(rng() % 4), (int)theta.size() - 1);
      CHECK(x.act(x.act(s, theta), psi) == x.act(s, compose_tables(theta, psi)));
    }
    // a degeneracy is split by the face at the same spot
    for (int n = 0; n < x.levels(); ++n)
      for (long p = 0; p < x.simplex_count(n); ++p) {
        SimpRef s = x.simplex_at(n, p);
        for (int j = 0; j <= n; ++j) {
          CHECK(x.face(x.degeneracy(s, j), j) == s);
          CHECK(x.face(x.degeneracy(s, j), j + 1) == s);
        }
      }
  }
}

TEST_CASE("nerve simplex counts") {
  TruncSimpSet pt = nerve(point_cat(), 3);
  CHECK(pt.counts == std::vector<long>{1, 0, 0, 0, 0});
  for (int n = 0; n <= 4; ++n) CHECK(pt.simplex_count(n) == 1);

  CHECK(nerve(arrow_cat(), 1).counts == std::vector<long>{2, 1, 0});
  CHECK(nerve(monoid_cat(zmod_table(2), 0), 3).counts ==
        std::vector<long>{1, 1, 1, 1, 1});
  // the 3-chain poset is a 2-simplex: binomial counts
  CHECK(nerve(chain_poset(3), 2).counts == std::vector<long>{3, 3, 1, 0});
  CHECK(nerve(parallel_pair(), 2).counts == std::vector<long>{2, 2, 0, 0});
}

TEST_CASE("nerves satisfy the identity suite") {
  std::string why;
  for (const FinCat& c :
       {point_cat(), arrow_cat(), chain_poset(3), parallel_pair(),
        monoid_cat(zmod_table(2), 0), monoid_cat(zmod_table(3), 0),
        poset_cat(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
        product_cat(arrow_cat(), arrow_cat()), indiscrete_cat(3)}) {
    for (int d = 0; d <= 2; ++d) {
      TruncSimpSet x = nerve(c, d);
      INFO(why);
      CHECK(x.validate(&why));
    }
  }
  CHECK(circle(1).validate(&why));
  CHECK(circle(2).validate(&why));
  CHECK(two_points().validate(&why));
}

TEST_CASE("corrupted simplex tables are rejected") {
  TruncSimpSet x = nerve(chain_poset(3), 2);
  REQUIRE(x.validate());
  TruncSimpSet bad = x;
  bad.faces[2][0][0] = bad.faces[2][0][2];  // break a face identity
  CHECK(!bad.validate());

  bad = x;
  bad.faces[1][0].pop_back();  // wrong arity
  CHECK(!bad.validate());

  bad = x;
  bad.faces[1][0][0].base = 99;  // dangling reference
  CHECK(!bad.validate());

  bad = x;
  bad.counts.pop_back();  // headroom level missing
  bad.faces.pop_back();
  CHECK(!bad.validate());
}

TEST_CASE("chains of a point and of a segment") {
  TruncChains pc = chains(nerve(point_cat(), 2), LocalizationSpec::integers());
  CHECK(pc.valid_through == 2);
  REQUIRE(pc.complex.validate());
  check_groups(pc.complex.homology_range(0, 2), {ab(1), ab(0), ab(0)});

  TruncChains ac = chains(nerve(arrow_cat(), 1), LocalizationSpec::integers());
  REQUIRE(ac.complex.validate());
  REQUIRE(ac.complex.diff(1) != nullptr);
  CHECK(*ac.complex.diff(1) == IntMatrix::from_rows({{-1}, {1}}));
  check_groups(ac.complex.homology_range(0, 1), {ab(1), ab(0)});
}

TEST_CASE("chains of a circle") {
  TruncChains cc = chains(circle(1), LocalizationSpec::integers());
  REQUIRE(cc.complex.validate());
  CHECK(*cc.complex.diff(1) ==
        IntMatrix::from_rows({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}}));
  check_groups(cc.complex.homology_range(0, 1), {ab(1), ab(1)});

  // two parallel arrows subdivide the same circle
  check_groups(nerve_homology(parallel_pair(), 1), {ab(1), ab(1)});
}

TEST_CASE("chains of group nerves match the algebraic oracle") {
  check_groups(nerve_homology(monoid_cat(zmod_table(2), 0), 3),
               {ab(1), ab(0, {2}), ab(0), ab(0, {2})});
  check_groups(nerve_homology(monoid_cat(zmod_table(3), 0), 3),
               {ab(1), ab(0, {3}), ab(0), ab(0, {3})});
}

TEST_CASE("coefficient modes share the integral matrices") {
  TruncSimpSet x = nerve(monoid_cat(zmod_table(2), 0), 2);
  TruncChains over_z = chains(x, LocalizationSpec::integers());
  TruncChains at2 = chains(x, LocalizationSpec::local_at(2));
  TruncChains rat = chains(x, LocalizationSpec::rationals());
  for (int n = 1; n <= 3; ++n) {
    IntMatrix s(0, 0);
    CHECK(diff_or_zero(over_z.complex, n, s) == diff_or_zero(at2.complex, n, s));
    CHECK(diff_or_zero(over_z.complex, n, s) == diff_or_zero(rat.complex, n, s));
  }
  // the ring acts on the answer, not on the matrices
  FgAbGroup h1 = over_z.complex.homology(1);
  CHECK(localize(h1, LocalizationSpec::local_at(2)) == ab(0, {2}));
  CHECK(localize(h1, LocalizationSpec::local_at(3)) == ab(0));
  CHECK(localize(h1, LocalizationSpec::rationals()) == ab(0));
}

TEST_CASE("nerve homology agrees with category homology") {
  std::mt19937 rng(900913);
  std::vector<CatPtr> pool;
  for (int t = 0; t < 8; ++t) {
    int n = 2 + (int)(rng() % 3);
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() & 1) le.emplace_back(i, j);
    FinCat p = poset_cat(n, le);
    pool.push_back(t % 2 ? wrap_cat(opposite(p)) : wrap_cat(std::move(p)));
  }
  for (int m : {2, 3, 4}) pool.push_back(wrap_cat(monoid_cat(zmod_table(m), 0)));
  pool.push_back(wrap_cat(product_cat(arrow_cat(), arrow_cat())));
  pool.push_back(wrap_cat(product_cat(arrow_cat(), point_cat())));
  pool.push_back(wrap_cat(parallel_pair()));
  pool.push_back(wrap_cat(opposite(parallel_pair())));
  pool.push_back(wrap_cat(indiscrete_cat(3)));
  pool.push_back(wrap_cat(poset_cat(4, {})));
  pool.push_back(wrap_cat(poset_cat(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));
  pool.push_back(coslice_cat(wrap_cat(chain_poset(3)), 0).cat);
  pool.push_back(wrap_cat(chain_poset(4)));
  REQUIRE(pool.size() == 20);

  for (const CatPtr& c : pool) {
    INFO("category with ", c->num_objects(), " objects and ", c->num_morphisms(),
         " morphisms");
    std::vector<FgAbGroup> via_nerve = nerve_homology(*c, 3);
    std::vector<FgAbGroup> via_cat = cat_homology(c, constant_coeff(c, 1, false), 3);
    check_groups(via_nerve, via_cat);
  }
}

TEST_CASE("total category of a point nerve is the ordinal category") {
  for (int d : {1, 2}) {
    TotalCat t = tot_of_simpset(nerve(point_cat(), d));
    SimplexCat sc = simplex_cat(d);
    CHECK(t.cat->num_objects() == sc.cat->num_objects());
    CHECK(t.cat->num_morphisms() == sc.cat->num_morphisms());
    CHECK(is_equivalence(t.proj));
    CHECK(classify(t.proj).discrete_fibration);
  }
}

TEST_CASE("total category separates disjoint points") {
  TotalCat t = tot_of_simpset(two_points());
  CHECK(t.cat->num_objects() == 2);
  CHECK(t.cat->num_morphisms() == 2);
  CHECK(classify(t.proj).discrete_fibration);
  check_groups(nerve_homology(opposite(*t.cat), 1), {ab(2), ab(0)});
  check_groups(chains(two_points(), {}).complex.homology_range(0, 0), {ab(2)});
}

TEST_CASE("total category of a segment collapses either way") {
  TotalCat t = tot_of_simpset(nerve(arrow_cat(), 1));
  CHECK(classify(t.proj).discrete_fibration);
  check_groups(nerve_homology(opposite(*t.cat), 1), {ab(1), ab(0)});
  check_groups(nerve_homology(*t.cat, 1), {ab(1), ab(0)});
}

TEST_CASE("truncated total categories compute chain homology below the bound") {
  // the comparison is certified strictly below the stored dimension
  TotalCat tz = tot_of_simpset(nerve(monoid_cat(zmod_table(2), 0), 2));
  CHECK(classify(tz.proj).discrete_fibration);
  check_groups(nerve_homology(opposite(*tz.cat), 1), {ab(1), ab(0, {2})});

  TotalCat tc = tot_of_simpset(circle(2));
  CHECK(classify(tc.proj).discrete_fibration);
  check_groups(nerve_homology(opposite(*tc.cat), 1), {ab(1), ab(1)});
}

TEST_CASE("ordinal category composition tables") {
  SimplexCat sc = simplex_cat(2);
  CHECK(sc.cat->num_objects() == 3);
  CHECK(sc.cat->num_morphisms() == 31);
  std::string why;
  INFO(why);
  CHECK(sc.cat->validate(&why));
  for (int m = 0; m < sc.cat->num_morphisms(); ++m)
    CHECK(sc.find(sc.shape[m].first, sc.shape[m].second, sc.images[m]) == m);
  // degeneracy then face: sigma^0 o delta^0 is the identity of [0]
  int d0 = sc.find(0, 1, {1});
  int s0 = sc.find(1, 0, {0, 0});
  CHECK(sc.cat->compose(s0, d0) == sc.cat->identity(0));
  CHECK_THROWS_AS(sc.find(0, 1, {2}), std::invalid_argument);
}

TEST_CASE("denormalization of a one-point complex is constant") {
  SimpModule m = dold_kan_D(sphere(0), 2);
  CHECK(m.ranks == std::vector<long>{1, 1, 1, 1});
  std::string why;
  INFO(why);
  REQUIRE(m.validate(&why));
  for (int n = 1; n <= m.levels(); ++n)
    for (int i = 0; i <= n; ++i) CHECK(m.face[n][i] == IntMatrix::identity(1));
  for (int n = 0; n < m.levels(); ++n)
    for (int j = 0; j <= n; ++j) CHECK(m.degen[n][j] == IntMatrix::identity(1));
}

TEST_CASE("denormalization ranks follow binomials") {
  SimpModule m = dold_kan_D(sphere(1), 3);
  CHECK(m.ranks == std::vector<long>{0, 1, 2, 3, 4});
  std::string why;
  INFO(why);
  REQUIRE(m.validate(&why));

  // one summand per surjection onto degree 0 or 1: ranks 1 + n
  SimpModule c = dold_kan_D(cone(2), 2);
  CHECK(c.ranks == std::vector<long>{1, 2, 3, 4});
  INFO(why);
  REQUIRE(c.validate(&why));
  CHECK_THROWS_AS(dold_kan_D(ChainComplex(-1, {1, 1}), 2), std::invalid_argument);
}

TEST_CASE("normalization inverts denormalization on the nose") {
  std::mt19937 rng(626);
  auto rand_unimodular = [&rng](int n) {
    IntMatrix u = IntMatrix::identity(n);
    for (int step = 0; step < 2 * n; ++step) {
      int i = (int)(rng() % std::max(n, 1)), j = (int)(rng() % std::max(n, 1));
      long c = (long)(rng() % 3) - 1;
      if (i == j || c == 0) continue;
      for (int k = 0; k < n; ++k) u.add_at(i, k, Int(c) * u.at(j, k));
    }
    return u;
  };
  for (int trial = 0; trial < 10; ++trial) {
    // a direct sum of spheres and cones, twisted by unimodular changes of basis
    int top = 1 + (int)(rng() % 3);
    std::vector<ChainComplex> pieces = {sphere((int)(rng() % (top + 1)))};
    for (int p = 0; p < 2; ++p) {
      int k = (int)(rng() % (top + 1));
      if (rng() & 1)
        pieces.push_back(sphere(k));
      else if (k < top)
        pieces.push_back(cone(1 + (long)(rng() % 4), k));
    }
    ChainComplex e(0, std::vector<long>(top + 2, 0));
    for (int n = 0; n <= top + 1; ++n)
      for (auto& p : pieces) e.ranks[n] += p.rank_at(n);
    std::vector<IntMatrix> bases;
    for (int n = 0; n <= top + 1; ++n) bases.push_back(rand_unimodular((int)e.ranks[n]));
    for (int n = 1; n <= top + 1; ++n) {
      std::vector<IntMatrix> blocks;
      IntMatrix s(0, 0);
      for (auto& p : pieces) blocks.push_back(diff_or_zero(p, n, s));
      auto inv = solve(bases[n], IntMatrix::identity((int)e.ranks[n]));
      REQUIRE(inv.has_value());
      e.set_diff(n, bases[n - 1].mul(block_diag(blocks)).mul(*inv));
    }
    REQUIRE(e.validate());

    SimpModule m = dold_kan_D(e, top);
    std::string why;
    INFO(why);
    REQUIRE(m.validate(&why));

    TruncChains back = dold_kan_N(m);
    CHECK(back.valid_through == top);
    for (int n = 0; n <= top + 1; ++n) {
      CHECK(back.complex.rank_at(n) == e.rank_at(n));
      IntMatrix s(0, 0);
      if (n >= 1)
        CHECK(diff_or_zero(back.complex, n, s) == diff_or_zero(e, n, s));
    }
    // and the produced denormalization isomorphism is the identity
    for (const IntMatrix& phi : dold_kan_iso(m))
      CHECK(phi == IntMatrix::identity(phi.rows()));
  }
}

TEST_CASE("normalized chains of a linearized complex match its chains") {
  for (const TruncSimpSet& x :
       {nerve(monoid_cat(zmod_table(2), 0), 2), circle(1), nerve(chain_poset(3), 2)}) {
    SimpModule m = linearize(x);
    std::string why;
    INFO(why);
    REQUIRE(m.validate(&why));
    TruncChains nm = dold_kan_N(m);
    TruncChains cx = chains(x, LocalizationSpec::integers());
    for (int n = 0; n <= x.levels(); ++n) {
      CHECK(nm.complex.rank_at(n) == cx.complex.rank_at(n));
      if (n >= 1) {
        IntMatrix tn = nondeg_rows(x, n).mul(normalized_basis(m, n));
        IntMatrix tp = nondeg_rows(x, n - 1).mul(normalized_basis(m, n - 1));
        IntMatrix s(0, 0);
        CHECK(tp.mul(diff_or_zero(nm.complex, n, s)) ==
              diff_or_zero(cx.complex, n, s).mul(tn));
      }
    }
    check_groups(nm.complex.homology_range(0, x.dim),
                 cx.complex.homology_range(0, x.dim));
  }
}

TEST_CASE("denormalizing normalized chains recovers the module") {
  for (const TruncSimpSet& x : {circle(1), nerve(monoid_cat(zmod_table(2), 0), 2)}) {
    SimpModule m = linearize(x);
    std::vector<IntMatrix> phi = dold_kan_iso(m);
    SimpModule dn = dold_kan_D(dold_kan_N(m).complex, m.dim);
    std::string why;
    INFO(why);
    REQUIRE(dn.validate(&why));
    for (const IntMatrix& p : phi) CHECK(is_unimodular(p));
    check_simplicial_map(dn, m, phi);
  }
}

TEST_CASE("module identity checker catches corruption") {
  SimpModule m = dold_kan_D(sphere(1), 2);
  REQUIRE(m.validate());
  SimpModule bad = m;
  bad.degen[1][0].set(0, 0, 7);
  CHECK(!bad.validate());
  bad = m;
  bad.face[2].pop_back();
  CHECK(!bad.validate());
  bad = m;
  bad.ranks[1] = 5;
  CHECK(!bad.validate());
}

TEST_CASE("assembly projects onto the identity summand") {
  // the augmentation: one summand survives at level 0, none above
  std::vector<IntMatrix> p0 = assembly(sphere(0), 1);
  REQUIRE(p0.size() == 3);
  CHECK(p0[0] == IntMatrix::identity(1));
  CHECK(p0[1].rows() == 0);
  CHECK(p0[1].cols() == 1);
  CHECK(p0[2].cols() == 1);

  for (const ChainComplex& e : {cone(2), cone(3, 1), sphere(1)}) {
    int top = e.hi();
    SimpModule m = dold_kan_D(e, top);
    std::vector<IntMatrix> p = assembly(e, top);
    REQUIRE((int)p.size() == m.levels() + 1);
    IntMatrix s(0, 0);
    for (int n = 1; n <= m.levels(); ++n) {
      IntMatrix alt((int)m.ranks[n - 1], (int)m.ranks[n]);
      for (int i = 0; i <= n; ++i)
        alt = (i % 2) ? alt.sub(m.face[n][i]) : alt.add(m.face[n][i]);
      CHECK(p[n - 1].mul(alt) == diff_or_zero(e, n, s).mul(p[n]));
    }
  }
  CHECK_THROWS_AS(assembly(ChainComplex(-2, {1}), 1), std::invalid_argument);
}

TEST_CASE("chain maps factor through the adjoint simplicial map") {
  struct Fixture {
    TruncSimpSet x;
    ChainComplex e;
    std::vector<std::vector<std::vector<long long>>> f_rows;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({nerve(arrow_cat(), 1), cone(2), {{{0, 2}}, {{1}}, {}}});
  fixtures.push_back({circle(1), cone(2), {{{0, 2, 4}}, {{1, 1, -2}}, {}}});
  fixtures.push_back(
      {nerve(monoid_cat(zmod_table(2), 0), 2), sphere(0), {{{1}}, {}, {}, {}}});

  for (const Fixture& fx : fixtures) {
    std::vector<IntMatrix> f;
    for (int n = 0; n <= fx.x.dim + 1; ++n) {
      if ((int)fx.f_rows[n].size() == 0)
        f.push_back(IntMatrix((int)fx.e.rank_at(n), (int)fx.x.counts[n]));
      else
        f.push_back(IntMatrix::from_rows(fx.f_rows[n]));
    }
    std::vector<IntMatrix> u = adjunct_map(fx.x, fx.e, f);
    SimpModule rx = linearize(fx.x);
    SimpModule de = dold_kan_D(fx.e, fx.x.dim);
    check_simplicial_map(rx, de, u);
    std::vector<IntMatrix> p = assembly(fx.e, fx.x.dim);
    for (int n = 0; n <= fx.x.dim + 1; ++n) {
      INFO("level ", n);
      CHECK(p[n].mul(u[n]) == f[n].mul(nondeg_rows(fx.x, n)));
    }
  }

  // a non-chain-map is rejected up front
  TruncSimpSet x = nerve(arrow_cat(), 1);
  std::vector<IntMatrix> notf = {IntMatrix::from_rows({{1, 1}}),
                                 IntMatrix::from_rows({{1}}), IntMatrix(0, 0)};
  CHECK_THROWS_AS(adjunct_map(x, cone(2), notf), std::invalid_argument);
}
