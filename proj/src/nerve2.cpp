#include <map>
#include <stdexcept>
#include <tuple>

#include "cathom/classify.hpp"
#include "cathom/kan.hpp"
#include "cathom/twocat.hpp"

namespace cathom {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

int inv_of(const FinCat& h, int m) {
  for (int k : h.hom(h.tgt(m), h.src(m)))
    if (h.compose(k, m) == h.identity(h.src(m)) && h.compose(m, k) == h.identity(h.tgt(m)))
      return k;
  throw std::invalid_argument("2-morphism is not invertible");
}

// one fiber of the nerve: disjoint union over object tuples (c_0..c_k) of
// the product categories hom(c_0,c_1) x ... x hom(c_{k-1},c_k)
struct LevelData {
  CatPtr cat;
  std::vector<std::vector<int>> tuples, comps;  // per object
  std::vector<std::vector<int>> mor_comps;      // per morphism
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> oindex, mindex;
};

LevelData build_level(const Fin2Cat& C, int k) {
  LevelData L;
  FinCat cat;
  int n = C.num_objects;
  std::vector<std::vector<int>> all_tuples;
  std::vector<int> tup(k + 1, 0);
  for (bool more = n > 0; more;) {
    all_tuples.push_back(tup);
    int i = k;
    while (i >= 0 && ++tup[i] == n) tup[i--] = 0;
    more = i >= 0;
  }
  for (const auto& T : all_tuples) {
    std::vector<int> odims(k);
    bool empty = false;
    for (int i = 0; i < k; ++i) {
      odims[i] = C.homc(T[i], T[i + 1])->num_objects();
      if (odims[i] == 0) empty = true;
    }
    if (empty) continue;
    std::vector<int> x(k, 0);
    for (bool more = true; more;) {
      int o = cat.add_object();
      L.tuples.push_back(T);
      L.comps.push_back(x);
      L.oindex[{T, x}] = o;
      int i = k - 1;
      while (i >= 0 && ++x[i] == odims[i]) x[i--] = 0;
      more = i >= 0;
    }
    std::vector<int> mdims(k);
    for (int i = 0; i < k; ++i) mdims[i] = C.homc(T[i], T[i + 1])->num_morphisms();
    std::vector<int> u(k, 0), local;
    for (bool more = true; more;) {
      std::vector<int> sx(k), tx(k);
      for (int i = 0; i < k; ++i) {
        const FinCat& h = *C.homc(T[i], T[i + 1]);
        sx[i] = h.src(u[i]);
        tx[i] = h.tgt(u[i]);
      }
      int m = cat.add_morphism(L.oindex.at({T, sx}), L.oindex.at({T, tx}));
      L.mor_comps.push_back(u);
      L.mindex[{T, u}] = m;
      local.push_back(m);
      int i = k - 1;
      while (i >= 0 && ++u[i] == mdims[i]) u[i--] = 0;
      more = i >= 0;
    }
    for (int f : local)
      for (int g : local) {
        if (cat.tgt(f) != cat.src(g)) continue;
        std::vector<int> w(k);
        for (int i = 0; i < k; ++i)
          w[i] = C.homc(T[i], T[i + 1])->compose(L.mor_comps[g][i], L.mor_comps[f][i]);
        cat.set_compose(g, f, L.mindex.at({T, w}));
      }
  }
  for (int o = 0; o < cat.num_objects(); ++o) {
    std::vector<int> idc(k);
    const auto& T = L.tuples[o];
    for (int i = 0; i < k; ++i)
      idc[i] = C.homc(T[i], T[i + 1])->identity(L.comps[o][i]);
    cat.set_identity(o, L.mindex.at({T, idc}));
  }
  L.cat = wrap_cat(std::move(cat));
  return L;
}

// left-to-right composite of the word segment (lo, hi]; empty segments give
// the unit object at position lo
int fold_obj(const Fin2Cat& C, const std::vector<int>& T, const std::vector<int>& X, int lo,
             int hi) {
  if (lo == hi) return C.unit[T[lo]];
  int acc = X[lo];
  for (int p = lo + 2; p <= hi; ++p) acc = C.m_obj(T[lo], T[p - 1], T[p], acc, X[p - 1]);
  return acc;
}

int fold_mor(const Fin2Cat& C, const std::vector<int>& T, const std::vector<int>& U, int lo,
             int hi) {
  if (lo == hi) return C.homc(T[lo], T[lo])->identity(C.unit[T[lo]]);
  int acc = U[lo];
  for (int p = lo + 2; p <= hi; ++p) acc = C.m_mor(T[lo], T[p - 1], T[p], acc, U[p - 1]);
  return acc;
}

// ---- coherence isomorphisms ----
//
// Comparison isomorphisms between different ways of composing the same word
// are assembled by normalizing formula trees to the right comb of the word's
// factors.  A context fixes the word; a piece covers a window [lo, hi] of it
// and carries an object of hom(d_lo, d_hi) with an iso to the window's right
// comb.  Bicategorical coherence makes any two such normalizations agree, so
// composites of fwd/bwd legs are independent of the bracketing they came from.

struct Ctx {
  const Fin2Cat* C;
  std::vector<int> objs;     // d_0..d_p
  std::vector<int> factors;  // factors[i-1] = x_i in hom(d_{i-1}, d_i)
};

int rc_obj(const Ctx& c, int lo, int hi) {
  if (lo == hi) return c.C->unit[c.objs[lo]];
  if (hi == lo + 1) return c.factors[lo];
  return c.C->m_obj(c.objs[lo], c.objs[lo + 1], c.objs[hi], c.factors[lo], rc_obj(c, lo + 1, hi));
}

struct Piece {
  int lo = 0, hi = 0;
  int obj = 0;            // object of hom(d_lo, d_hi)
  int fwd = 0, bwd = 0;   // iso obj -> rc(lo, hi) and back
};

Piece leaf_piece(const Ctx& c, int i) {
  const FinCat& h = *c.C->homc(c.objs[i - 1], c.objs[i]);
  int x = c.factors[i - 1];
  return {i - 1, i, x, h.identity(x), h.identity(x)};
}

Piece unit_piece(const Ctx& c, int pos) {
  const FinCat& h = *c.C->homc(c.objs[pos], c.objs[pos]);
  int u = c.C->unit[c.objs[pos]];
  return {pos, pos, u, h.identity(u), h.identity(u)};
}

// iso m(rc(l,m), rc(m,h)) -> rc(l,h) and back
std::pair<int, int> combine(const Ctx& c, int l, int m, int h) {
  const Fin2Cat& C = *c.C;
  const FinCat& lh = *C.homc(c.objs[l], c.objs[h]);
  if (l == m) {
    int f = C.lam(c.objs[l], c.objs[h], rc_obj(c, m, h));
    return {f, inv_of(lh, f)};
  }
  if (m == h) {
    int f = C.rho(c.objs[l], c.objs[h], rc_obj(c, l, m));
    return {f, inv_of(lh, f)};
  }
  if (m == l + 1) {
    int idm = lh.identity(rc_obj(c, l, h));
    return {idm, idm};
  }
  int x = c.factors[l];
  auto sub = combine(c, l + 1, m, h);
  int al = C.alpha(c.objs[l], c.objs[l + 1], c.objs[m], c.objs[h], x, rc_obj(c, l + 1, m),
                   rc_obj(c, m, h));
  int idx = C.homc(c.objs[l], c.objs[l + 1])->identity(x);
  int fwd = lh.compose(C.m_mor(c.objs[l], c.objs[l + 1], c.objs[h], idx, sub.first), al);
  int bwd = lh.compose(inv_of(lh, al),
                       C.m_mor(c.objs[l], c.objs[l + 1], c.objs[h], idx, sub.second));
  return {fwd, bwd};
}

Piece merge(const Ctx& c, const Piece& a, const Piece& b) {
  const Fin2Cat& C = *c.C;
  int da = c.objs[a.lo], dm = c.objs[a.hi], db = c.objs[b.hi];
  const FinCat& lh = *C.homc(da, db);
  int obj = C.m_obj(da, dm, db, a.obj, b.obj);
  int s1f = C.m_mor(da, dm, db, a.fwd, b.fwd);
  int s1b = C.m_mor(da, dm, db, a.bwd, b.bwd);
  auto s2 = combine(c, a.lo, a.hi, b.hi);
  return {a.lo, b.hi, obj, lh.compose(s2.first, s1f), lh.compose(s1b, s2.second)};
}

Piece fold_pieces(const Ctx& c, const std::vector<Piece>& kids, int empty_pos) {
  if (kids.empty()) return unit_piece(c, empty_pos);
  Piece acc = kids[0];
  for (size_t i = 1; i < kids.size(); ++i) acc = merge(c, acc, kids[i]);
  return acc;
}

}  // namespace

int NerveFibration::find_word(const std::vector<int>& objs,
                              const std::vector<int>& comps) const {
  for (int i = 0; i < (int)word_objs.size(); ++i)
    if (word_objs[i] == objs && word_comps[i] == comps) return i;
  return -1;
}

std::vector<char> mark_special(const TotalCat& total, const SimplexCat& base) {
  Classification cls = classify(total.proj);
  const FinCat& tc = *total.cat;
  auto special_base = [&](int bm) {
    auto [a, b] = base.shape[bm];
    const auto& img = base.images[bm];
    for (int j = 0; j <= a; ++j)
      if (img[j] != b - a + j) return false;
    return true;
  };
  std::vector<char> marked(tc.num_morphisms(), 0);
  for (int m = 0; m < tc.num_morphisms(); ++m)
    marked[m] = cls.cartesian[m] && special_base(total.proj.on_mor(m));
  for (int o = 0; o < tc.num_objects(); ++o)
    require(marked[tc.identity(o)], "special marking misses an identity");
  for (int f = 0; f < tc.num_morphisms(); ++f) {
    if (!marked[f]) continue;
    for (int g : tc.out_of(tc.tgt(f)))
      if (marked[g]) require(marked[tc.compose(g, f)], "special marking is not closed");
  }
  return marked;
}

NerveFibration nerve2(const Fin2Cat& c, int d) {
  std::string why;
  if (!c.validate(&why)) throw std::invalid_argument("coherence violation: " + why);
  require(d >= 0, "negative truncation dimension");
  NerveFibration n;
  n.dim = d;
  n.base = simplex_cat(d);
  const FinCat& bc = *n.base.cat;
  std::vector<LevelData> levels;
  for (int k = 0; k <= d; ++k) levels.push_back(build_level(c, k));

  CatValuedFunctor fv;
  fv.base = n.base.cat;
  fv.contravariant = true;
  for (int k = 0; k <= d; ++k) fv.fiber.push_back(levels[k].cat);
  fv.act_obj.resize(bc.num_morphisms());
  fv.act_mor.resize(bc.num_morphisms());
  for (int bm = 0; bm < bc.num_morphisms(); ++bm) {
    auto [a, b] = n.base.shape[bm];
    const auto& img = n.base.images[bm];
    const LevelData& hiL = levels[b];
    const LevelData& loL = levels[a];
    auto& ao = fv.act_obj[bm];
    auto& am = fv.act_mor[bm];
    ao.resize(hiL.tuples.size());
    for (int o = 0; o < (int)hiL.tuples.size(); ++o) {
      const auto& T = hiL.tuples[o];
      const auto& X = hiL.comps[o];
      std::vector<int> T2(a + 1), X2(a);
      for (int j = 0; j <= a; ++j) T2[j] = T[img[j]];
      for (int j = 1; j <= a; ++j) X2[j - 1] = fold_obj(c, T, X, img[j - 1], img[j]);
      ao[o] = loL.oindex.at({T2, X2});
    }
    am.resize(hiL.mor_comps.size());
    for (int m = 0; m < (int)hiL.mor_comps.size(); ++m) {
      const auto& T = hiL.tuples[hiL.cat->src(m)];
      const auto& U = hiL.mor_comps[m];
      std::vector<int> T2(a + 1), U2(a);
      for (int j = 0; j <= a; ++j) T2[j] = T[img[j]];
      for (int j = 1; j <= a; ++j) U2[j - 1] = fold_mor(c, T, U, img[j - 1], img[j]);
      am[m] = loL.mindex.at({T2, U2});
    }
  }

  // comparison isomorphisms: strict input composes on the nose
  if (!c.strict()) {
    for (int x = 0; x < bc.num_objects(); ++x)
      for (int f : bc.in_of(x))
        for (int g : bc.out_of(x)) {
          auto [af, bf] = n.base.shape[f];
          auto [ag, bg] = n.base.shape[g];
          const auto& imgf = n.base.images[f];
          const auto& imgg = n.base.images[g];
          const LevelData& top = levels[bg];
          const LevelData& bot = levels[af];
          std::vector<int> gamma(top.tuples.size());
          bool all_id = true;
          for (int s = 0; s < (int)top.tuples.size(); ++s) {
            Ctx ctx{&c, top.tuples[s], top.comps[s]};
            std::vector<int> T2(af + 1), comps(af);
            for (int j = 0; j <= af; ++j) T2[j] = ctx.objs[imgg[imgf[j]]];
            for (int i = 1; i <= af; ++i) {
              std::vector<Piece> outer;
              for (int j = imgf[i - 1] + 1; j <= imgf[i]; ++j) {
                std::vector<Piece> inner;
                for (int p = imgg[j - 1] + 1; p <= imgg[j]; ++p)
                  inner.push_back(leaf_piece(ctx, p));
                outer.push_back(fold_pieces(ctx, inner, imgg[j]));
              }
              Piece two = fold_pieces(ctx, outer, imgg[imgf[i]]);
              std::vector<Piece> flat;
              for (int p = imgg[imgf[i - 1]] + 1; p <= imgg[imgf[i]]; ++p)
                flat.push_back(leaf_piece(ctx, p));
              Piece one = fold_pieces(ctx, flat, imgg[imgf[i]]);
              comps[i - 1] =
                  c.homc(ctx.objs[two.lo], ctx.objs[two.hi])->compose(one.bwd, two.fwd);
            }
            gamma[s] = bot.mindex.at({T2, comps});
            if (!bot.cat->is_identity(gamma[s])) all_id = false;
          }
          if (!all_id) fv.compat[{g, f}] = std::move(gamma);
        }
  }
  if (!fv.validate(&why)) throw std::invalid_argument("nerve transitions fail coherence: " + why);

  n.total = grothendieck_total(fv);
  n.fibers = std::move(fv);
  for (auto [lvl, s] : n.total.obj_pair) {
    n.word_objs.push_back(levels[lvl].tuples[s]);
    n.word_comps.push_back(levels[lvl].comps[s]);
  }
  for (int k = 0; k <= d; ++k) n.fiber_mor_comps.push_back(std::move(levels[k].mor_comps));
  n.special = mark_special(n.total, n.base);
  return n;
}

RepFibration representable_total(const Fin2Cat& c2, const NerveFibration& n, int c) {
  require(c >= 0 && c < c2.num_objects, "object out of range");
  require(c2.groupoid_enriched(), "representable totals need invertible 2-morphisms");
  const FinCat& nc = *n.total.cat;
  CatValuedFunctor fv;
  fv.base = n.total.cat;
  fv.contravariant = false;
  for (int w = 0; w < nc.num_objects(); ++w)
    fv.fiber.push_back(c2.homc(c, n.word_objs[w].back()));
  fv.act_obj.resize(nc.num_morphisms());
  fv.act_mor.resize(nc.num_morphisms());
  // the tail of a morphism: its base map theta : [a] -> [b] leaves the window
  // (theta(a), b] of the target word to append
  auto tail_lo = [&](int e) {
    int bm = n.total.proj.on_mor(e);
    return n.base.images[bm][n.base.shape[bm].first];
  };
  for (int e = 0; e < nc.num_morphisms(); ++e) {
    int wt = nc.tgt(e);
    const auto& T = n.word_objs[wt];
    const auto& X = n.word_comps[wt];
    int p = tail_lo(e);
    int B = (int)T.size() - 1;
    const FinCat& hsrc = *fv.fiber[nc.src(e)];
    auto& ao = fv.act_obj[e];
    auto& am = fv.act_mor[e];
    ao.resize(hsrc.num_objects());
    for (int g = 0; g < hsrc.num_objects(); ++g) {
      int acc = g;
      for (int q = p + 1; q <= B; ++q) acc = c2.m_obj(c, T[q - 1], T[q], acc, X[q - 1]);
      ao[g] = acc;
    }
    am.resize(hsrc.num_morphisms());
    for (int u = 0; u < hsrc.num_morphisms(); ++u) {
      int acc = u;
      for (int q = p + 1; q <= B; ++q)
        acc = c2.m_mor(c, T[q - 1], T[q], acc,
                       c2.homc(T[q - 1], T[q])->identity(X[q - 1]));
      am[u] = acc;
    }
  }
  // comparison isos: reassociate the appended tails and bridge the middle
  // word's factors to their composed images via the vertical 2-morphisms
  for (int x = 0; x < nc.num_objects(); ++x)
    for (int e1 : nc.in_of(x))
      for (int e2 : nc.out_of(x)) {
        int b1 = n.total.proj.on_mor(e1), b2 = n.total.proj.on_mor(e2);
        auto [a1, lvl_mid] = n.base.shape[b1];
        auto [a2, b2lvl] = n.base.shape[b2];
        const auto& img1 = n.base.images[b1];
        const auto& img2 = n.base.images[b2];
        int wsrc = nc.src(e1), wtgt = nc.tgt(e2);
        const auto& Tt = n.word_objs[wtgt];
        const auto& Xt = n.word_comps[wtgt];
        const auto& Xm = n.word_comps[nc.tgt(e1)];
        int al2 = std::get<2>(n.total.mor_data[e2]);
        const auto& v2 = n.fiber_mor_comps[a2][al2];
        int p1 = img2[img1[a1]];
        int B = b2lvl;
        Ctx ctx{&c2, {}, {}};
        ctx.objs.push_back(c);
        for (int q = p1; q <= B; ++q) ctx.objs.push_back(Tt[q]);
        auto cpos = [&](int q) { return q - p1 + 1; };  // word position -> context position
        const FinCat& hsrc = *fv.fiber[wsrc];
        const FinCat& htgt = *fv.fiber[wtgt];
        std::vector<int> gamma(hsrc.num_objects());
        bool all_id = true;
        for (int g = 0; g < hsrc.num_objects(); ++g) {
          ctx.factors.assign(1, g);
          for (int q = p1 + 1; q <= B; ++q) ctx.factors.push_back(Xt[q - 1]);
          int P = 1 + B - p1;
          std::vector<Piece> kids;
          kids.push_back(leaf_piece(ctx, 1));
          for (int j = img1[a1] + 1; j <= a2; ++j) {
            std::vector<Piece> window;
            for (int t = cpos(img2[j - 1]) + 1; t <= cpos(img2[j]); ++t)
              window.push_back(leaf_piece(ctx, t));
            Piece sub = fold_pieces(ctx, window, cpos(img2[j]));
            const FinCat& hj = *c2.homc(ctx.objs[sub.lo], ctx.objs[sub.hi]);
            Piece bridged{sub.lo, sub.hi, Xm[j - 1], hj.compose(sub.fwd, v2[j - 1]),
                          hj.compose(inv_of(hj, v2[j - 1]), sub.bwd)};
            kids.push_back(bridged);
          }
          Piece inner = fold_pieces(ctx, kids, 0);
          std::vector<Piece> outer;
          outer.push_back(inner);
          for (int t = cpos(img2[a2]) + 1; t <= P; ++t) outer.push_back(leaf_piece(ctx, t));
          Piece two = fold_pieces(ctx, outer, 0);
          std::vector<Piece> flat;
          for (int t = 1; t <= P; ++t) flat.push_back(leaf_piece(ctx, t));
          Piece one = fold_pieces(ctx, flat, 0);
          gamma[g] = htgt.compose(one.bwd, two.fwd);
          if (!htgt.is_identity(gamma[g])) all_id = false;
        }
        if (!all_id) fv.compat[{e2, e1}] = std::move(gamma);
        (void)lvl_mid;
      }
  std::string why;
  if (!fv.validate(&why))
    throw std::invalid_argument("representable transitions fail coherence: " + why);
  RepFibration rep;
  rep.total = grothendieck_total(fv);
  rep.fibers = std::move(fv);
  return rep;
}

FunctorComplex two_representable(const Fin2Cat& c2, const NerveFibration& n, int c,
                                 int max_deg) {
  RepFibration rep = representable_total(c2, n, c);
  return lkan(rep.total.proj, constant_coeff(rep.total.cat, 1, false), max_deg);
}

}  // namespace cathom
