#include "cathom/classify.hpp"

#include <cassert>
#include <functional>

namespace cathom {

bool is_cartesian(const Functor& p, int f) {
  const FinCat& d = *p.dom;
  int c = d.src(f), c2 = d.tgt(f);
  int pf = p.mor_map[f];
  int idc = p.cod->identity(p.obj_map[c]);
  for (int f1 : d.in_of(c2)) {
    if (p.mor_map[f1] != pf) continue;
    // exactly one vertical g with f1 = f . g
    int count = 0;
    for (int g : d.hom(d.src(f1), c))
      if (p.mor_map[g] == idc && d.compose(f, g) == f1) ++count;
    if (count != 1) return false;
  }
  return true;
}

bool is_cocartesian(const Functor& p, int f) {
  const FinCat& d = *p.dom;
  int c = d.src(f), c2 = d.tgt(f);
  int pf = p.mor_map[f];
  int idc = p.cod->identity(p.obj_map[c2]);
  for (int f1 : d.out_of(c)) {
    if (p.mor_map[f1] != pf) continue;
    int count = 0;
    for (int g : d.hom(c2, d.tgt(f1)))
      if (p.mor_map[g] == idc && d.compose(g, f) == f1) ++count;
    if (count != 1) return false;
  }
  return true;
}

Classification classify(const Functor& p) {
  const FinCat& d = *p.dom;
  const FinCat& c = *p.cod;
  Classification r;
  int nm = d.num_morphisms();
  r.cartesian.resize(nm);
  r.cocartesian.resize(nm);
  for (int m = 0; m < nm; ++m) {
    r.cartesian[m] = is_cartesian(p, m);
    r.cocartesian[m] = is_cocartesian(p, m);
  }
  r.prefibration = true;
  r.precofibration = true;
  r.discrete_fibration = true;
  r.discrete_opfibration = true;
  for (int o = 0; o < d.num_objects(); ++o) {
    for (int f : c.in_of(p.obj_map[o])) {
      int lifts = 0;
      bool cart = false;
      for (int m : d.in_of(o))
        if (p.mor_map[m] == f) {
          ++lifts;
          if (r.cartesian[m]) cart = true;
        }
      if (!cart) r.prefibration = false;
      if (lifts != 1) r.discrete_fibration = false;
    }
    for (int f : c.out_of(p.obj_map[o])) {
      int lifts = 0;
      bool cocart = false;
      for (int m : d.out_of(o))
        if (p.mor_map[m] == f) {
          ++lifts;
          if (r.cocartesian[m]) cocart = true;
        }
      if (!cocart) r.precofibration = false;
      if (lifts != 1) r.discrete_opfibration = false;
    }
  }
  r.cartesian_closed = true;
  r.cocartesian_closed = true;
  for (int o = 0; o < d.num_objects(); ++o)
    for (int f : d.in_of(o))
      for (int g : d.out_of(o)) {
        int gf = d.compose(g, f);
        if (r.cartesian[f] && r.cartesian[g] && !r.cartesian[gf]) r.cartesian_closed = false;
        if (r.cocartesian[f] && r.cocartesian[g] && !r.cocartesian[gf]) r.cocartesian_closed = false;
      }
  r.fibration = r.prefibration && r.cartesian_closed;
  r.cofibration = r.precofibration && r.cocartesian_closed;
  return r;
}

FiberCat fiber_cat(const Functor& p, int c) {
  const FinCat& d = *p.dom;
  FiberCat f;
  FinCat fc;
  f.obj_back.assign(d.num_objects(), -1);
  for (int o = 0; o < d.num_objects(); ++o)
    if (p.obj_map[o] == c) {
      f.obj_back[o] = fc.add_object(d.object_name(o));
      f.obj_orig.push_back(o);
    }
  int idc = p.cod->identity(c);
  std::vector<int> mor_back(d.num_morphisms(), -1);
  for (int m = 0; m < d.num_morphisms(); ++m)
    if (p.mor_map[m] == idc) {
      mor_back[m] = fc.add_morphism(f.obj_back[d.src(m)], f.obj_back[d.tgt(m)], d.morphism_name(m));
      f.mor_orig.push_back(m);
    }
  for (int o : f.obj_orig) fc.set_identity(f.obj_back[o], mor_back[d.identity(o)]);
  for (size_t i = 0; i < f.mor_orig.size(); ++i)
    for (size_t j = 0; j < f.mor_orig.size(); ++j) {
      int m1 = f.mor_orig[j], m2 = f.mor_orig[i];
      if (d.tgt(m2) != d.src(m1)) continue;
      int comp = d.compose(m1, m2);
      assert(mor_back[comp] >= 0);
      fc.set_compose(mor_back[m1], mor_back[m2], mor_back[comp]);
    }
  fc.seal();
  f.cat = wrap_cat(std::move(fc));
  f.include.dom = f.cat;
  f.include.cod = p.dom;
  f.include.obj_map = f.obj_orig;
  f.include.mor_map = f.mor_orig;
  return f;
}

bool is_isomorphism_in(const FinCat& c, int m) {
  int a = c.src(m), b = c.tgt(m);
  for (int g : c.hom(b, a))
    if (c.compose(g, m) == c.identity(a) && c.compose(m, g) == c.identity(b)) return true;
  return false;
}

bool fully_faithful(const Functor& f) {
  const FinCat& d = *f.dom;
  const FinCat& c = *f.cod;
  for (int a = 0; a < d.num_objects(); ++a)
    for (int b = 0; b < d.num_objects(); ++b) {
      auto hd = d.hom(a, b);
      auto hc = c.hom(f.obj_map[a], f.obj_map[b]);
      if (hd.size() != hc.size()) return false;
      std::vector<char> hit(c.num_morphisms(), 0);
      for (int m : hd) {
        if (hit[f.mor_map[m]]) return false;  // not injective
        hit[f.mor_map[m]] = 1;
      }
    }
  return true;
}

bool essentially_surjective(const Functor& f) {
  const FinCat& c = *f.cod;
  for (int y = 0; y < c.num_objects(); ++y) {
    bool found = false;
    for (int a = 0; a < f.dom->num_objects() && !found; ++a)
      for (int m : c.hom(f.obj_map[a], y))
        if (is_isomorphism_in(c, m)) {
          found = true;
          break;
        }
    if (!found) return false;
  }
  return true;
}

bool is_equivalence(const Functor& f) { return fully_faithful(f) && essentially_surjective(f); }

namespace {

// functors Phi: S -> D with p . Phi = over and every morphism image cartesian
std::vector<Functor> cartesian_functors(const CatPtr& sc, const Functor& over, const Functor& p,
                                        const std::vector<char>& cart) {
  const FinCat& s = *sc;
  const FinCat& d = *p.dom;
  int no = s.num_objects(), nm = s.num_morphisms();
  std::vector<std::vector<int>> ocand(no);
  for (int o = 0; o < no; ++o)
    for (int x = 0; x < d.num_objects(); ++x)
      if (p.obj_map[x] == over.obj_map[o]) ocand[o].push_back(x);
  std::vector<Functor> out;
  std::vector<int> osel(no, -1), msel(nm, -1);
  std::function<void(int)> rec_m = [&](int mi) {
    if (mi == nm) {
      // composition preservation
      for (int o = 0; o < no; ++o)
        for (int f : s.in_of(o))
          for (int g : s.out_of(o))
            if (msel[s.compose(g, f)] != d.compose(msel[g], msel[f])) return;
      Functor phi{sc, p.dom, osel, msel};
      out.push_back(std::move(phi));
      return;
    }
    int a = osel[s.src(mi)], b = osel[s.tgt(mi)];
    if (s.is_identity(mi)) {
      msel[mi] = d.identity(a);
      rec_m(mi + 1);
      msel[mi] = -1;
      return;
    }
    for (int m : d.hom(a, b)) {
      if (p.mor_map[m] != over.mor_map[mi] || !cart[m]) continue;
      msel[mi] = m;
      rec_m(mi + 1);
      msel[mi] = -1;
    }
  };
  std::function<void(int)> rec_o = [&](int oi) {
    if (oi == no) {
      rec_m(0);
      return;
    }
    for (int x : ocand[oi]) {
      osel[oi] = x;
      rec_o(oi + 1);
      osel[oi] = -1;
    }
  };
  rec_o(0);
  return out;
}

struct GrFiber {
  CatPtr cat;
  std::vector<Functor> objs;
  std::vector<std::tuple<int, int, std::vector<int>>> mors;  // (src, tgt, components)

  int find_obj(const Functor& f) const {
    for (int i = 0; i < (int)objs.size(); ++i)
      if (objs[i].obj_map == f.obj_map && objs[i].mor_map == f.mor_map) return i;
    return -1;
  }
  int find_mor(int i, int j, const std::vector<int>& comps) const {
    for (int m = 0; m < (int)mors.size(); ++m)
      if (mors[m] == std::make_tuple(i, j, comps)) return m;
    return -1;
  }
};

// vertical natural transformations make up the morphisms
GrFiber gr_fiber(const CatPtr& sc, std::vector<Functor> objs, const Functor& p) {
  GrFiber g;
  g.objs = std::move(objs);
  const FinCat& s = *sc;
  const FinCat& d = *p.dom;
  FinCat gc;
  for (int i = 0; i < (int)g.objs.size(); ++i) gc.add_object("F" + std::to_string(i));
  int no = s.num_objects();
  for (int i = 0; i < (int)g.objs.size(); ++i)
    for (int j = 0; j < (int)g.objs.size(); ++j) {
      const Functor& a = g.objs[i];
      const Functor& b = g.objs[j];
      std::vector<int> comps(no, -1);
      std::function<void(int)> rec = [&](int oi) {
        if (oi == no) {
          if (is_natural(a, b, comps)) {
            gc.add_morphism(i, j);
            g.mors.emplace_back(i, j, comps);
          }
          return;
        }
        int x = a.obj_map[oi], y = b.obj_map[oi];
        int idc = p.cod->identity(p.obj_map[x]);
        for (int m : d.hom(x, y)) {
          if (p.mor_map[m] != idc) continue;  // vertical only
          comps[oi] = m;
          rec(oi + 1);
          comps[oi] = -1;
        }
      };
      rec(0);
    }
  for (int i = 0; i < (int)g.objs.size(); ++i) {
    std::vector<int> idc(no);
    for (int o = 0; o < no; ++o) idc[o] = d.identity(g.objs[i].obj_map[o]);
    int m = g.find_mor(i, i, idc);
    assert(m >= 0);
    gc.set_identity(i, m);
  }
  for (int m1 = 0; m1 < (int)g.mors.size(); ++m1)
    for (int m2 = 0; m2 < (int)g.mors.size(); ++m2) {
      auto& [i2, j2, c2] = g.mors[m2];
      auto& [i1, j1, c1] = g.mors[m1];
      if (j2 != i1) continue;
      std::vector<int> comps(no);
      for (int o = 0; o < no; ++o) comps[o] = d.compose(c1[o], c2[o]);
      int m3 = g.find_mor(i2, j1, comps);
      assert(m3 >= 0);
      gc.set_compose(m1, m2, m3);
    }
  gc.seal();
  g.cat = wrap_cat(std::move(gc));
  return g;
}

}  // namespace

GrResult gr_of_fibration(const Functor& p) {
  Classification cls = classify(p);
  assert(cls.fibration && "inverse Grothendieck construction requires a fibration");
  const FinCat& c = *p.cod;
  GrResult r;
  int nb = c.num_objects();
  std::vector<SliceCat> slices;
  std::vector<GrFiber> grf;
  for (int o = 0; o < nb; ++o) {
    slices.push_back(slice_cat(p.cod, o));
    auto funs = cartesian_functors(slices[o].cat, slices[o].forget, p, cls.cartesian);
    grf.push_back(gr_fiber(slices[o].cat, std::move(funs), p));
  }
  r.fv.base = p.cod;
  r.fv.contravariant = true;
  for (int o = 0; o < nb; ++o) r.fv.fiber.push_back(grf[o].cat);
  r.fv.act_obj.resize(c.num_morphisms());
  r.fv.act_mor.resize(c.num_morphisms());
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int a = c.src(f), b = c.tgt(f);
    // postcomposition C/a -> C/b on slice data
    const SliceCat& sa = slices[a];
    const SliceCat& sb = slices[b];
    int na = (int)sa.obj_mor.size();
    std::vector<int> omap(na), mmap(sa.mor_base.size());
    for (int i = 0; i < na; ++i) omap[i] = sb.find_obj(c.compose(f, sa.obj_mor[i]));
    for (int m = 0; m < (int)sa.mor_base.size(); ++m) {
      int i = sa.cat->src(m), j = sa.cat->tgt(m);
      int found = -1;
      for (int m2 : sb.cat->hom(omap[i], omap[j]))
        if (sb.mor_base[m2] == sa.mor_base[m]) found = m2;
      assert(found >= 0);
      mmap[m] = found;
    }
    // transition Gr(b) -> Gr(a): precompose with the slice map
    for (int i = 0; i < (int)grf[b].objs.size(); ++i) {
      const Functor& phi = grf[b].objs[i];
      Functor t{slices[a].cat, p.dom, {}, {}};
      t.obj_map.resize(na);
      t.mor_map.resize(mmap.size());
      for (int o = 0; o < na; ++o) t.obj_map[o] = phi.obj_map[omap[o]];
      for (size_t m = 0; m < mmap.size(); ++m) t.mor_map[m] = phi.mor_map[mmap[m]];
      int idx = grf[a].find_obj(t);
      assert(idx >= 0);
      r.fv.act_obj[f].push_back(idx);
    }
    for (const auto& [i, j, comps] : grf[b].mors) {
      std::vector<int> tc(na);
      for (int o = 0; o < na; ++o) tc[o] = comps[omap[o]];
      int idx = grf[a].find_mor(r.fv.act_obj[f][i], r.fv.act_obj[f][j], tc);
      assert(idx >= 0);
      r.fv.act_mor[f].push_back(idx);
    }
  }
  // evaluation at the identity slice object lands in the fiber
  for (int o = 0; o < nb; ++o) {
    r.fibers.push_back(fiber_cat(p, o));
    const FiberCat& fib = r.fibers.back();
    int ido = slices[o].find_obj(c.identity(o));
    Functor ev{grf[o].cat, fib.cat, {}, {}};
    for (const auto& phi : grf[o].objs) ev.obj_map.push_back(fib.obj_back[phi.obj_map[ido]]);
    for (const auto& [i, j, comps] : grf[o].mors) {
      int m = comps[ido];
      int found = -1;
      for (size_t k = 0; k < fib.mor_orig.size(); ++k)
        if (fib.mor_orig[k] == m) found = (int)k;
      assert(found >= 0);
      ev.mor_map.push_back(found);
    }
    r.eval.push_back(std::move(ev));
  }
  r.total = grothendieck_total(r.fv);
  // comparison Tot(Gr(p)) -> dom(p)
  r.roundtrip.dom = r.total.cat;
  r.roundtrip.cod = p.dom;
  for (auto [co, s] : r.total.obj_pair) {
    int ido = slices[co].find_obj(c.identity(co));
    r.roundtrip.obj_map.push_back(grf[co].objs[s].obj_map[ido]);
  }
  const FinCat& tcat = *r.total.cat;
  for (int m = 0; m < tcat.num_morphisms(); ++m) {
    auto [f, src_total, al] = r.total.mor_data[m];
    auto [ca, phi_i] = r.total.obj_pair[src_total];
    auto [cb, psi_i] = r.total.obj_pair[tcat.tgt(m)];
    const auto& [ai, aj, comps] = grf[ca].mors[al];
    int ido_a = slices[ca].find_obj(c.identity(ca));
    int f_obj = slices[cb].find_obj(f);
    int ido_b = slices[cb].find_obj(c.identity(cb));
    // slice morphism (f as object) -> (identity object) with base f
    int sigma = -1;
    for (int sm : slices[cb].cat->hom(f_obj, ido_b))
      if (slices[cb].mor_base[sm] == f) sigma = sm;
    assert(sigma >= 0);
    const Functor& psi = grf[cb].objs[psi_i];
    r.roundtrip.mor_map.push_back(p.dom->compose(psi.mor_map[sigma], comps[ido_a]));
  }
  return r;
}

}  // namespace cathom
