#include "cathom/fincat.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace cathom {

int FinCat::add_object(std::string name) {
  int o = (int)ids.size();
  ids.push_back(-1);
  outm.emplace_back();
  inm.emplace_back();
  if (name.empty()) name = std::to_string(o);
  onames.push_back(std::move(name));
  return o;
}

int FinCat::add_morphism(int s, int t, std::string name) {
  assert(s >= 0 && s < num_objects() && t >= 0 && t < num_objects());
  int m = (int)msrc.size();
  msrc.push_back(s);
  mtgt.push_back(t);
  outm[s].push_back(m);
  inm[t].push_back(m);
  if (name.empty()) name = "m" + std::to_string(m);
  mnames.push_back(std::move(name));
  sealed = false;
  return m;
}

void FinCat::set_identity(int o, int m) {
  assert(msrc[m] == o && mtgt[m] == o);
  ids[o] = m;
}

void FinCat::set_compose(int g, int f, int gf) {
  assert(mtgt[f] == msrc[g]);
  assert(msrc[gf] == msrc[f] && mtgt[gf] == mtgt[g]);
  comp[key(g, f)] = gf;
  sealed = false;
}

void FinCat::set_lazy_compose(std::function<int(int, int)> fn) {
  lazy_fn = std::move(fn);
  lazy_mode = true;
}

void FinCat::seal() {
  if (sealed || lazy_mode) return;
  int n = num_morphisms();
  if (n <= kDenseMor) {
    table.assign((size_t)n * n, -1);
    for (const auto& [k, v] : comp) table[(size_t)(k >> 32) * n + (uint32_t)k] = v;
  } else {
    table.clear();
  }
  sealed = true;
}

int FinCat::compose(int g, int f) const {
  assert(mtgt[f] == msrc[g]);
  if (lazy_mode) {
    int r = lazy_fn(g, f);
    assert(r >= 0);
    return r;
  }
  if (!table.empty() && sealed) {
    int r = table[(size_t)g * num_morphisms() + f];
    assert(r >= 0);
    return r;
  }
  auto it = comp.find(key(g, f));
  assert(it != comp.end());
  return it->second;
}

std::vector<int> FinCat::hom(int a, int b) const {
  std::vector<int> out;
  for (int m : outm[a])
    if (mtgt[m] == b) out.push_back(m);
  return out;
}

bool FinCat::validate(std::string* why, long assoc_samples) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto lookup = [&](int g, int f) -> int {
    if (lazy_mode) return lazy_fn(g, f);
    auto it = comp.find(key(g, f));
    return it == comp.end() ? -1 : it->second;
  };
  for (int o = 0; o < num_objects(); ++o) {
    if (ids[o] < 0) return fail("object " + std::to_string(o) + " has no identity");
    if (msrc[ids[o]] != o || mtgt[ids[o]] != o)
      return fail("identity of object " + std::to_string(o) + " has wrong endpoints");
  }
  for (int m = 0; m < num_morphisms(); ++m) {
    int l = lookup(ids[mtgt[m]], m);
    int r = lookup(m, ids[msrc[m]]);
    if (l != m) return fail("left unit law fails at morphism " + std::to_string(m));
    if (r != m) return fail("right unit law fails at morphism " + std::to_string(m));
  }
  auto check_pair = [&](int g, int f) -> bool {
    int gf = lookup(g, f);
    if (gf < 0 || gf >= num_morphisms()) return false;
    return msrc[gf] == msrc[f] && mtgt[gf] == mtgt[g];
  };
  auto check_triple = [&](int h, int g, int f) -> bool {
    return lookup(h, lookup(g, f)) == lookup(lookup(h, g), f);
  };
  if (assoc_samples < 0) {
    for (int o = 0; o < num_objects(); ++o)
      for (int f : inm[o])
        for (int g : outm[o]) {
          if (!check_pair(g, f))
            return fail("composition missing or ill-typed at (" + std::to_string(g) + "," +
                        std::to_string(f) + ")");
          for (int h : outm[mtgt[g]])
            if (!check_triple(h, g, f))
              return fail("associativity fails at (" + std::to_string(h) + "," +
                          std::to_string(g) + "," + std::to_string(f) + ")");
        }
  } else if (num_morphisms() > 0) {
    std::mt19937_64 rng(1729);
    std::uniform_int_distribution<int> pick(0, num_morphisms() - 1);
    long done = 0;
    for (long it = 0; it < assoc_samples * 64 && done < assoc_samples; ++it) {
      int f = pick(rng);
      const auto& outs = outm[mtgt[f]];
      if (outs.empty()) continue;
      int g = outs[rng() % outs.size()];
      if (!check_pair(g, f)) return fail("sampled composition ill-typed");
      const auto& outs2 = outm[mtgt[g]];
      if (!outs2.empty()) {
        int h = outs2[rng() % outs2.size()];
        if (!check_triple(h, g, f)) return fail("sampled associativity failure");
      }
      ++done;
    }
  }
  return true;
}

bool Functor::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if ((int)obj_map.size() != dom->num_objects() || (int)mor_map.size() != dom->num_morphisms())
    return fail("map sizes do not match the source category");
  for (int m = 0; m < dom->num_morphisms(); ++m) {
    int fm = mor_map[m];
    if (fm < 0 || fm >= cod->num_morphisms()) return fail("morphism image out of range");
    if (cod->src(fm) != obj_map[dom->src(m)] || cod->tgt(fm) != obj_map[dom->tgt(m)])
      return fail("endpoints not preserved at morphism " + std::to_string(m));
  }
  for (int o = 0; o < dom->num_objects(); ++o)
    if (mor_map[dom->identity(o)] != cod->identity(obj_map[o]))
      return fail("identity not preserved at object " + std::to_string(o));
  for (int o = 0; o < dom->num_objects(); ++o)
    for (int f : dom->in_of(o))
      for (int g : dom->out_of(o))
        if (mor_map[dom->compose(g, f)] != cod->compose(mor_map[g], mor_map[f]))
          return fail("composition not preserved at (" + std::to_string(g) + "," +
                      std::to_string(f) + ")");
  return true;
}

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  f.obj_map.resize(c->num_objects());
  f.mor_map.resize(c->num_morphisms());
  for (int o = 0; o < c->num_objects(); ++o) f.obj_map[o] = o;
  for (int m = 0; m < c->num_morphisms(); ++m) f.mor_map[m] = m;
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  assert(f.cod.get() == g.dom.get());
  Functor h{f.dom, g.cod, {}, {}};
  h.obj_map.resize(f.obj_map.size());
  h.mor_map.resize(f.mor_map.size());
  for (size_t o = 0; o < f.obj_map.size(); ++o) h.obj_map[o] = g.obj_map[f.obj_map[o]];
  for (size_t m = 0; m < f.mor_map.size(); ++m) h.mor_map[m] = g.mor_map[f.mor_map[m]];
  return h;
}

bool is_natural(const Functor& f, const Functor& g, const std::vector<int>& comp) {
  assert(f.dom.get() == g.dom.get() && f.cod.get() == g.cod.get());
  const FinCat& d = *f.dom;
  const FinCat& c = *f.cod;
  for (int o = 0; o < d.num_objects(); ++o) {
    int e = comp[o];
    if (c.src(e) != f.obj_map[o] || c.tgt(e) != g.obj_map[o]) return false;
  }
  for (int m = 0; m < d.num_morphisms(); ++m) {
    int a = d.src(m), b = d.tgt(m);
    if (c.compose(comp[b], f.mor_map[m]) != c.compose(g.mor_map[m], comp[a])) return false;
  }
  return true;
}

// ---- builders ----

FinCat point_cat() {
  FinCat c;
  int o = c.add_object("pt");
  int i = c.add_morphism(o, o, "id");
  c.set_identity(o, i);
  c.set_compose(i, i, i);
  c.seal();
  return c;
}

FinCat arrow_cat() {
  FinCat c;
  int a = c.add_object("0"), b = c.add_object("1");
  int ia = c.add_morphism(a, a, "id0");
  int ib = c.add_morphism(b, b, "id1");
  int f = c.add_morphism(a, b, "f");
  c.set_identity(a, ia);
  c.set_identity(b, ib);
  c.set_compose(ia, ia, ia);
  c.set_compose(ib, ib, ib);
  c.set_compose(f, ia, f);
  c.set_compose(ib, f, f);
  c.seal();
  return c;
}

FinCat indiscrete_cat(int n) {
  FinCat c;
  for (int i = 0; i < n; ++i) c.add_object();
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = c.add_morphism(i, j);
  for (int i = 0; i < n; ++i) c.set_identity(i, m[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c.set_compose(m[j][k], m[i][j], m[i][k]);
  c.seal();
  return c;
}

FinCat monoid_cat(const std::vector<std::vector<int>>& mult, int unit) {
  FinCat c;
  int o = c.add_object();
  int n = (int)mult.size();
  for (int i = 0; i < n; ++i) c.add_morphism(o, o, "g" + std::to_string(i));
  c.set_identity(o, unit);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) c.set_compose(g, f, mult[g][f]);
  c.seal();
  return c;
}

FinCat poset_cat(int n, const std::vector<std::pair<int, int>>& le) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  for (auto [a, b] : le) r[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  FinCat c;
  for (int i = 0; i < n; ++i) c.add_object();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (r[i][j]) m[i][j] = c.add_morphism(i, j, std::to_string(i) + "<=" + std::to_string(j));
  for (int i = 0; i < n; ++i) c.set_identity(i, m[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (r[i][j] && r[j][k]) c.set_compose(m[j][k], m[i][j], m[i][k]);
  c.seal();
  return c;
}

FinCat opposite(const FinCat& c) {
  FinCat o;
  for (int i = 0; i < c.num_objects(); ++i) o.add_object(c.object_name(i));
  for (int m = 0; m < c.num_morphisms(); ++m)
    o.add_morphism(c.tgt(m), c.src(m), c.morphism_name(m));
  for (int i = 0; i < c.num_objects(); ++i) o.set_identity(i, c.identity(i));
  if (c.lazy()) {
    auto base = std::make_shared<FinCat>(c);
    o.set_lazy_compose([base](int g, int f) { return base->compose(f, g); });
    return o;
  }
  for (int x = 0; x < c.num_objects(); ++x)
    for (int f : c.in_of(x))
      for (int g : c.out_of(x)) o.set_compose(f, g, c.compose(g, f));
  o.seal();
  return o;
}

FinCat product_cat(const FinCat& a, const FinCat& b) {
  FinCat p;
  int bn = b.num_objects(), bm = b.num_morphisms();
  for (int i = 0; i < a.num_objects(); ++i)
    for (int j = 0; j < bn; ++j) p.add_object(a.object_name(i) + "," + b.object_name(j));
  auto oid = [&](int i, int j) { return i * bn + j; };
  for (int m = 0; m < a.num_morphisms(); ++m)
    for (int m2 = 0; m2 < bm; ++m2)
      p.add_morphism(oid(a.src(m), b.src(m2)), oid(a.tgt(m), b.tgt(m2)),
                     a.morphism_name(m) + "," + b.morphism_name(m2));
  auto mid = [&](int m, int m2) { return m * bm + m2; };
  for (int i = 0; i < a.num_objects(); ++i)
    for (int j = 0; j < bn; ++j) p.set_identity(oid(i, j), mid(a.identity(i), b.identity(j)));
  if (a.lazy() || b.lazy() || (long long)a.num_morphisms() * bm > FinCat::kDenseMor) {
    auto pa = std::make_shared<FinCat>(a);
    auto pb = std::make_shared<FinCat>(b);
    p.set_lazy_compose([pa, pb, bm](int g, int f) {
      int ga = g / bm, gb = g % bm, fa = f / bm, fb = f % bm;
      return pa->compose(ga, fa) * bm + pb->compose(gb, fb);
    });
    return p;
  }
  for (int x = 0; x < a.num_objects(); ++x)
    for (int f : a.in_of(x))
      for (int g : a.out_of(x))
        for (int y = 0; y < b.num_objects(); ++y)
          for (int f2 : b.in_of(y))
            for (int g2 : b.out_of(y))
              p.set_compose(mid(g, g2), mid(f, f2), mid(a.compose(g, f), b.compose(g2, f2)));
  p.seal();
  return p;
}

int DeltaCat::find(int a, int b, const std::vector<int>& img) const {
  auto it = index.find({a * (max_n + 1) + b, img});
  assert(it != index.end());
  return it->second;
}

DeltaCat make_delta(int max_n) {
  DeltaCat d;
  d.max_n = max_n;
  FinCat& c = d.cat;
  for (int n = 0; n <= max_n; ++n) c.add_object("[" + std::to_string(n) + "]");
  // enumerate nondecreasing maps a -> b in lexicographic order
  for (int a = 0; a <= max_n; ++a)
    for (int b = 0; b <= max_n; ++b) {
      if (a > 0 && b == 0) continue;
      std::vector<int> img(a, 0);
      while (true) {
        std::string nm = "[" + std::to_string(a) + ">" + std::to_string(b) + ":";
        for (int v : img) nm += std::to_string(v);
        nm += "]";
        int m = c.add_morphism(a, b, nm);
        d.shape.emplace_back(a, b);
        d.images.push_back(img);
        d.index[{a * (max_n + 1) + b, img}] = m;
        // next nondecreasing tuple
        int i = a - 1;
        while (i >= 0 && img[i] == b - 1) --i;
        if (i < 0) break;
        ++img[i];
        for (int j = i + 1; j < a; ++j) img[j] = img[i];
      }
      if (a == 0) continue;  // single empty map already added
    }
  for (int n = 0; n <= max_n; ++n) {
    std::vector<int> idimg(n);
    for (int i = 0; i < n; ++i) idimg[i] = i;
    c.set_identity(n, d.find(n, n, idimg));
  }
  for (int m = 0; m < c.num_morphisms(); ++m)
    for (int m2 = 0; m2 < c.num_morphisms(); ++m2) {
      if (c.tgt(m2) != c.src(m)) continue;
      auto [a, b] = d.shape[m2];
      auto [b2, e] = d.shape[m];
      std::vector<int> img(a);
      for (int i = 0; i < a; ++i) img[i] = d.images[m][d.images[m2][i]];
      c.set_compose(m, m2, d.find(a, e, img));
    }
  c.seal();
  return d;
}

int SliceCat::find_obj(int base_mor) const {
  for (int i = 0; i < (int)obj_mor.size(); ++i)
    if (obj_mor[i] == base_mor) return i;
  return -1;
}

namespace {

SliceCat slice_impl(const CatPtr& cp, int obj, bool co) {
  const FinCat& c = *cp;
  SliceCat s;
  FinCat sc;
  const auto& structural = co ? c.out_of(obj) : c.in_of(obj);
  for (int m : structural) {
    sc.add_object(c.morphism_name(m));
    s.obj_mor.push_back(m);
  }
  int n = (int)s.obj_mor.size();
  // slice morphism (x, phi) -> (y, psi): f : x -> y with psi . f = phi;
  // coslice morphism (phi: obj -> x) -> (psi: obj -> y): f with f . phi = psi
  std::vector<std::vector<std::vector<int>>> mor(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int phi = s.obj_mor[i], psi = s.obj_mor[j];
      int x = co ? c.tgt(phi) : c.src(phi);
      int y = co ? c.tgt(psi) : c.src(psi);
      for (int f : c.hom(x, y)) {
        bool fits = co ? (c.compose(f, phi) == psi) : (c.compose(psi, f) == phi);
        if (fits) {
          int sm = sc.add_morphism(i, j, c.morphism_name(f));
          s.mor_base.push_back(f);
          mor[i][j].push_back(sm);
        }
      }
    }
  for (int i = 0; i < n; ++i) {
    int x = co ? c.tgt(s.obj_mor[i]) : c.src(s.obj_mor[i]);
    for (int sm : mor[i][i])
      if (s.mor_base[sm] == c.identity(x)) sc.set_identity(i, sm);
  }
  auto find_mor = [&](int i, int j, int base) {
    for (int sm : mor[i][j])
      if (s.mor_base[sm] == base) return sm;
    assert(false);
    return -1;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int f : mor[i][j])
          for (int g : mor[j][k])
            sc.set_compose(g, f, find_mor(i, k, c.compose(s.mor_base[g], s.mor_base[f])));
  sc.seal();
  s.cat = wrap_cat(std::move(sc));
  s.forget.dom = s.cat;
  s.forget.cod = cp;
  for (int i = 0; i < n; ++i)
    s.forget.obj_map.push_back(co ? c.tgt(s.obj_mor[i]) : c.src(s.obj_mor[i]));
  s.forget.mor_map = s.mor_base;
  return s;
}

}  // namespace

SliceCat slice_cat(const CatPtr& c, int obj) { return slice_impl(c, obj, false); }
SliceCat coslice_cat(const CatPtr& c, int obj) { return slice_impl(c, obj, true); }

bool CatValuedFunctor::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const FinCat& b = *base;
  if ((int)fiber.size() != b.num_objects() || (int)act_obj.size() != b.num_morphisms())
    return fail("fiber or transition data missing");
  auto from = [&](int m) { return contravariant ? b.tgt(m) : b.src(m); };
  auto to = [&](int m) { return contravariant ? b.src(m) : b.tgt(m); };
  for (int m = 0; m < b.num_morphisms(); ++m) {
    Functor t{fiber[from(m)], fiber[to(m)], act_obj[m], act_mor[m]};
    std::string w;
    if (!t.validate(&w)) return fail("transition at morphism " + std::to_string(m) + ": " + w);
  }
  for (int o = 0; o < b.num_objects(); ++o) {
    int idm = b.identity(o);
    Functor t{fiber[o], fiber[o], act_obj[idm], act_mor[idm]};
    Functor id = identity_functor(fiber[o]);
    if (t.obj_map != id.obj_map || t.mor_map != id.mor_map)
      return fail("transition at an identity is not the identity functor");
  }
  // composite pairs: strict equality, or the declared comparison isomorphism
  for (int x = 0; x < b.num_objects(); ++x)
    for (int f : b.in_of(x))
      for (int g : b.out_of(x)) {
        int gf = b.compose(g, f);
        int lead = contravariant ? f : g;   // applied second
        int trail = contravariant ? g : f;  // applied first
        const FinCat& fc = *fiber[to(gf)];
        auto it = compat.find({g, f});
        int n = fiber[from(gf)]->num_objects();
        for (int s = 0; s < n; ++s) {
          int two = act_obj[lead][act_obj[trail][s]];
          int one = act_obj[gf][s];
          if (it == compat.end()) {
            if (two != one) return fail("transitions fail strict composition");
          } else {
            int gam = it->second[s];
            if (fc.src(gam) != two || fc.tgt(gam) != one)
              return fail("comparison morphism has wrong endpoints");
            bool iso = false;
            for (int inv : fc.hom(one, two))
              if (fc.compose(inv, gam) == fc.identity(two) &&
                  fc.compose(gam, inv) == fc.identity(one))
                iso = true;
            if (!iso) return fail("comparison morphism is not invertible");
          }
        }
        if (it != compat.end()) {
          // naturality of the comparison in the fiber variable
          const FinCat& src_fib = *fiber[from(gf)];
          for (int m = 0; m < src_fib.num_morphisms(); ++m) {
            int a = src_fib.src(m), bb = src_fib.tgt(m);
            int lhs = fc.compose(it->second[bb], act_mor[lead][act_mor[trail][m]]);
            int rhs = fc.compose(act_mor[gf][m], it->second[a]);
            if (lhs != rhs) return fail("comparison isomorphism is not natural");
          }
        }
      }
  if (!compat.empty()) {
    // coherence on composable triples: both regroupings agree
    auto gam = [&](int g, int f, int s) -> int {
      auto it2 = compat.find({g, f});
      if (it2 != compat.end()) return it2->second[s];
      int gf0 = b.compose(g, f);
      return fiber[to(gf0)]->identity(act_obj[gf0][s]);
    };
    for (int x = 0; x < b.num_objects(); ++x)
      for (int f : b.in_of(x))
        for (int g : b.out_of(x))
          for (int h : b.out_of(b.tgt(g))) {
            int gf = b.compose(g, f), hg = b.compose(h, g);
            int hgf = b.compose(h, gf);
            const FinCat& fc = *fiber[to(hgf)];
            int n = fiber[from(hgf)]->num_objects();
            for (int s = 0; s < n; ++s) {
              int w1, w2;
              if (!contravariant) {
                w1 = fc.compose(gam(h, gf, s), act_mor[h][gam(g, f, s)]);
                w2 = fc.compose(gam(hg, f, s), gam(h, g, act_obj[f][s]));
              } else {
                w1 = fc.compose(gam(hg, f, s), act_mor[f][gam(h, g, s)]);
                w2 = fc.compose(gam(h, gf, s), gam(g, f, act_obj[h][s]));
              }
              if (w1 != w2) return fail("comparison isomorphisms fail triple coherence");
            }
          }
  }
  return true;
}

int TotalCat::find_obj(int c, int s) const {
  for (int i = 0; i < (int)obj_pair.size(); ++i)
    if (obj_pair[i] == std::make_pair(c, s)) return i;
  return -1;
}

TotalCat grothendieck_total(const CatValuedFunctor& fv) {
  const FinCat& b = *fv.base;
  TotalCat t;
  FinCat tc;
  for (int c = 0; c < b.num_objects(); ++c)
    for (int s = 0; s < fv.fiber[c]->num_objects(); ++s) {
      tc.add_object(b.object_name(c) + "|" + fv.fiber[c]->object_name(s));
      t.obj_pair.emplace_back(c, s);
    }
  auto oid = [&](int c, int s) {
    for (int i = 0; i < (int)t.obj_pair.size(); ++i)
      if (t.obj_pair[i] == std::make_pair(c, s)) return i;
    assert(false);
    return -1;
  };
  // covariant: (f : c -> c', alpha : F(f)(s) -> s')
  // contravariant: (f : c -> c', alpha : s -> F(f)(s')), alpha in fiber(c).
  // alpha alone does not pin down the far endpoint when a transition is not
  // injective, so the key carries both total endpoints.
  std::map<std::tuple<int, int, int, int>, int> mindex;
  for (int f = 0; f < b.num_morphisms(); ++f) {
    int c = b.src(f), c2 = b.tgt(f);
    const FinCat& fib_c = *fv.fiber[c];
    const FinCat& fib_c2 = *fv.fiber[c2];
    if (!fv.contravariant) {
      for (int s = 0; s < fib_c.num_objects(); ++s)
        for (int al : fib_c2.out_of(fv.act_obj[f][s])) {
          int src = oid(c, s), tgt = oid(c2, fib_c2.tgt(al));
          int m = tc.add_morphism(src, tgt, b.morphism_name(f) + "|" + fib_c2.morphism_name(al));
          t.mor_data.emplace_back(f, src, al);
          mindex[{f, src, tgt, al}] = m;
        }
    } else {
      for (int s2 = 0; s2 < fib_c2.num_objects(); ++s2)
        for (int al : fib_c.in_of(fv.act_obj[f][s2])) {
          int src = oid(c, fib_c.src(al)), tgt = oid(c2, s2);
          int m = tc.add_morphism(src, tgt, b.morphism_name(f) + "|" + fib_c.morphism_name(al));
          t.mor_data.emplace_back(f, src, al);
          mindex[{f, src, tgt, al}] = m;
        }
    }
  }
  for (int i = 0; i < (int)t.obj_pair.size(); ++i) {
    auto [c, s] = t.obj_pair[i];
    tc.set_identity(i, mindex.at({b.identity(c), i, i, fv.fiber[c]->identity(s)}));
  }
  auto gamma = [&](int g, int f, int s) -> int {
    auto it = fv.compat.find({g, f});
    if (it != fv.compat.end()) return it->second[s];
    int gf = b.compose(g, f);
    int from = fv.contravariant ? b.src(gf) : b.tgt(gf);
    return fv.fiber[from]->identity(fv.act_obj[gf][s]);
  };
  int nm = tc.num_morphisms();
  for (int m1 = 0; m1 < nm; ++m1)
    for (int m2 = 0; m2 < nm; ++m2) {
      if (tc.tgt(m2) != tc.src(m1)) continue;
      auto [g, gsrc, be] = t.mor_data[m1];
      auto [f, fsrc, al] = t.mor_data[m2];
      int gf = b.compose(g, f);
      int comp_al;
      if (!fv.contravariant) {
        // beta . F(g)(alpha) . gamma^{-1}_{g,f,s}
        auto [c, s] = t.obj_pair[fsrc];
        const FinCat& fc = *fv.fiber[b.tgt(g)];
        int gam = gamma(g, f, s);
        int two = fc.src(gam), one = fc.tgt(gam);
        int gaminv = -1;
        for (int inv : fc.hom(one, two))
          if (fc.compose(inv, gam) == fc.identity(two) && fc.compose(gam, inv) == fc.identity(one))
            gaminv = inv;
        assert(gaminv >= 0);
        comp_al = fc.compose(be, fc.compose(fv.act_mor[g][al], gaminv));
      } else {
        // gamma_{g,f,s''} . F(f)(beta) . alpha
        auto [cg, stgt] = t.obj_pair[tc.tgt(m1)];
        const FinCat& fc = *fv.fiber[b.src(f)];
        int gam = gamma(g, f, stgt);
        comp_al = fc.compose(gam, fc.compose(fv.act_mor[f][be], al));
      }
      tc.set_compose(m1, m2, mindex.at({gf, tc.src(m2), tc.tgt(m1), comp_al}));
    }
  tc.seal();
  t.cat = wrap_cat(std::move(tc));
  t.proj.dom = t.cat;
  t.proj.cod = fv.base;
  for (auto [c, s] : t.obj_pair) t.proj.obj_map.push_back(c);
  for (auto& [f, src, al] : t.mor_data) t.proj.mor_map.push_back(f);
  return t;
}

}  // namespace cathom
