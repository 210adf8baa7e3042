#include "cathom/twocat.hpp"

#include <stdexcept>

#include "cathom/classify.hpp"

namespace cathom {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

bool Fin2Cat::strict() const {
  // identity coherence components force the bracketing equations on objects
  int n = num_objects;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const auto& t = assoc[((a * n + b) * n + c) * n + d];
          const FinCat& h = *homc(a, d);
          for (const auto& plane : t)
            for (const auto& row : plane)
              for (int m : row)
                if (!h.is_identity(m)) return false;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const FinCat& h = *homc(a, b);
      for (int m : lunit[a * n + b])
        if (!h.is_identity(m)) return false;
      for (int m : runit[a * n + b])
        if (!h.is_identity(m)) return false;
    }
  return true;
}

bool Fin2Cat::groupoid_enriched() const {
  for (int a = 0; a < num_objects; ++a)
    for (int b = 0; b < num_objects; ++b) {
      const FinCat& h = *homc(a, b);
      for (int m = 0; m < h.num_morphisms(); ++m)
        if (!is_isomorphism_in(h, m)) return false;
    }
  return true;
}

bool Fin2Cat::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int n = num_objects;
  if (n < 0) return fail("negative object count");
  if ((int)hom.size() != n * n || (int)unit.size() != n) return fail("hom or unit data missing");
  if ((int)comp.size() != n * n * n) return fail("composition data missing");
  if ((int)assoc.size() != n * n * n * n) return fail("associator data missing");
  if ((int)lunit.size() != n * n || (int)runit.size() != n * n)
    return fail("unitor data missing");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!hom[a * n + b]) return fail("null hom category");
      std::string w;
      if (!hom[a * n + b]->validate(&w))
        return fail("hom(" + std::to_string(a) + "," + std::to_string(b) + "): " + w);
    }
  for (int a = 0; a < n; ++a)
    if (unit[a] < 0 || unit[a] >= homc(a, a)->num_objects())
      return fail("unit object out of range");

  // composition functors
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const CompTable& t = comp_at(a, b, c);
        const FinCat& ab = *homc(a, b);
        const FinCat& bc = *homc(b, c);
        const FinCat& ac = *homc(a, c);
        if ((int)t.obj.size() != ab.num_objects() || (int)t.mor.size() != ab.num_morphisms())
          return fail("composition table has wrong shape");
        for (const auto& row : t.obj) {
          if ((int)row.size() != bc.num_objects()) return fail("composition table has wrong shape");
          for (int x : row)
            if (x < 0 || x >= ac.num_objects()) return fail("composite object out of range");
        }
        for (int u = 0; u < ab.num_morphisms(); ++u) {
          if ((int)t.mor[u].size() != bc.num_morphisms())
            return fail("composition table has wrong shape");
          for (int v = 0; v < bc.num_morphisms(); ++v) {
            int m = t.mor[u][v];
            if (m < 0 || m >= ac.num_morphisms()) return fail("composite morphism out of range");
            if (ac.src(m) != t.obj[ab.src(u)][bc.src(v)] ||
                ac.tgt(m) != t.obj[ab.tgt(u)][bc.tgt(v)])
              return fail("composite morphism has wrong endpoints");
          }
        }
        for (int x = 0; x < ab.num_objects(); ++x)
          for (int y = 0; y < bc.num_objects(); ++y)
            if (t.mor[ab.identity(x)][bc.identity(y)] != ac.identity(t.obj[x][y]))
              return fail("composition functor drops identities");
        for (int u = 0; u < ab.num_morphisms(); ++u)
          for (int u2 : ab.out_of(ab.tgt(u)))
            for (int v = 0; v < bc.num_morphisms(); ++v)
              for (int v2 : bc.out_of(bc.tgt(v)))
                if (t.mor[ab.compose(u2, u)][bc.compose(v2, v)] !=
                    ac.compose(t.mor[u2][v2], t.mor[u][v]))
                  return fail("composition functor is not functorial");
      }

  auto is_iso = [&](const FinCat& h, int m) { return is_isomorphism_in(h, m); };

  // associators: endpoints, invertibility, naturality, pentagon
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const auto& t = assoc[((a * n + b) * n + c) * n + d];
          const FinCat& ab = *homc(a, b);
          const FinCat& bc = *homc(b, c);
          const FinCat& cd = *homc(c, d);
          const FinCat& ad = *homc(a, d);
          if ((int)t.size() != ab.num_objects()) return fail("associator table has wrong shape");
          for (int x = 0; x < ab.num_objects(); ++x) {
            if ((int)t[x].size() != bc.num_objects())
              return fail("associator table has wrong shape");
            for (int y = 0; y < bc.num_objects(); ++y) {
              if ((int)t[x][y].size() != cd.num_objects())
                return fail("associator table has wrong shape");
              for (int z = 0; z < cd.num_objects(); ++z) {
                int al = t[x][y][z];
                int lhs = m_obj(a, c, d, m_obj(a, b, c, x, y), z);
                int rhs = m_obj(a, b, d, x, m_obj(b, c, d, y, z));
                if (ad.src(al) != lhs || ad.tgt(al) != rhs)
                  return fail("associator component has wrong endpoints");
                if (!is_iso(ad, al)) return fail("associator component is not invertible");
              }
            }
          }
          for (int u = 0; u < ab.num_morphisms(); ++u)
            for (int v = 0; v < bc.num_morphisms(); ++v)
              for (int w = 0; w < cd.num_morphisms(); ++w) {
                int left = m_mor(a, b, d, u, m_mor(b, c, d, v, w));
                int right = m_mor(a, c, d, m_mor(a, b, c, u, v), w);
                int top = t[ab.src(u)][bc.src(v)][cd.src(w)];
                int bot = t[ab.tgt(u)][bc.tgt(v)][cd.tgt(w)];
                if (ad.compose(left, top) != ad.compose(bot, right))
                  return fail("associator is not natural");
              }
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e) {
            const FinCat& ae = *homc(a, e);
            for (int w = 0; w < homc(a, b)->num_objects(); ++w)
              for (int x = 0; x < homc(b, c)->num_objects(); ++x)
                for (int y = 0; y < homc(c, d)->num_objects(); ++y)
                  for (int z = 0; z < homc(d, e)->num_objects(); ++z) {
                    int yz = m_obj(c, d, e, y, z);
                    // short side: ((wx)y)z -> (wx)(yz) -> w(x(yz))
                    int s1 = alpha(a, c, d, e, m_obj(a, b, c, w, x), y, z);
                    int s2 = alpha(a, b, c, e, w, x, yz);
                    // long side: ((wx)y)z -> (w(xy))z -> w((xy)z) -> w(x(yz))
                    int t1 = m_mor(a, d, e, alpha(a, b, c, d, w, x, y),
                                   homc(d, e)->identity(z));
                    int t2 = alpha(a, b, d, e, w, m_obj(b, c, d, x, y), z);
                    int t3 = m_mor(a, b, e, homc(a, b)->identity(w),
                                   alpha(b, c, d, e, x, y, z));
                    if (ae.compose(s2, s1) != ae.compose(t3, ae.compose(t2, t1)))
                      return fail("pentagon identity fails");
                  }
          }

  // unitors: endpoints, invertibility, naturality, triangle
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const FinCat& ab = *homc(a, b);
      const auto& lu = lunit[a * n + b];
      const auto& ru = runit[a * n + b];
      if ((int)lu.size() != ab.num_objects() || (int)ru.size() != ab.num_objects())
        return fail("unitor table has wrong shape");
      for (int x = 0; x < ab.num_objects(); ++x) {
        if (ab.src(lu[x]) != m_obj(a, a, b, unit[a], x) || ab.tgt(lu[x]) != x)
          return fail("left unitor has wrong endpoints");
        if (ab.src(ru[x]) != m_obj(a, b, b, x, unit[b]) || ab.tgt(ru[x]) != x)
          return fail("right unitor has wrong endpoints");
        if (!is_iso(ab, lu[x]) || !is_iso(ab, ru[x]))
          return fail("unitor component is not invertible");
      }
      for (int u = 0; u < ab.num_morphisms(); ++u) {
        int lw = m_mor(a, a, b, homc(a, a)->identity(unit[a]), u);
        if (ab.compose(lu[ab.tgt(u)], lw) != ab.compose(u, lu[ab.src(u)]))
          return fail("left unitor is not natural");
        int rw = m_mor(a, b, b, u, homc(b, b)->identity(unit[b]));
        if (ab.compose(ru[ab.tgt(u)], rw) != ab.compose(u, ru[ab.src(u)]))
          return fail("right unitor is not natural");
      }
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const FinCat& ac = *homc(a, c);
        for (int x = 0; x < homc(a, b)->num_objects(); ++x)
          for (int y = 0; y < homc(b, c)->num_objects(); ++y) {
            int viaa = alpha(a, b, b, c, x, unit[b], y);
            int lhs = ac.compose(m_mor(a, b, c, homc(a, b)->identity(x), lam(b, c, y)), viaa);
            int rhs = m_mor(a, b, c, rho(a, b, x), homc(b, c)->identity(y));
            if (lhs != rhs) return fail("triangle identity fails");
          }
      }
  return true;
}

Fin2Cat two_cat_from_cat(const CatPtr& c) {
  require(c != nullptr, "null category");
  int n = c->num_objects();
  Fin2Cat t;
  t.num_objects = n;
  t.hom.resize(n * n);
  t.unit.resize(n);
  // hom(a, b): discrete category on the hom set, objects in hom() order
  std::vector<std::vector<std::vector<int>>> homset(n, std::vector<std::vector<int>>(n));
  std::vector<int> pos(c->num_morphisms(), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      homset[a][b] = c->hom(a, b);
      FinCat h;
      for (int m : homset[a][b]) {
        int o = h.add_object(c->morphism_name(m));
        pos[m] = o;
        int i = h.add_morphism(o, o);
        h.set_identity(o, i);
        h.set_compose(i, i, i);
      }
      t.hom[a * n + b] = wrap_cat(std::move(h));
    }
  for (int a = 0; a < n; ++a) t.unit[a] = pos[c->identity(a)];
  t.comp.resize(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        auto& tab = t.comp[(a * n + b) * n + cc];
        int nx = (int)homset[a][b].size(), ny = (int)homset[b][cc].size();
        tab.obj.assign(nx, std::vector<int>(ny));
        for (int x = 0; x < nx; ++x)
          for (int y = 0; y < ny; ++y)
            tab.obj[x][y] = pos[c->compose(homset[b][cc][y], homset[a][b][x])];
        tab.mor = tab.obj;  // discrete: morphism indices track object indices
      }
  t.assoc.resize(n * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          auto& tab = t.assoc[((a * n + b) * n + cc) * n + d];
          const FinCat& ad = *t.homc(a, d);
          tab.resize(homset[a][b].size());
          for (int x = 0; x < (int)homset[a][b].size(); ++x) {
            tab[x].resize(homset[b][cc].size());
            for (int y = 0; y < (int)homset[b][cc].size(); ++y) {
              tab[x][y].resize(homset[cc][d].size());
              for (int z = 0; z < (int)homset[cc][d].size(); ++z)
                tab[x][y][z] =
                    ad.identity(t.m_obj(a, cc, d, t.m_obj(a, b, cc, x, y), z));
            }
          }
        }
  t.lunit.resize(n * n);
  t.runit.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const FinCat& ab = *t.homc(a, b);
      t.lunit[a * n + b].resize(ab.num_objects());
      t.runit[a * n + b].resize(ab.num_objects());
      for (int x = 0; x < ab.num_objects(); ++x) {
        t.lunit[a * n + b][x] = ab.identity(x);
        t.runit[a * n + b][x] = ab.identity(x);
      }
    }
  return t;
}

Fin2Cat two_group_cat(const std::vector<std::vector<int>>& pi1, int e1,
                      const std::vector<std::vector<int>>& pi2, int e2,
                      std::function<int(int, int, int)> assoc3) {
  int n1 = (int)pi1.size(), n2 = (int)pi2.size();
  require(n1 > 0 && n2 > 0, "empty group table");
  require(e1 >= 0 && e1 < n1 && e2 >= 0 && e2 < n2, "unit out of range");
  Fin2Cat t;
  t.num_objects = 1;
  FinCat h;
  for (int g = 0; g < n1; ++g) h.add_object();
  // morphism (g, s) has index g * n2 + s
  for (int g = 0; g < n1; ++g)
    for (int s = 0; s < n2; ++s) h.add_morphism(g, g);
  for (int g = 0; g < n1; ++g) h.set_identity(g, g * n2 + e2);
  for (int g = 0; g < n1; ++g)
    for (int s = 0; s < n2; ++s)
      for (int s2 = 0; s2 < n2; ++s2)
        h.set_compose(g * n2 + s2, g * n2 + s, g * n2 + pi2[s2][s]);
  t.hom = {wrap_cat(std::move(h))};
  t.unit = {e1};
  Fin2Cat::CompTable tab;
  tab.obj.assign(n1, std::vector<int>(n1));
  for (int g = 0; g < n1; ++g)
    for (int k = 0; k < n1; ++k) tab.obj[g][k] = pi1[g][k];
  tab.mor.assign(n1 * n2, std::vector<int>(n1 * n2));
  for (int g = 0; g < n1; ++g)
    for (int s = 0; s < n2; ++s)
      for (int k = 0; k < n1; ++k)
        for (int r = 0; r < n2; ++r)
          tab.mor[g * n2 + s][k * n2 + r] = pi1[g][k] * n2 + pi2[s][r];
  t.comp = {std::move(tab)};
  auto a3 = [&](int g, int k, int l) { return assoc3 ? assoc3(g, k, l) : e2; };
  t.assoc.resize(1);
  t.assoc[0].resize(n1);
  for (int g = 0; g < n1; ++g) {
    t.assoc[0][g].resize(n1);
    for (int k = 0; k < n1; ++k) {
      t.assoc[0][g][k].resize(n1);
      for (int l = 0; l < n1; ++l)
        t.assoc[0][g][k][l] = pi1[pi1[g][k]][l] * n2 + a3(g, k, l);
    }
  }
  t.lunit = {std::vector<int>(n1)};
  t.runit = {std::vector<int>(n1)};
  for (int g = 0; g < n1; ++g) {
    t.lunit[0][g] = g * n2 + e2;
    t.runit[0][g] = g * n2 + e2;
  }
  return t;
}

}  // namespace cathom
