#include "cathom/coeff.hpp"

#include <stdexcept>
#include <string>

namespace cathom {

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

bool CoeffFunctor::validate(std::string* why) const {
  if (!base) return fail(why, "no base category");
  const int no = base->num_objects();
  const int nm = base->num_morphisms();
  if ((int)rank.size() != no) return fail(why, "rank table has wrong length");
  if ((int)action.size() != nm) return fail(why, "action table has wrong length");
  for (int c = 0; c < no; ++c)
    if (rank[c] < 0) return fail(why, "negative rank at object " + std::to_string(c));
  for (int m = 0; m < nm; ++m) {
    if (action[m].rows() != rank[to_obj(m)] || action[m].cols() != rank[from_obj(m)])
      return fail(why, "action matrix shape mismatch at morphism " + std::to_string(m));
  }
  for (int c = 0; c < no; ++c) {
    if (!(action[base->identity(c)] == IntMatrix::identity((int)rank[c])))
      return fail(why, "identity does not act as identity at object " + std::to_string(c));
  }
  // functoriality over every composable pair
  for (int b = 0; b < no; ++b) {
    for (int f : base->in_of(b)) {
      for (int g : base->out_of(b)) {
        const int gf = base->compose(g, f);
        const IntMatrix lhs = contravariant ? action[f].mul(action[g])
                                            : action[g].mul(action[f]);
        if (!(lhs == action[gf]))
          return fail(why, "action not functorial on pair (" + std::to_string(g) + "," +
                               std::to_string(f) + ")");
      }
    }
  }
  return true;
}

CoeffFunctor constant_coeff(const CatPtr& base, long rank, bool contravariant) {
  CoeffFunctor e;
  e.base = base;
  e.contravariant = contravariant;
  e.rank.assign(base->num_objects(), rank);
  e.action.reserve(base->num_morphisms());
  for (int m = 0; m < base->num_morphisms(); ++m)
    e.action.push_back(IntMatrix::identity((int)rank));
  return e;
}

CoeffFunctor representable_coeff(const CatPtr& base, int c, bool contravariant) {
  CoeffFunctor e;
  e.base = base;
  e.contravariant = contravariant;
  const int no = base->num_objects();
  e.rank.resize(no);
  for (int x = 0; x < no; ++x)
    e.rank[x] = (long)(contravariant ? base->hom(x, c) : base->hom(c, x)).size();
  e.action.reserve(base->num_morphisms());
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const int a = base->src(m), b = base->tgt(m);
    IntMatrix mat((int)e.rank[contravariant ? a : b], (int)e.rank[contravariant ? b : a]);
    if (contravariant) {
      // hom(b, c) -> hom(a, c), u -> u.m
      const auto dom = base->hom(b, c);
      const auto cod = base->hom(a, c);
      for (int j = 0; j < (int)dom.size(); ++j) {
        const int v = base->compose(dom[j], m);
        int i = 0;
        while (cod[i] != v) ++i;
        mat.set(i, j, 1);
      }
    } else {
      // hom(c, a) -> hom(c, b), u -> m.u
      const auto dom = base->hom(c, a);
      const auto cod = base->hom(c, b);
      for (int j = 0; j < (int)dom.size(); ++j) {
        const int v = base->compose(m, dom[j]);
        int i = 0;
        while (cod[i] != v) ++i;
        mat.set(i, j, 1);
      }
    }
    e.action.push_back(std::move(mat));
  }
  return e;
}

CoeffFunctor restrict_coeff(const CoeffFunctor& e, const Functor& p) {
  require(p.cod == e.base, "restrict_coeff: functor codomain is not the coefficient base");
  CoeffFunctor r;
  r.base = p.dom;
  r.contravariant = e.contravariant;
  r.rank.resize(p.dom->num_objects());
  for (int x = 0; x < p.dom->num_objects(); ++x) r.rank[x] = e.rank[p.obj_map[x]];
  r.action.reserve(p.dom->num_morphisms());
  for (int m = 0; m < p.dom->num_morphisms(); ++m)
    r.action.push_back(e.action[p.mor_map[m]]);
  return r;
}

CoeffFunctor tensor_pointwise(const CoeffFunctor& a, const CoeffFunctor& b) {
  require(a.base == b.base && a.contravariant == b.contravariant,
          "tensor_pointwise: operands disagree on base or variance");
  CoeffFunctor r;
  r.base = a.base;
  r.contravariant = a.contravariant;
  r.rank.resize(a.rank.size());
  for (size_t c = 0; c < a.rank.size(); ++c) r.rank[c] = a.rank[c] * b.rank[c];
  r.action.reserve(a.action.size());
  for (size_t m = 0; m < a.action.size(); ++m)
    r.action.push_back(a.action[m].kron(b.action[m]));
  return r;
}

bool FunctorComplex::validate(std::string* why) const {
  if (terms.empty()) return true;
  const CatPtr& base = terms[0].base;
  if (diffs.size() != terms.size()) return fail(why, "differential table length mismatch");
  for (size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].base != base || terms[k].contravariant != terms[0].contravariant)
      return fail(why, "terms disagree on base or variance");
    std::string sub;
    if (!terms[k].validate(&sub))
      return fail(why, "term " + std::to_string(lo + (int)k) + ": " + sub);
  }
  const int no = base->num_objects();
  for (size_t k = 1; k < terms.size(); ++k) {
    if ((int)diffs[k].size() != no)
      return fail(why, "differential " + std::to_string(lo + (int)k) + " has wrong length");
    for (int c = 0; c < no; ++c)
      if (diffs[k][c].rows() != terms[k - 1].rank[c] || diffs[k][c].cols() != terms[k].rank[c])
        return fail(why, "differential shape mismatch at degree " + std::to_string(lo + (int)k) +
                             " object " + std::to_string(c));
    // naturality: d . action == action . d on every morphism
    for (int m = 0; m < base->num_morphisms(); ++m) {
      const int a = terms[k].from_obj(m), b = terms[k].to_obj(m);
      const IntMatrix lhs = diffs[k][b].mul(terms[k].action[m]);
      const IntMatrix rhs = terms[k - 1].action[m].mul(diffs[k][a]);
      if (!(lhs == rhs))
        return fail(why, "differential at degree " + std::to_string(lo + (int)k) +
                             " not natural on morphism " + std::to_string(m));
    }
  }
  for (size_t k = 2; k < terms.size(); ++k)
    for (int c = 0; c < no; ++c)
      if (!diffs[k - 1][c].mul(diffs[k][c]).is_zero())
        return fail(why, "d.d != 0 at degree " + std::to_string(lo + (int)k) + " object " +
                             std::to_string(c));
  return true;
}

FunctorComplex complex_of(CoeffFunctor e) {
  FunctorComplex fc;
  fc.lo = 0;
  fc.terms.push_back(std::move(e));
  fc.diffs.emplace_back();
  return fc;
}

FgAbGroup tensor_over_cat(const CoeffFunctor& e, const CoeffFunctor& t) {
  require(e.base == t.base, "tensor_over_cat: operands live over different base categories");
  require(!e.contravariant && t.contravariant,
          "tensor_over_cat: left operand must be covariant, right contravariant");
  const CatPtr& base = e.base;
  const int no = base->num_objects();
  std::vector<long> offset(no + 1, 0);
  for (int c = 0; c < no; ++c) offset[c + 1] = offset[c] + e.rank[c] * t.rank[c];
  const long ambient = offset[no];

  long nrel = 0;
  for (int m = 0; m < base->num_morphisms(); ++m)
    if (!base->is_identity(m)) nrel += e.rank[base->src(m)] * t.rank[base->tgt(m)];

  IntMatrix rel((int)ambient, (int)nrel);
  long col = 0;
  for (int m = 0; m < base->num_morphisms(); ++m) {
    if (base->is_identity(m)) continue;
    const int a = base->src(m), b = base->tgt(m);
    const IntMatrix eft = e.action[m].transpose();  // row i holds E(m) column i
    const IntMatrix tft = t.action[m].transpose();
    for (long i = 0; i < e.rank[a]; ++i)
      for (long j = 0; j < t.rank[b]; ++j) {
        // E(m)e_i (x) t_j at b  minus  e_i (x) T(m)t_j at a
        eft.for_row((int)i, [&](int k, const Int& v) {
          rel.add_at((int)(offset[b] + k * t.rank[b] + j), (int)col, v);
        });
        tft.for_row((int)j, [&](int l, const Int& v) {
          rel.add_at((int)(offset[a] + i * t.rank[a] + l), (int)col, -v);
        });
        ++col;
      }
  }
  return coker_group(rel, ambient);
}

FunctorComplex hom_coeff(const CoeffFunctor& t, const FgAbGroup& m) {
  require(t.contravariant, "hom_coeff: the module argument must be contravariant");
  const CatPtr& base = t.base;
  const long l = m.free_rank + (long)m.torsion.size();
  const long s = (long)m.torsion.size();

  FunctorComplex fc;
  fc.lo = 0;

  auto hom_term = [&](long copies) {
    CoeffFunctor h;
    h.base = base;
    h.contravariant = false;  // precomposition flips the variance
    h.rank.resize(base->num_objects());
    for (int c = 0; c < base->num_objects(); ++c) h.rank[c] = copies * t.rank[c];
    h.action.reserve(base->num_morphisms());
    for (int mo = 0; mo < base->num_morphisms(); ++mo)
      h.action.push_back(IntMatrix::identity((int)copies).kron(t.action[mo].transpose()));
    return h;
  };

  fc.terms.push_back(hom_term(l));
  fc.diffs.emplace_back();
  if (s > 0) {
    // presentation Z^s -> Z^l, generator i -> torsion[i] * e_{free+i}
    IntMatrix pres((int)l, (int)s);
    for (long i = 0; i < s; ++i) pres.set((int)(m.free_rank + i), (int)i, m.torsion[i]);
    fc.terms.push_back(hom_term(s));
    std::vector<IntMatrix> d;
    d.reserve(base->num_objects());
    for (int c = 0; c < base->num_objects(); ++c)
      d.push_back(pres.kron(IntMatrix::identity((int)t.rank[c])));
    fc.diffs.push_back(std::move(d));
  }
  return fc;
}

}  // namespace cathom
