#include "cathom/kan.hpp"

#include "bar_detail.hpp"
#include "cathom/snf.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace cathom {

using bar_detail::BarDegrees;
using bar_detail::bar_chain_diff;
using bar_detail::bar_offsets;
using bar_detail::chain_loop;

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// comma category (p / c'): objects are pairs (x, phi: p(x) -> c'), morphisms
// (x,phi) -> (y,psi) are f: x -> y with psi . p(f) = phi.  A morphism is an
// identity exactly when its underlying f is one, so pulled-back coefficients
// see the same normalized chains.
struct Comma {
  CatPtr cat;
  Functor q;  // forgetful functor into dom(p)
  std::vector<std::pair<int, int>> objs;
  std::map<std::pair<int, int>, int> obj_index;
  std::map<std::tuple<int, int, int>, int> mor_index;  // (underlying f, src, tgt)
  std::vector<int> mor_f;
};

Comma build_comma(const Functor& p, int cp) {
  const CatPtr& dom = p.dom;
  const CatPtr& cod = p.cod;
  Comma cm;
  FinCat cc;
  for (int x = 0; x < dom->num_objects(); ++x)
    for (int phi : cod->hom(p.obj_map[x], cp)) {
      cm.obj_index.emplace(std::pair{x, phi}, cc.add_object());
      cm.objs.emplace_back(x, phi);
    }
  const int no = (int)cm.objs.size();
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      const auto [x, phi] = cm.objs[i];
      const auto [y, psi] = cm.objs[j];
      for (int f : dom->hom(x, y))
        if (cod->compose(psi, p.mor_map[f]) == phi) {
          const int m = cc.add_morphism(i, j);
          cm.mor_index.emplace(std::tuple{f, i, j}, m);
          cm.mor_f.push_back(f);
        }
    }
  for (int i = 0; i < no; ++i)
    cc.set_identity(i, cm.mor_index.at({dom->identity(cm.objs[i].first), i, i}));
  for (int m1 = 0; m1 < cc.num_morphisms(); ++m1)
    for (int m2 : cc.out_of(cc.tgt(m1))) {
      const int f = dom->compose(cm.mor_f[m2], cm.mor_f[m1]);
      cc.set_compose(m2, m1, cm.mor_index.at({f, cc.src(m1), cc.tgt(m2)}));
    }
  cm.cat = wrap_cat(std::move(cc));
  cm.q.dom = cm.cat;
  cm.q.cod = dom;
  cm.q.obj_map.reserve(no);
  for (const auto& [x, phi] : cm.objs) cm.q.obj_map.push_back(x);
  cm.q.mor_map = cm.mor_f;
  return cm;
}

// the comma-category bar construction, assembled into a functor complex on
// cod(p) with post-composition transitions
FunctorComplex comma_complex(const Functor& p, const CoeffFunctor& e, const CoeffFunctor& t,
                             int max_deg) {
  const CatPtr& cod = p.cod;
  const int nc = cod->num_objects();

  std::vector<Comma> commas;
  commas.reserve(nc);
  std::vector<CoeffFunctor> eq, tq;
  std::vector<BarDegrees> bars;
  std::vector<std::vector<std::vector<long>>> off(nc);
  std::vector<std::vector<long>> dim(nc, std::vector<long>(max_deg + 1, 0));
  for (int c = 0; c < nc; ++c) {
    commas.push_back(build_comma(p, c));
    eq.push_back(restrict_coeff(e, commas[c].q));
    tq.push_back(restrict_coeff(t, commas[c].q));
    bars.push_back(BarDegrees::build(commas[c].cat, max_deg));
    off[c].resize(max_deg + 1);
    for (int n = 0; n <= max_deg; ++n)
      off[c][n] = bar_offsets(bars[c], eq[c], tq[c], n, &dim[c][n]);
  }

  FunctorComplex fc;
  fc.lo = 0;
  fc.terms.resize(max_deg + 1);
  fc.diffs.resize(max_deg + 1);
  for (int n = 0; n <= max_deg; ++n) {
    CoeffFunctor& term = fc.terms[n];
    term.base = cod;
    term.contravariant = false;
    term.rank.resize(nc);
    for (int c = 0; c < nc; ++c) term.rank[c] = dim[c][n];
    term.action.resize(cod->num_morphisms());
    for (int psi = 0; psi < cod->num_morphisms(); ++psi) {
      const int ca = cod->src(psi), cb = cod->tgt(psi);
      IntMatrix mat((int)dim[cb][n], (int)dim[ca][n]);
      for (size_t j = 0; j < bars[ca].seqs[n].size(); ++j) {
        long toff;
        if (n == 0) {
          const auto [x, phi] = commas[ca].objs[j];
          toff = off[cb][0][commas[cb].obj_index.at({x, cod->compose(psi, phi)})];
        } else {
          std::vector<int> tseq;
          tseq.reserve(n);
          for (int m : bars[ca].seqs[n][j]) {
            const auto [x, phi] = commas[ca].objs[commas[ca].cat->src(m)];
            const auto [y, chi] = commas[ca].objs[commas[ca].cat->tgt(m)];
            const int si = commas[cb].obj_index.at({x, cod->compose(psi, phi)});
            const int ti = commas[cb].obj_index.at({y, cod->compose(psi, chi)});
            tseq.push_back(commas[cb].mor_index.at({commas[ca].mor_f[m], si, ti}));
          }
          toff = off[cb][n][bars[cb].index[n].at(tseq)];
        }
        const long soff = off[ca][n][j];
        const long blk = off[ca][n][j + 1] - soff;
        for (long b = 0; b < blk; ++b) mat.add_at((int)(toff + b), (int)(soff + b), 1);
      }
      term.action[psi] = std::move(mat);
    }
    if (n >= 1) {
      fc.diffs[n].resize(nc);
      for (int c = 0; c < nc; ++c) {
        IntMatrix d((int)dim[c][n - 1], (int)dim[c][n]);
        chain_loop((long)bars[c].seqs[n].size(), true, d, [&](long j, auto&& sink) {
          bar_chain_diff(commas[c].cat, bars[c], eq[c], tq[c], n, (int)j, off[c][n], 0,
                         off[c][n - 1], 0, sink);
        });
        fc.diffs[n][c] = std::move(d);
      }
    }
  }
  return fc;
}

// degree-0 value of a discrete cofibration: ⊕ over the fiber, transitions
// along the unique lifts (strictly functorial because lifts are unique).
// With t == nullptr the coefficient is E alone, otherwise E (x) T with the
// T-side transported through the inverted lift action.
FunctorComplex discrete_pushforward(const Functor& p, const CoeffFunctor& e,
                                    const CoeffFunctor* t) {
  const CatPtr& dom = p.dom;
  const CatPtr& cod = p.cod;
  const int nc = cod->num_objects();

  auto block_rank = [&](int x) {
    return e.rank[x] * (t ? t->rank[x] : 1);
  };
  std::vector<std::vector<int>> fiber(nc);
  for (int x = 0; x < dom->num_objects(); ++x) fiber[p.obj_map[x]].push_back(x);
  std::vector<long> xoff(dom->num_objects(), 0);
  std::vector<long> ranks(nc, 0);
  for (int c = 0; c < nc; ++c) {
    long o = 0;
    for (int x : fiber[c]) {
      xoff[x] = o;
      o += block_rank(x);
    }
    ranks[c] = o;
  }

  CoeffFunctor term;
  term.base = cod;
  term.contravariant = false;
  term.rank = ranks;
  term.action.reserve(cod->num_morphisms());
  for (int psi = 0; psi < cod->num_morphisms(); ++psi) {
    const int ca = cod->src(psi), cb = cod->tgt(psi);
    IntMatrix mat((int)ranks[cb], (int)ranks[ca]);
    for (int x : fiber[ca]) {
      int lift = -1;
      for (int l : dom->out_of(x))
        if (p.mor_map[l] == psi) {
          lift = l;
          break;
        }
      require(lift >= 0, "pushforward: missing lift in a discrete cofibration");
      IntMatrix blk = e.action[lift];
      if (t) {
        const IntMatrix& a = t->action[lift];  // T(tgt lift) -> T(x)
        const auto inv = solve(a, IntMatrix::identity(a.rows()));
        require(inv.has_value(), "pushforward: coefficients do not invert a lift");
        blk = blk.kron(*inv);
      }
      const long r0 = xoff[dom->tgt(lift)], c0 = xoff[x];
      blk.for_nonzero([&](int r, int c, const Int& v) {
        mat.add_at((int)(r0 + r), (int)(c0 + c), v);
      });
    }
    term.action.push_back(std::move(mat));
  }
  FunctorComplex fc;
  fc.lo = 0;
  fc.terms.push_back(std::move(term));
  fc.diffs.emplace_back();
  return fc;
}

}  // namespace

FunctorComplex lkan(const Functor& p, const CoeffFunctor& e, int max_deg) {
  require(e.base == p.dom, "kan extension: coefficients live over a different category");
  require(!e.contravariant, "kan extension: coefficients must be covariant");
  const Classification cls = classify(p);
  if (cls.discrete_opfibration) return discrete_pushforward(p, e, nullptr);
  return comma_complex(p, e, constant_coeff(p.dom, 1, true), max_deg);
}

FunctorComplex relative_tensor(const Functor& p, const CoeffFunctor& e, const CoeffFunctor& t,
                               int max_deg) {
  require(e.base == p.dom && t.base == p.dom,
          "relative tensor: coefficients live over a different category");
  require(!e.contravariant && t.contravariant,
          "relative tensor: expected a covariant and a contravariant coefficient functor");
  const Classification cls = classify(p);
  require(cls.cofibration, "relative tensor: the projection is not a cofibration");
  for (int m = 0; m < p.dom->num_morphisms(); ++m)
    if (cls.cocartesian[m])
      require(t.action[m].rows() == t.action[m].cols() && is_unimodular(t.action[m]),
              "relative tensor: coefficients do not invert cocartesian morphisms");
  if (cls.discrete_opfibration) return discrete_pushforward(p, e, &t);
  return comma_complex(p, e, t, max_deg);
}

std::vector<FgAbGroup> fiber_tor(const Functor& p, const CoeffFunctor& e, const CoeffFunctor& t,
                                 int c, int max_deg) {
  const FiberCat fb = fiber_cat(p, c);
  return tor_bar(restrict_coeff(e, fb.include), restrict_coeff(t, fb.include), max_deg);
}

std::vector<FgAbGroup> fiber_homology(const Functor& p, const CoeffFunctor& e, int c,
                                      int max_deg) {
  const FiberCat fb = fiber_cat(p, c);
  return cat_homology(fb.cat, restrict_coeff(e, fb.include), max_deg);
}

}  // namespace cathom
