#include "cathom/tor.hpp"

#include "bar_detail.hpp"
#include "cathom/snf.hpp"

#include <cassert>
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

}  // namespace

ChainComplex bar_complex(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg,
                         bool parallel) {
  require(e.base == t.base, "bar complex: coefficient functors live over different bases");
  require(!e.contravariant && t.contravariant,
          "bar complex: expected a covariant and a contravariant coefficient functor");
  const CatPtr& base = e.base;
  const BarDegrees bars = BarDegrees::build(base, max_deg);

  std::vector<long> dims(max_deg + 1, 0);
  std::vector<std::vector<long>> off(max_deg + 1);
  for (int n = 0; n <= max_deg; ++n) off[n] = bar_offsets(bars, e, t, n, &dims[n]);

  ChainComplex cc(0, dims);
  for (int n = 1; n <= max_deg; ++n) {
    IntMatrix d((int)dims[n - 1], (int)dims[n]);
    chain_loop((long)bars.seqs[n].size(), parallel, d, [&](long j, auto&& sink) {
      bar_chain_diff(base, bars, e, t, n, (int)j, off[n], 0, off[n - 1], 0, sink);
    });
    cc.set_diff(n, std::move(d));
  }
  return cc;
}

ChainComplex bar_complex(const FunctorComplex& e, const CoeffFunctor& t, int max_deg,
                         bool parallel) {
  const int nq = (int)e.terms.size();
  if (nq == 0) return ChainComplex(e.lo, {});
  for (const auto& term : e.terms) {
    require(term.base == t.base, "bar complex: coefficient functors live over different bases");
    require(!term.contravariant && t.contravariant,
            "bar complex: expected a covariant complex and a contravariant coefficient functor");
  }
  const CatPtr& base = t.base;
  const BarDegrees bars = BarDegrees::build(base, max_deg);

  // per (complex term q, bar degree p): chain offsets and dimensions
  std::vector<std::vector<std::vector<long>>> off(nq);
  std::vector<std::vector<long>> dim(nq, std::vector<long>(max_deg + 1, 0));
  for (int q = 0; q < nq; ++q) {
    off[q].resize(max_deg + 1);
    for (int p = 0; p <= max_deg; ++p) off[q][p] = bar_offsets(bars, e.terms[q], t, p, &dim[q][p]);
  }
  // component bases inside total degree s, components ordered by q ascending
  auto comp_base = [&](int s, int q) {
    long b = 0;
    for (int q2 = 0; q2 < q; ++q2)
      if (s - q2 >= 0 && s - q2 <= max_deg) b += dim[q2][s - q2];
    return b;
  };
  std::vector<long> total(max_deg + 1, 0);
  for (int s = 0; s <= max_deg; ++s) total[s] = comp_base(s, nq);

  ChainComplex cc(e.lo, total);
  for (int s = 1; s <= max_deg; ++s) {
    IntMatrix d((int)total[s - 1], (int)total[s]);
    for (int q = 0; q < nq && q <= s; ++q) {
      const int p = s - q;
      const long cbase = comp_base(s, q);
      if (p >= 1) {
        // horizontal bar differential within term q
        const long rbase = comp_base(s - 1, q);
        chain_loop((long)bars.seqs[p].size(), parallel, d, [&](long j, auto&& sink) {
          bar_chain_diff(base, bars, e.terms[q], t, p, (int)j, off[q][p], cbase, off[q][p - 1],
                         rbase, sink);
        });
      }
      if (q >= 1) {
        // vertical map induced by the complex differential, sign (-1)^p
        const long rbase = comp_base(s - 1, q - 1);
        const Int sgn = (p % 2) ? -1 : 1;
        chain_loop((long)bars.seqs[p].size(), parallel, d, [&](long j, auto&& sink) {
          const int hd = bars.head[p][j], tl = bars.tail[p][j];
          const long rT = t.rank[tl];
          if (rT == 0) return;
          const long col0 = cbase + off[q][p][j];
          const long row0 = rbase + off[q - 1][p][j];
          e.diffs[q][hd].for_nonzero([&](int k, int i, const Int& v) {
            for (long jj = 0; jj < rT; ++jj)
              sink((int)(row0 + k * rT + jj), (int)(col0 + i * rT + jj), sgn * v);
          });
        });
      }
    }
    cc.set_diff(e.lo + s, std::move(d));
  }
  return cc;
}

std::vector<FgAbGroup> tor_bar(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg) {
  return bar_complex(e, t, max_deg + 1).homology_range(0, max_deg);
}

std::vector<FgAbGroup> tor_bar(const FunctorComplex& e, const CoeffFunctor& t, int max_deg) {
  if (e.terms.empty()) return std::vector<FgAbGroup>(max_deg + 1);
  return bar_complex(e, t, max_deg + 1).homology_range(e.lo, e.lo + max_deg);
}

// ---------------------------------------------------------------------------
// resolution machinery
// ---------------------------------------------------------------------------

namespace {

// one level of a resolution by sums of representables: generator g contributes
// the representable at gen_obj[g]; its image in the previous level is `value`,
// a sparse vector over that level's basis pairs (generator h, u: c_h -> c_g).
// Level 0 instead records which E-basis vector each generator hits (aux).
struct ResLevel {
  std::vector<int> gen_obj;
  std::vector<int> aux;
  std::vector<std::vector<std::tuple<int, int, Int>>> value;
};

// position of every morphism inside hom(src, tgt)
std::vector<int> hom_positions(const CatPtr& base) {
  std::vector<int> pos(base->num_morphisms(), -1);
  for (int a = 0; a < base->num_objects(); ++a)
    for (int b = 0; b < base->num_objects(); ++b) {
      const auto h = base->hom(a, b);
      for (int i = 0; i < (int)h.size(); ++i) pos[h[i]] = i;
    }
  return pos;
}

// basis offsets of level lv evaluated at object c: one block per generator g
// of size |hom(c_g, c)|
std::vector<long> level_offsets(const CatPtr& base, const ResLevel& lv, int c) {
  std::vector<long> off(lv.gen_obj.size() + 1, 0);
  for (size_t g = 0; g < lv.gen_obj.size(); ++g)
    off[g + 1] = off[g] + (long)base->hom(lv.gen_obj[g], c).size();
  return off;
}

// augmentation P_0(c) -> E(c); column (g, w) is E(w) applied to basis aux[g]
IntMatrix eps_matrix(const CoeffFunctor& e, const ResLevel& lv0, int c) {
  const CatPtr& base = e.base;
  const auto off = level_offsets(base, lv0, c);
  IntMatrix m((int)e.rank[c], (int)off.back());
  for (size_t g = 0; g < lv0.gen_obj.size(); ++g) {
    const auto h = base->hom(lv0.gen_obj[g], c);
    for (int wi = 0; wi < (int)h.size(); ++wi) {
      const IntMatrix& act = e.action[h[wi]];
      const int col = (int)(off[g] + wi);
      act.for_nonzero([&](int k, int i, const Int& v) {
        if (i == lv0.aux[g]) m.add_at(k, col, v);
      });
    }
  }
  return m;
}

// differential P_i(c) -> P_{i-1}(c); column (g, w) transports value[g] by w
IntMatrix level_matrix(const CatPtr& base, const ResLevel& lv, const ResLevel& prev, int c,
                       const std::vector<int>& hom_pos) {
  const auto off = level_offsets(base, lv, c);
  const auto poff = level_offsets(base, prev, c);
  IntMatrix m((int)poff.back(), (int)off.back());
  for (size_t g = 0; g < lv.gen_obj.size(); ++g) {
    const auto h = base->hom(lv.gen_obj[g], c);
    for (int wi = 0; wi < (int)h.size(); ++wi) {
      const int col = (int)(off[g] + wi);
      for (const auto& [hg, u, n] : lv.value[g]) {
        const int wu = base->compose(h[wi], u);
        m.add_at((int)(poff[hg] + hom_pos[wu]), col, n);
      }
    }
  }
  return m;
}

// resolution of E by sums of representables, levels 0..depth; level i+1 is
// generated by kernel bases of the level-i differential at every object, so
// exactness holds pointwise and the spanned kernels are saturated lattices
std::vector<ResLevel> resolve(const CoeffFunctor& e, int depth,
                              const std::vector<int>& hom_pos) {
  const CatPtr& base = e.base;
  std::vector<ResLevel> levels(depth + 1);
  for (int c = 0; c < base->num_objects(); ++c)
    for (long i = 0; i < e.rank[c]; ++i) {
      levels[0].gen_obj.push_back(c);
      levels[0].aux.push_back((int)i);
      levels[0].value.emplace_back();
    }
  for (int i = 0; i < depth; ++i) {
    ResLevel& next = levels[i + 1];
    for (int c = 0; c < base->num_objects(); ++c) {
      const IntMatrix m = (i == 0) ? eps_matrix(e, levels[0], c)
                                   : level_matrix(base, levels[i], levels[i - 1], c, hom_pos);
      const IntMatrix ker = kernel_basis(m);
      if (ker.cols() == 0) continue;
      const auto off = level_offsets(base, levels[i], c);
      std::vector<std::vector<std::tuple<int, int, Int>>> cols(ker.cols());
      ker.for_nonzero([&](int r, int k, const Int& v) {
        size_t g = 0;
        while (off[g + 1] <= r) ++g;
        cols[k].emplace_back((int)g, base->hom(levels[i].gen_obj[g], c)[r - off[g]], v);
      });
      for (int k = 0; k < ker.cols(); ++k) {
        next.gen_obj.push_back(c);
        next.aux.push_back(-1);
        next.value.push_back(std::move(cols[k]));
      }
    }
  }
  return levels;
}

// offsets of ⊕_g T(c_g) for one resolution level
std::vector<long> tor_offsets(const ResLevel& lv, const CoeffFunctor& t, long* dim) {
  std::vector<long> off(lv.gen_obj.size() + 1, 0);
  for (size_t g = 0; g < lv.gen_obj.size(); ++g) off[g + 1] = off[g] + t.rank[lv.gen_obj[g]];
  if (dim) *dim = off.back();
  return off;
}

// block (g -> h) of the induced map on ⊕ T(c_g) is the sum of n * T(u) over
// the value entries (h, u, n) of g  (co-Yoneda: R_c (x) T = T(c))
void add_transport_blocks(IntMatrix& d, const ResLevel& lv, const CoeffFunctor& t,
                          const std::vector<long>& coloff, long colbase,
                          const std::vector<long>& rowoff, long rowbase, const Int& sgn) {
  for (size_t g = 0; g < lv.gen_obj.size(); ++g) {
    const long col0 = colbase + coloff[g];
    for (const auto& [h, u, n] : lv.value[g]) {
      const long row0 = rowbase + rowoff[h];
      t.action[u].for_nonzero([&](int l, int jj, const Int& v) {
        d.add_at((int)(row0 + l), (int)(col0 + jj), sgn * n * v);
      });
    }
  }
}

}  // namespace

std::vector<FgAbGroup> tor_resolution(const CoeffFunctor& e, const CoeffFunctor& t, int max_deg) {
  require(e.base == t.base, "tor: coefficient functors live over different bases");
  require(!e.contravariant && t.contravariant,
          "tor: expected a covariant and a contravariant coefficient functor");
  const CatPtr& base = e.base;
  const auto hom_pos = hom_positions(base);
  const int depth = max_deg + 1;
  const auto levels = resolve(e, depth, hom_pos);

  std::vector<long> dims(depth + 1, 0);
  std::vector<std::vector<long>> off(depth + 1);
  for (int i = 0; i <= depth; ++i) off[i] = tor_offsets(levels[i], t, &dims[i]);

  ChainComplex cc(0, dims);
  for (int i = 1; i <= depth; ++i) {
    IntMatrix d((int)dims[i - 1], (int)dims[i]);
    add_transport_blocks(d, levels[i], t, off[i], 0, off[i - 1], 0, 1);
    cc.set_diff(i, std::move(d));
  }
  return cc.homology_range(0, max_deg);
}

std::vector<FgAbGroup> tor_resolution(const FunctorComplex& e, const CoeffFunctor& t,
                                      int max_deg) {
  if (e.terms.empty()) return std::vector<FgAbGroup>(max_deg + 1);
  if (e.terms.size() == 1) return tor_resolution(e.terms[0], t, max_deg);
  require(e.terms.size() == 2,
          "tor: the resolution route accepts at most two-term complexes; use the bar route");
  const CoeffFunctor& e0 = e.terms[0];
  const CoeffFunctor& e1 = e.terms[1];
  require(e0.base == t.base && e1.base == t.base,
          "tor: coefficient functors live over different bases");
  require(!e0.contravariant && !e1.contravariant && t.contravariant,
          "tor: expected a covariant complex and a contravariant coefficient functor");
  const CatPtr& base = t.base;
  const auto hom_pos = hom_positions(base);

  const int depth = max_deg + 1;
  const auto res0 = resolve(e0, depth, hom_pos);
  const auto res1 = resolve(e1, depth - 1, hom_pos);

  // start of the level-0 generator block of one object (generators are laid
  // out object-major with aux ascending)
  std::vector<long> g0_start(base->num_objects() + 1, 0);
  for (int c = 0; c < base->num_objects(); ++c) g0_start[c + 1] = g0_start[c] + e0.rank[c];

  // lift the complex differential to the resolutions: lam[i] maps generators
  // of res1 level i into res0 level i, as sparse (generator, morphism, coeff);
  // level 0 is explicit, higher levels solve against the exact resolution
  std::vector<std::vector<std::vector<std::tuple<int, int, Int>>>> lam(depth);
  lam[0].resize(res1[0].gen_obj.size());
  for (size_t g = 0; g < res1[0].gen_obj.size(); ++g) {
    const int c = res1[0].gen_obj[g];
    const int j = res1[0].aux[g];
    e.diffs[1][c].for_nonzero([&](int k, int jj, const Int& v) {
      if (jj == j) lam[0][g].emplace_back((int)(g0_start[c] + k), base->identity(c), v);
    });
  }
  for (int i = 1; i < depth; ++i) {
    lam[i].resize(res1[i].gen_obj.size());
    for (size_t g = 0; g < res1[i].gen_obj.size(); ++g) {
      const int c = res1[i].gen_obj[g];
      const auto off0 = level_offsets(base, res0[i - 1], c);
      // rhs = lam_{i-1} applied to the transported value of g
      IntMatrix rhs((int)off0.back(), 1);
      for (const auto& [h, u, n] : res1[i].value[g]) {
        for (const auto& [h0, u0, n0] : lam[i - 1][h]) {
          const int w = base->compose(u, u0);
          rhs.add_at((int)(off0[h0] + hom_pos[w]), 0, n * n0);
        }
      }
      const IntMatrix m = level_matrix(base, res0[i], res0[i - 1], c, hom_pos);
      const auto x = solve(m, rhs);
      if (!x) throw std::logic_error("tor: lifting the complex differential failed");
      const auto offi = level_offsets(base, res0[i], c);
      x->for_nonzero([&](int r, int k, const Int& v) {
        (void)k;
        size_t g0 = 0;
        while (offi[g0 + 1] <= r) ++g0;
        lam[i][g].emplace_back((int)g0, base->hom(res0[i].gen_obj[g0], c)[r - offi[g0]], v);
      });
    }
  }

  // total complex: degree s = (res0 level s) ⊕ (res1 level s-1)
  std::vector<long> dim0(depth + 1, 0), dim1(depth, 0);
  std::vector<std::vector<long>> off0(depth + 1), off1(depth);
  for (int i = 0; i <= depth; ++i) off0[i] = tor_offsets(res0[i], t, &dim0[i]);
  for (int i = 0; i < depth; ++i) off1[i] = tor_offsets(res1[i], t, &dim1[i]);

  std::vector<long> total(depth + 1, 0);
  for (int s = 0; s <= depth; ++s) total[s] = dim0[s] + (s >= 1 ? dim1[s - 1] : 0);

  ChainComplex cc(e.lo, total);
  for (int s = 1; s <= depth; ++s) {
    IntMatrix d((int)total[s - 1], (int)total[s]);
    add_transport_blocks(d, res0[s], t, off0[s], 0, off0[s - 1], 0, 1);
    if (s >= 2)
      add_transport_blocks(d, res1[s - 1], t, off1[s - 1], dim0[s], off1[s - 2], dim0[s - 1], 1);
    // vertical lift with sign (-1)^(s-1)
    const Int sgn = ((s - 1) % 2) ? -1 : 1;
    for (size_t g = 0; g < res1[s - 1].gen_obj.size(); ++g) {
      const long col0 = dim0[s] + off1[s - 1][g];
      for (const auto& [g0, u, n] : lam[s - 1][g]) {
        const long row0 = off0[s - 1][g0];
        t.action[u].for_nonzero([&](int l, int jj, const Int& v) {
          d.add_at((int)(row0 + l), (int)(col0 + jj), sgn * n * v);
        });
      }
    }
    cc.set_diff(e.lo + s, std::move(d));
  }
  return cc.homology_range(e.lo, e.lo + max_deg);
}

std::vector<FgAbGroup> cat_homology(const CatPtr& c, const CoeffFunctor& e, int max_deg) {
  require(e.base == c, "homology: coefficients live over a different category");
  require(!e.contravariant, "homology: coefficients must be covariant");
  return tor_bar(e, constant_coeff(c, 1, true), max_deg);
}

}  // namespace cathom
