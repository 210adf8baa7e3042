#include "cathom/doldkan.hpp"

#include <algorithm>
#include <stdexcept>

#include "cathom/snf.hpp"

namespace cathom {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

// column Hermite form of a full-column-rank matrix: the canonical basis of
// its column lattice (pivots positive, entries left of a pivot reduced into
// [0, pivot)).  In particular the standard basis of a coordinate sublattice
// comes back as itself.
IntMatrix hnf_columns(const IntMatrix& a) {
  int rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Int>> col(cols, std::vector<Int>(rows, 0));
  a.for_nonzero([&](int r, int c, const Int& v) { col[c][r] = v; });
  int piv = 0;
  for (int r = 0; r < rows && piv < cols; ++r) {
    for (;;) {
      int best = -1;
      for (int j = piv; j < cols; ++j)
        if (col[j][r] != 0 && (best < 0 || iabs(col[j][r]) < iabs(col[best][r])))
          best = j;
      if (best < 0) break;
      bool clean = true;
      for (int j = piv; j < cols; ++j) {
        if (j == best || col[j][r] == 0) continue;
        Int q = col[j][r] / col[best][r];
        if (q != 0)
          for (int i = r; i < rows; ++i) col[j][i] -= q * col[best][i];
        if (col[j][r] != 0) clean = false;
      }
      if (!clean) continue;
      std::swap(col[piv], col[best]);
      if (col[piv][r] < 0)
        for (auto& v : col[piv]) v = -v;
      for (int j = 0; j < piv; ++j) {
        Int q = fdiv(col[j][r], col[piv][r]);
        if (q != 0)
          for (int i = r; i < rows; ++i) col[j][i] -= q * col[piv][i];
      }
      ++piv;
      break;
    }
  }
  require(piv == cols, "hnf: columns are dependent");
  IntMatrix h(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      if (col[j][i] != 0) h.set(i, j, col[j][i]);
  return h;
}

const IntMatrix& diff_or_zero(const ChainComplex& e, int n, IntMatrix& scratch) {
  if (const IntMatrix* d = e.diff(n)) return *d;
  scratch = IntMatrix((int)e.rank_at(n - 1), (int)e.rank_at(n));
  return scratch;
}

// all surjection summands of level n, ordered (target ascending, table lex)
std::vector<std::pair<int, std::vector<int>>> level_summands(int n) {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int k = 0; k <= n; ++k)
    for (auto& s : monotone_surjections(n, k)) out.emplace_back(k, s);
  return out;
}

bool shape_check(const SimpModule& m, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (m.ranks.empty() || (int)m.ranks.size() != m.dim + 2)
    return fail("levels must run through dim+1");
  if (m.face.size() != m.ranks.size() || !m.face[0].empty())
    return fail("face table size mismatch");
  if (m.degen.size() + 1 != m.ranks.size()) return fail("degeneracy table size mismatch");
  for (int n = 0; n <= m.levels(); ++n) {
    if (m.ranks[n] < 0) return fail("negative rank");
    if (n >= 1) {
      if ((int)m.face[n].size() != n + 1)
        return fail("wrong face count at level " + std::to_string(n));
      for (const IntMatrix& d : m.face[n])
        if (d.rows() != m.ranks[n - 1] || d.cols() != m.ranks[n])
          return fail("face shape at level " + std::to_string(n));
    }
    if (n < m.levels()) {
      if ((int)m.degen[n].size() != n + 1)
        return fail("wrong degeneracy count at level " + std::to_string(n));
      for (const IntMatrix& s : m.degen[n])
        if (s.rows() != m.ranks[n + 1] || s.cols() != m.ranks[n])
          return fail("degeneracy shape at level " + std::to_string(n));
    }
  }
  return true;
}

}  // namespace

bool SimpModule::validate(std::string* why) const {
  if (!shape_check(*this, why)) return false;
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (int n = 2; n <= levels(); ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (face[n - 1][i].mul(face[n][j]) != face[n - 1][j - 1].mul(face[n][i]))
          return fail("face identity fails at level " + std::to_string(n));
  for (int n = 0; n + 1 < levels(); ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (degen[n + 1][j + 1].mul(degen[n][i]) != degen[n + 1][i].mul(degen[n][j]))
          return fail("degeneracy identity fails at level " + std::to_string(n));
  for (int n = 0; n < levels(); ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        IntMatrix got = face[n + 1][i].mul(degen[n][j]);
        IntMatrix want = (i == j || i == j + 1) ? IntMatrix::identity((int)ranks[n])
                         : i < j ? degen[n - 1][j - 1].mul(face[n][i])
                                 : degen[n - 1][j].mul(face[n][i - 1]);
        if (got != want)
          return fail("mixed identity fails at level " + std::to_string(n));
      }
  return true;
}

IntMatrix simp_action(const SimpModule& m, const std::vector<int>& theta, int cod) {
  int a = (int)theta.size() - 1;
  require(a >= 0 && a <= m.levels() && cod >= 0 && cod <= m.levels(),
          "simp_action: level out of range");
  require(theta.front() >= 0 && theta.back() <= cod, "simp_action: table out of range");
  for (int j = 0; j < a; ++j)
    require(theta[j] <= theta[j + 1], "simp_action: table not monotone");
  // strip one duplicated value: theta = theta' o sigma^j acts as s_j after theta'
  for (int j = 0; j < a; ++j)
    if (theta[j] == theta[j + 1]) {
      std::vector<int> t2 = theta;
      t2.erase(t2.begin() + j + 1);
      return m.degen[a - 1][j].mul(simp_action(m, t2, cod));
    }
  // injective: strip the largest missing value as a face
  for (int v = cod; v >= 0; --v) {
    if (std::binary_search(theta.begin(), theta.end(), v)) continue;
    std::vector<int> t2 = theta;
    for (int& e : t2) e -= (e > v);
    return simp_action(m, t2, cod - 1).mul(m.face[cod][v]);
  }
  return IntMatrix::identity((int)m.ranks[cod]);
}

SimpModule linearize(const TruncSimpSet& x) {
  SimpModule m;
  m.dim = x.dim;
  m.ranks.resize(x.dim + 2);
  for (int n = 0; n <= x.levels(); ++n) m.ranks[n] = x.simplex_count(n);
  m.face.resize(m.ranks.size());
  m.degen.resize(m.ranks.size() - 1);
  for (int n = 0; n <= x.levels(); ++n) {
    if (n >= 1) {
      m.face[n].assign(n + 1, IntMatrix((int)m.ranks[n - 1], (int)m.ranks[n]));
      for (long p = 0; p < m.ranks[n]; ++p) {
        SimpRef s = x.simplex_at(n, p);
        for (int i = 0; i <= n; ++i)
          m.face[n][i].set((int)x.index_of(x.face(s, i)), (int)p, 1);
      }
    }
    if (n < x.levels()) {
      m.degen[n].assign(n + 1, IntMatrix((int)m.ranks[n + 1], (int)m.ranks[n]));
      for (long p = 0; p < m.ranks[n]; ++p) {
        SimpRef s = x.simplex_at(n, p);
        for (int j = 0; j <= n; ++j)
          m.degen[n][j].set((int)x.index_of(x.degeneracy(s, j)), (int)p, 1);
      }
    }
  }
  return m;
}

SimpModule dold_kan_D(const ChainComplex& e, int dim) {
  require(e.lo >= 0, "dold_kan_D: complex must live in nonnegative degrees");
  if (dim < 0) dim = std::max(e.hi(), 0);
  SimpModule m;
  m.dim = dim;
  int top = dim + 1;

  std::vector<std::vector<std::pair<int, std::vector<int>>>> summ(top + 1);
  std::vector<std::vector<long>> off(top + 1);
  m.ranks.assign(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    summ[n] = level_summands(n);
    off[n].reserve(summ[n].size());
    for (auto& [k, s] : summ[n]) {
      off[n].push_back(m.ranks[n]);
      m.ranks[n] += e.rank_at(k);
    }
  }
  std::vector<std::map<std::vector<int>, size_t>> at(top + 1);
  for (int n = 0; n <= top; ++n)
    for (size_t q = 0; q < summ[n].size(); ++q) at[n][summ[n][q].second] = q;

  // structure matrix of an elementary operator given by its table
  auto structure = [&](int n, int n2, const std::vector<int>& tab) {
    IntMatrix out((int)m.ranks[n2], (int)m.ranks[n]);
    IntMatrix scratch(0, 0);
    for (size_t q = 0; q < summ[n].size(); ++q) {
      auto& [k, s] = summ[n][q];
      if (e.rank_at(k) == 0) continue;
      std::vector<int> comp(tab.size());
      for (size_t j = 0; j < tab.size(); ++j) comp[j] = s[tab[j]];
      std::vector<int> epi, mono;
      epi_mono_factor(comp, epi, mono);
      int k2 = (int)mono.size() - 1;
      if (k2 == k) {  // identity component: the summand just moves
        long r0 = off[n2][at[n2].at(epi)], c0 = off[n][q];
        for (long t = 0; t < e.rank_at(k); ++t)
          out.set((int)(r0 + t), (int)(c0 + t), 1);
      } else if (k2 == k - 1 && mono[0] == 1) {  // missing value 0: apply d
        long r0 = off[n2][at[n2].at(epi)], c0 = off[n][q];
        diff_or_zero(e, k, scratch)
            .for_nonzero([&](int r, int c, const Int& v) {
              out.set((int)(r0 + r), (int)(c0 + c), v);
            });
      }  // any other missing value: zero component
    }
    return out;
  };

  m.face.resize(top + 1);
  m.degen.resize(top);
  for (int n = 1; n <= top; ++n) {
    m.face[n].reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      std::vector<int> delta(n);
      for (int j = 0; j < n; ++j) delta[j] = j + (j >= i);
      m.face[n].push_back(structure(n, n - 1, delta));
    }
  }
  for (int n = 0; n < top; ++n) {
    m.degen[n].reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
      std::vector<int> sigma(n + 2);
      for (int l = 0; l <= n + 1; ++l) sigma[l] = l - (l > j);
      m.degen[n].push_back(structure(n, n + 1, sigma));
    }
  }
  return m;
}

IntMatrix normalized_basis(const SimpModule& m, int n) {
  require(n >= 0 && n <= m.levels(), "normalized_basis: level out of range");
  if (n == 0) return IntMatrix::identity((int)m.ranks[0]);
  IntMatrix stack = m.face[n][1];
  for (int i = 2; i <= n; ++i) stack = stack.vstack(m.face[n][i]);
  return hnf_columns(kernel_basis(stack));
}

TruncChains dold_kan_N(const SimpModule& m) {
  std::string why;
  require(shape_check(m, &why), "dold_kan_N: malformed module");
  std::vector<IntMatrix> basis(m.levels() + 1);
  std::vector<long> ranks(m.levels() + 1);
  for (int n = 0; n <= m.levels(); ++n) {
    basis[n] = normalized_basis(m, n);
    ranks[n] = basis[n].cols();
  }
  ChainComplex c(0, ranks);
  for (int n = 1; n <= m.levels(); ++n) {
    auto d = solve(basis[n - 1], m.face[n][0].mul(basis[n]));
    require(d.has_value(), "dold_kan_N: face map escapes the normalized subgroup");
    c.set_diff(n, std::move(*d));
  }
  return {std::move(c), m.dim};
}

std::vector<IntMatrix> dold_kan_iso(const SimpModule& m) {
  std::string why;
  require(shape_check(m, &why), "dold_kan_iso: malformed module");
  std::vector<IntMatrix> basis(m.levels() + 1);
  for (int n = 0; n <= m.levels(); ++n) basis[n] = normalized_basis(m, n);
  std::vector<IntMatrix> phi;
  phi.reserve(m.levels() + 1);
  for (int n = 0; n <= m.levels(); ++n) {
    IntMatrix p((int)m.ranks[n], 0);
    for (auto& [k, s] : level_summands(n))
      p = p.hstack(simp_action(m, s, k).mul(basis[k]));
    require(p.rows() == p.cols() && is_unimodular(p),
            "dold_kan_iso: module is not free simplicial");
    phi.push_back(std::move(p));
  }
  return phi;
}

std::vector<IntMatrix> assembly(const ChainComplex& e, int dim) {
  require(e.lo >= 0, "assembly: complex must live in nonnegative degrees");
  if (dim < 0) dim = std::max(e.hi(), 0);
  std::vector<IntMatrix> p;
  p.reserve(dim + 2);
  for (int n = 0; n <= dim + 1; ++n) {
    long total = 0;
    for (auto& [k, s] : level_summands(n)) total += e.rank_at(k);
    IntMatrix pn((int)e.rank_at(n), (int)total);
    long base = total - e.rank_at(n);  // the identity summand sits last
    for (long t = 0; t < e.rank_at(n); ++t) pn.set((int)t, (int)(base + t), 1);
    p.push_back(std::move(pn));
  }
  return p;
}

std::vector<IntMatrix> adjunct_map(const TruncSimpSet& x, const ChainComplex& e,
                                   const std::vector<IntMatrix>& f) {
  require(e.lo >= 0, "adjunct_map: complex must live in nonnegative degrees");
  TruncChains cx = chains(x, LocalizationSpec::integers());
  int top = x.dim + 1;
  require((int)f.size() == top + 1, "adjunct_map: one matrix per level required");
  for (int n = 0; n <= top; ++n)
    require(f[n].rows() == e.rank_at(n) && f[n].cols() == cx.complex.rank_at(n),
            "adjunct_map: block shape mismatch");
  IntMatrix scratch(0, 0);
  for (int n = 1; n <= top; ++n) {
    IntMatrix lhs = f[n - 1].mul(diff_or_zero(cx.complex, n, scratch));
    IntMatrix rhs = diff_or_zero(e, n, scratch).mul(f[n]);
    require(lhs == rhs, "adjunct_map: not a chain map");
  }

  SimpModule m = linearize(x);
  std::vector<IntMatrix> phi = dold_kan_iso(m);
  std::vector<IntMatrix> fprime(top + 1);
  for (int k = 0; k <= top; ++k) {
    IntMatrix b = normalized_basis(m, k);
    long lead = x.simplex_count(k) - x.counts[k];  // nondegenerates sit last
    IntMatrix t = b.slice((int)lead, b.rows(), 0, b.cols());
    fprime[k] = f[k].mul(t);
  }
  std::vector<IntMatrix> u;
  u.reserve(top + 1);
  for (int n = 0; n <= top; ++n) {
    std::vector<IntMatrix> blocks;
    for (auto& [k, s] : level_summands(n)) blocks.push_back(fprime[k]);
    auto inv = solve(phi[n], IntMatrix::identity(phi[n].rows()));
    require(inv.has_value(), "adjunct_map: denormalization failed to invert");
    u.push_back(block_diag(blocks).mul(*inv));
  }
  return u;
}

}  // namespace cathom
