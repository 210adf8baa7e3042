#include "cathom/snf.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <utility>

namespace cathom {

void divisibility_fix(std::vector<Int>& d) {
  std::sort(d.begin(), d.end(), [](const Int& a, const Int& b) {
    if (a == 0) return false;
    if (b == 0) return true;
    return a < b;
  });
  // ascending pass; after step i, d[i] divides every later entry
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) break;
    if (d[i] == 1) continue;
    for (size_t j = i + 1; j < d.size(); ++j) {
      if (d[j] % d[i] == 0) continue;
      Int g = igcd(d[i], d[j]);
      d[j] = d[i] / g * d[j];
      d[i] = g;
    }
  }
}

namespace {

using RowV = std::vector<std::pair<int, Int>>;  // sorted by column, no zero values

int row_find(const RowV& r, int c) {
  auto it = std::lower_bound(r.begin(), r.end(), c,
                             [](const std::pair<int, Int>& e, int x) { return e.first < x; });
  if (it == r.end() || it->first != c) return -1;
  return int(it - r.begin());
}

// Unimodular factor and its inverse under elementary ops.  P takes the op
// directly (as a row op on its rows); Q tracks the inverse, mirrored.  For the
// left factor P = rows of U and Q = rows of Uinv^T; for the right factor
// P = rows of V^T and Q = rows of Vinv.
struct Tracker {
  bool on = false;
  std::vector<std::map<int, Int>> P, Q;

  void init(int n) {
    on = true;
    P.assign(n, {});
    Q.assign(n, {});
    for (int i = 0; i < n; ++i) {
      P[i][i] = 1;
      Q[i][i] = 1;
    }
  }

  static void row_axpy(std::vector<std::map<int, Int>>& m, int dst, int src, const Int& q) {
    if (q == 0) return;
    auto& rd = m[dst];
    for (const auto& [c, v] : m[src]) {
      auto [it, fresh] = rd.try_emplace(c);
      it->second += q * v;
      if (it->second == 0) rd.erase(it);
    }
  }

  void axpy(int dst, int src, const Int& q) {
    if (!on) return;
    row_axpy(P, dst, src, q);
    row_axpy(Q, src, dst, -q);
  }

  void swap2(int i, int j) {
    if (!on || i == j) return;
    std::swap(P[i], P[j]);
    std::swap(Q[i], Q[j]);
  }

  void neg(int i) {
    if (!on) return;
    for (auto& [c, v] : P[i]) v = -v;
    for (auto& [c, v] : Q[i]) v = -v;
  }

  static std::map<int, Int> combine(const std::map<int, Int>& a, const Int& ca,
                                    const std::map<int, Int>& b, const Int& cb) {
    std::map<int, Int> out;
    if (ca != 0)
      for (const auto& [c, v] : a) out[c] = ca * v;
    if (cb != 0)
      for (const auto& [c, v] : b) {
        auto [it, fresh] = out.try_emplace(c);
        it->second += cb * v;
        if (it->second == 0) out.erase(it);
      }
    return out;
  }

  // rows (i, j) of P replaced by the p-matrix combination, rows of Q by q-matrix
  void combo2(int i, int j, const Int& p11, const Int& p12, const Int& p21, const Int& p22,
              const Int& q11, const Int& q12, const Int& q21, const Int& q22) {
    if (!on) return;
    auto pi = combine(P[i], p11, P[j], p12);
    auto pj = combine(P[i], p21, P[j], p22);
    P[i] = std::move(pi);
    P[j] = std::move(pj);
    auto qi = combine(Q[i], q11, Q[j], q12);
    auto qj = combine(Q[i], q21, Q[j], q22);
    Q[i] = std::move(qi);
    Q[j] = std::move(qj);
  }

  IntMatrix direct() const {
    IntMatrix m((int)P.size(), (int)P.size());
    for (int i = 0; i < (int)P.size(); ++i)
      for (const auto& [c, v] : P[i]) m.set(i, c, v);
    return m;
  }

  IntMatrix mirrored_transposed() const {
    IntMatrix m((int)Q.size(), (int)Q.size());
    for (int i = 0; i < (int)Q.size(); ++i)
      for (const auto& [c, v] : Q[i]) m.set(c, i, v);
    return m;
  }

  IntMatrix direct_transposed() const {
    IntMatrix m((int)P.size(), (int)P.size());
    for (int i = 0; i < (int)P.size(); ++i)
      for (const auto& [c, v] : P[i]) m.set(c, i, v);
    return m;
  }

  IntMatrix mirrored() const {
    IntMatrix m((int)Q.size(), (int)Q.size());
    for (int i = 0; i < (int)Q.size(); ++i)
      for (const auto& [c, v] : Q[i]) m.set(i, c, v);
    return m;
  }
};

struct Work {
  int nr = 0, nc = 0;
  std::vector<RowV> row;
  // candidate row ids per column; may hold stale or duplicate ids, every live
  // entry's row is present
  std::vector<std::vector<int>> colrows;
  std::vector<char> rdone, cdone;
  Tracker tu, tv;
  RowV scratch;

  void init(const IntMatrix& a, bool want_u, bool want_v) {
    nr = a.rows();
    nc = a.cols();
    row.assign(nr, {});
    colrows.assign(nc, {});
    rdone.assign(nr, 0);
    cdone.assign(nc, 0);
    a.for_nonzero([&](int i, int j, const Int& v) {
      row[i].emplace_back(j, v);
      colrows[j].push_back(i);
    });
    if (want_u) tu.init(nr);
    if (want_v) tv.init(nc);
  }

  Int* find(int i, int j) {
    int k = row_find(row[i], j);
    return k < 0 ? nullptr : &row[i][k].second;
  }

  void row_axpy(int dst, int src, const Int& q) {
    if (q == 0) return;
    tu.axpy(dst, src, q);
    const RowV& rs = row[src];
    RowV& rd = row[dst];
    scratch.clear();
    scratch.reserve(rd.size() + rs.size());
    size_t a = 0, b = 0;
    while (a < rd.size() || b < rs.size()) {
      if (b == rs.size() || (a < rd.size() && rd[a].first < rs[b].first)) {
        scratch.push_back(std::move(rd[a++]));
      } else if (a == rd.size() || rs[b].first < rd[a].first) {
        Int v = q * rs[b].second;
        colrows[rs[b].first].push_back(dst);
        scratch.emplace_back(rs[b].first, std::move(v));
        ++b;
      } else {
        Int v = rd[a].second + q * rs[b].second;
        if (v != 0) scratch.emplace_back(rd[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    rd.swap(scratch);
  }

  std::vector<int> col_live(int c) {
    auto& cand = colrows[c];
    std::vector<int> out;
    for (int i : cand)
      if (!rdone[i] && row_find(row[i], c) >= 0) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() * 2 + 8 < cand.size()) cand.assign(out.begin(), out.end());
    return out;
  }

  void col_axpy(int dst, int src, const Int& q) {
    if (q == 0) return;
    tv.axpy(dst, src, q);
    for (int i : col_live(src)) {
      int ks = row_find(row[i], src);
      assert(ks >= 0);
      Int add = q * row[i][ks].second;
      int kd = row_find(row[i], dst);
      if (kd >= 0) {
        row[i][kd].second += add;
        if (row[i][kd].second == 0) row[i].erase(row[i].begin() + kd);
      } else {
        auto it = std::lower_bound(row[i].begin(), row[i].end(), dst,
                                   [](const std::pair<int, Int>& e, int x) { return e.first < x; });
        row[i].insert(it, {dst, std::move(add)});
        colrows[dst].push_back(i);
      }
    }
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    tu.swap2(i, j);
    row[i].swap(row[j]);
    for (const auto& e : row[i]) colrows[e.first].push_back(i);
    for (const auto& e : row[j]) colrows[e.first].push_back(j);
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    tv.swap2(i, j);
    auto li = col_live(i);
    auto lj = col_live(j);
    std::vector<int> all;
    all.reserve(li.size() + lj.size());
    all.insert(all.end(), li.begin(), li.end());
    all.insert(all.end(), lj.begin(), lj.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (int k : all) {
      int ki = row_find(row[k], i);
      int kj = row_find(row[k], j);
      Int vi = ki >= 0 ? row[k][ki].second : Int(0);
      Int vj = kj >= 0 ? row[k][kj].second : Int(0);
      if (kj >= 0) row[k].erase(row[k].begin() + kj);
      if (ki >= 0) row[k].erase(row[k].begin() + ki);
      auto put = [&](int c, Int v) {
        if (v == 0) return;
        auto it = std::lower_bound(row[k].begin(), row[k].end(), c,
                                   [](const std::pair<int, Int>& e, int x) { return e.first < x; });
        row[k].insert(it, {c, std::move(v)});
      };
      put(i, std::move(vj));
      put(j, std::move(vi));
    }
    colrows[i].swap(colrows[j]);
  }

  void neg_row(int i) {
    tu.neg(i);
    for (auto& e : row[i]) e.second = -e.second;
  }

  // textbook elimination with physical pivots at (t, t); rows/cols < t end up
  // holding only their diagonal entry.  Returns the rank.
  int textbook() {
    int m = std::min(nr, nc);
    int t = 0;
    for (; t < m; ++t) {
      int bi = -1, bj = -1;
      Int bestv = 0;
      long long bestfill = 0;
      bool stop = false;
      for (int i = t; i < nr && !stop; ++i) {
        for (const auto& [c, v] : row[i]) {
          Int av = iabs(v);
          long long fill = (long long)(row[i].size() - 1) * ((long long)colrows[c].size() - 1);
          bool better;
          if (bi < 0)
            better = true;
          else if (av != bestv)
            better = av < bestv;
          else
            better = fill < bestfill;
          if (better) {
            bi = i;
            bj = c;
            bestv = av;
            bestfill = fill;
            if (bestv == 1 && bestfill <= 0) {
              stop = true;
              break;
            }
          }
        }
      }
      if (bi < 0) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      while (true) {
        // clear column t with row ops
        while (true) {
          Int a = *find(t, t);
          auto lv = col_live(t);
          bool any = false, rem = false;
          for (int k : lv)
            if (k != t) {
              any = true;
              Int b = *find(k, t);
              Int q = nearest_quotient(b, a);
              row_axpy(k, t, -q);
              if (find(k, t)) rem = true;
            }
          if (!any) break;
          if (!rem) break;
          auto lv2 = col_live(t);
          int arg = t;
          Int mv = iabs(*find(t, t));
          for (int k : lv2) {
            Int av = iabs(*find(k, t));
            if (av < mv) {
              mv = av;
              arg = k;
            }
          }
          swap_rows(t, arg);
        }
        // clear row t with column ops; column t is clean so they touch row t only
        Int a = *find(t, t);
        RowV rt = row[t];
        bool any = false;
        for (const auto& [c, b] : rt)
          if (c != t) {
            any = true;
            Int q = nearest_quotient(b, a);
            col_axpy(c, t, -q);
          }
        if (!any) break;
        if (row[t].size() <= 1) break;
        int arg = -1;
        Int mv = 0;
        for (const auto& [c, v] : row[t])
          if (c != t) {
            Int av = iabs(v);
            if (arg < 0 || av < mv) {
              mv = av;
              arg = c;
            }
          }
        swap_cols(t, arg);
      }
    }
    return t;
  }

  // 2x2 repair of diagonal entries (i,i)=a, (j,j)=b into (gcd, lcm)
  void fix2(int i, int j) {
    Int a = *find(i, i), b = *find(j, j);
    Int s, t;
    Int g = ext_gcd(a, b, s, t);
    Int l = a / g * b;
    tu.axpy(i, j, 1);
    tv.combo2(i, j, s, t, -(b / g), a / g, a / g, b / g, -t, s);
    tu.axpy(j, i, -(t * b / g));
    *find(i, i) = g;
    *find(j, j) = l;
  }

  // diagonal cleanup once textbook() returned rank r: signs, order, divisibility
  void canonicalize(int r) {
    for (int i = 0; i < r; ++i)
      if (*find(i, i) < 0) neg_row(i);
    for (int i = 0; i < r; ++i) {
      int arg = i;
      Int mv = *find(i, i);
      for (int j = i + 1; j < r; ++j) {
        Int v = *find(j, j);
        if (v < mv) {
          mv = v;
          arg = j;
        }
      }
      if (arg != i) {
        swap_rows(i, arg);
        swap_cols(i, arg);
      }
    }
    for (int i = 0; i < r; ++i) {
      Int di = *find(i, i);
      if (di == 1) continue;
      for (int j = i + 1; j < r; ++j) {
        if (*find(j, j) % di == 0) continue;
        fix2(i, j);
        di = *find(i, i);
      }
    }
  }

  // eliminate +-1 pivots greedily, shortest rows first; untouched leftovers
  // form the residual.  Diagonal-only: no trackers may be active.
  long unit_phase() {
    assert(!tu.on && !tv.on);
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::vector<char> deferred(nr, 0);
    for (int i = 0; i < nr; ++i) {
      if (row[i].empty())
        rdone[i] = 1;
      else
        heap.push({(long)row[i].size(), i});
    }
    long pivots = 0;
    while (!heap.empty()) {
      auto [len, i] = heap.top();
      heap.pop();
      if (rdone[i] || deferred[i] || (long)row[i].size() != len) continue;
      int pc = -1;
      size_t bestdeg = 0;
      for (const auto& [c, v] : row[i])
        if (v == 1 || v == -1) {
          size_t deg = colrows[c].size();
          if (pc < 0 || deg < bestdeg) {
            pc = c;
            bestdeg = deg;
          }
        }
      if (pc < 0) {
        deferred[i] = 1;
        continue;
      }
      Int a = *find(i, pc);
      for (int k : col_live(pc))
        if (k != i) {
          Int b = *find(k, pc);
          row_axpy(k, i, -(b * a));
          if (row[k].empty()) {
            rdone[k] = 1;
          } else {
            heap.push({(long)row[k].size(), k});
            deferred[k] = 0;
          }
        }
      rdone[i] = 1;
      cdone[pc] = 1;
      ++pivots;
    }
    return pivots;
  }

  // live leftover rows compacted into a standalone matrix
  IntMatrix residual() const {
    std::vector<int> cmap(nc, -1);
    int ncols = 0;
    long long entries = 0;
    for (int i = 0; i < nr; ++i) {
      if (rdone[i]) continue;
      for (const auto& [c, v] : row[i]) {
        if (cmap[c] < 0) cmap[c] = ncols++;
        ++entries;
      }
    }
    int nrows = 0;
    for (int i = 0; i < nr; ++i)
      if (!rdone[i]) ++nrows;
    IntMatrix m(nrows, ncols);
    int r = 0;
    for (int i = 0; i < nr; ++i) {
      if (rdone[i]) continue;
      for (const auto& [c, v] : row[i]) m.set(r, cmap[c], v);
      ++r;
    }
    return m;
  }
};

}  // namespace

SmithForm smith(const IntMatrix& a, unsigned flags) {
  bool wu = flags & SNF_U, wv = flags & SNF_V;
  SmithForm out;
  int m = std::min(a.rows(), a.cols());
  Work w;
  if (!wu && !wv) {
    w.init(a, false, false);
    long units = w.unit_phase();
    std::vector<Int> diag(units, 1);
    IntMatrix res = w.residual();
    if (res.rows() > 0 && res.cols() > 0) {
      Work w2;
      w2.init(res, false, false);
      int r2 = w2.textbook();
      for (int i = 0; i < r2; ++i) diag.push_back(iabs(*w2.find(i, i)));
    }
    divisibility_fix(diag);
    out.rank = (int)diag.size();
    diag.resize(m, 0);
    out.diag = std::move(diag);
    return out;
  }
  w.init(a, wu, wv);
  int r = w.textbook();
  w.canonicalize(r);
  out.rank = r;
  out.diag.assign(m, 0);
  for (int i = 0; i < r; ++i) out.diag[i] = *w.find(i, i);
  if (wu) {
    out.has_u = true;
    out.U = w.tu.direct();
    out.Uinv = w.tu.mirrored_transposed();
  }
  if (wv) {
    out.has_v = true;
    out.V = w.tv.direct_transposed();
    out.Vinv = w.tv.mirrored();
  }
  return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm f = smith(a, SNF_V);
  return f.V.slice(0, a.cols(), f.rank, a.cols());
}

std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
  assert(a.rows() == b.rows());
  SmithForm f = smith(a, SNF_U | SNF_V);
  IntMatrix c = f.U.mul(b);
  IntMatrix y(a.cols(), b.cols());
  int m = (int)f.diag.size();
  bool ok = true;
  c.for_nonzero([&](int i, int j, const Int& v) {
    if (!ok) return;
    if (i >= m || f.diag[i] == 0) {
      ok = false;
      return;
    }
    if (v % f.diag[i] != 0) {
      ok = false;
      return;
    }
    if (i < a.cols()) y.set(i, j, v / f.diag[i]);
    else ok = false;
  });
  if (!ok) return std::nullopt;
  return f.V.mul(y);
}

long rank_of(const IntMatrix& a) { return smith(a).rank; }

std::vector<Int> invariant_factors(const IntMatrix& a) {
  SmithForm f = smith(a);
  f.diag.resize(f.rank);
  return f.diag;
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  SmithForm f = smith(a);
  if (f.rank != a.rows()) return false;
  for (const auto& v : f.diag)
    if (v != 1) return false;
  return true;
}

}  // namespace cathom
