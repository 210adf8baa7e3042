#pragma once

// Internal machinery of the two-sided bar construction, shared by the Tor
// engines and the comma-category Kan extension code.  Not installed.

#include "cathom/coeff.hpp"
#include "cathom/intmatrix.hpp"
#include "cathom/parallel.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace cathom::bar_detail {

// composable chains of non-identity morphisms per degree, lexicographic by
// morphism index; degree 0 is indexed by object
struct BarDegrees {
  std::vector<std::vector<std::vector<int>>> seqs;
  std::vector<std::vector<int>> head, tail;
  // sequence -> chain index, per degree >= 1
  std::vector<std::map<std::vector<int>, int>> index;

  static BarDegrees build(const CatPtr& base, int max_deg);
};

// offsets of the chain blocks of ⊕ E(c_0)(x)T(c_n) at one degree
std::vector<long> bar_offsets(const BarDegrees& b, const CoeffFunctor& e, const CoeffFunctor& t,
                              int n, long* dim);

// entries of the degree-n bar differential restricted to chain j, emitted as
// sink(row, col, value); row/column bases let callers place the block inside
// a larger (total-complex) matrix
template <class Sink>
void bar_chain_diff(const CatPtr& base, const BarDegrees& bars, const CoeffFunctor& e,
                    const CoeffFunctor& t, int n, int j, const std::vector<long>& coloff,
                    long colbase, const std::vector<long>& rowoff, long rowbase, Sink&& sink) {
  const auto& seq = bars.seqs[n][j];
  const int a = bars.head[n][j], bb = bars.tail[n][j];
  const long rE = e.rank[a], rT = t.rank[bb];
  const long col0 = colbase + coloff[j];
  if (rE == 0 || rT == 0) return;

  // face 0: apply E(f_1), drop the head
  {
    int tj;
    if (n == 1) {
      tj = bars.tail[1][j];  // degree-0 chain = object c_1
    } else {
      std::vector<int> tseq(seq.begin() + 1, seq.end());
      tj = bars.index[n - 1].at(tseq);
    }
    const long row0 = rowbase + rowoff[tj];
    e.action[seq[0]].for_nonzero([&](int k, int i, const Int& v) {
      for (long jj = 0; jj < rT; ++jj)
        sink((int)(row0 + k * rT + jj), (int)(col0 + i * rT + jj), v);
    });
  }
  // middle faces: compose two adjacent morphisms; identity composites vanish
  for (int i = 1; i < n; ++i) {
    const int comp = base->compose(seq[i], seq[i - 1]);
    if (base->is_identity(comp)) continue;
    std::vector<int> tseq;
    tseq.reserve(n - 1);
    tseq.insert(tseq.end(), seq.begin(), seq.begin() + (i - 1));
    tseq.push_back(comp);
    tseq.insert(tseq.end(), seq.begin() + (i + 1), seq.end());
    const long row0 = rowbase + rowoff[bars.index[n - 1].at(tseq)];
    const Int sgn = (i % 2) ? -1 : 1;
    for (long x = 0; x < rE * rT; ++x) sink((int)(row0 + x), (int)(col0 + x), sgn);
  }
  // face n: apply T(f_n), drop the tail
  {
    const int fn = seq[n - 1];
    int tj;
    if (n == 1) {
      tj = bars.head[1][j];
    } else {
      std::vector<int> tseq(seq.begin(), seq.end() - 1);
      tj = bars.index[n - 1].at(tseq);
    }
    const long row0 = rowbase + rowoff[tj];
    const long rTm = t.rank[base->src(fn)];
    const Int sgn = (n % 2) ? -1 : 1;
    t.action[fn].for_nonzero([&](int l, int jj, const Int& v) {
      for (long i = 0; i < rE; ++i)
        sink((int)(row0 + i * rTm + l), (int)(col0 + i * rT + jj), sgn * v);
    });
  }
}

// run emit(j, sink) over j = 0..n-1, either serially into `out` or with
// per-thread triplet buffers merged afterwards; the result is identical
// because entries only accumulate
template <class Emit>
void chain_loop(long n, bool parallel, IntMatrix& out, Emit&& emit) {
#ifdef _OPENMP
  const int th = parallel ? thread_budget() : 1;
  if (th > 1 && n > 1) {
    std::vector<std::vector<std::tuple<int, int, Int>>> bufs(th);
#pragma omp parallel for schedule(dynamic, 8) num_threads(th)
    for (long j = 0; j < n; ++j) {
      auto& buf = bufs[omp_get_thread_num()];
      emit(j, [&buf](int r, int c, const Int& v) { buf.emplace_back(r, c, v); });
    }
    for (auto& b : bufs)
      for (auto& [r, c, v] : b) out.add_at(r, c, v);
    return;
  }
#else
  (void)parallel;
#endif
  for (long j = 0; j < n; ++j)
    emit(j, [&out](int r, int c, const Int& v) { out.add_at(r, c, v); });
}

}  // namespace cathom::bar_detail
