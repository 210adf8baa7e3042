#include "bar_detail.hpp"

namespace cathom::bar_detail {

BarDegrees BarDegrees::build(const CatPtr& base, int max_deg) {
  BarDegrees b;
  b.seqs.resize(max_deg + 1);
  b.head.resize(max_deg + 1);
  b.tail.resize(max_deg + 1);
  b.index.resize(max_deg + 1);
  for (int c = 0; c < base->num_objects(); ++c) {
    b.seqs[0].push_back({});
    b.head[0].push_back(c);
    b.tail[0].push_back(c);
  }
  std::vector<std::vector<int>> out_nonid(base->num_objects());
  for (int m = 0; m < base->num_morphisms(); ++m)
    if (!base->is_identity(m)) out_nonid[base->src(m)].push_back(m);
  if (max_deg >= 1) {
    for (int m = 0; m < base->num_morphisms(); ++m) {
      if (base->is_identity(m)) continue;
      b.index[1].emplace(std::vector<int>{m}, (int)b.seqs[1].size());
      b.seqs[1].push_back({m});
      b.head[1].push_back(base->src(m));
      b.tail[1].push_back(base->tgt(m));
    }
  }
  for (int n = 2; n <= max_deg; ++n) {
    for (size_t j = 0; j < b.seqs[n - 1].size(); ++j) {
      for (int f : out_nonid[b.tail[n - 1][j]]) {
        std::vector<int> seq = b.seqs[n - 1][j];
        seq.push_back(f);
        b.index[n].emplace(seq, (int)b.seqs[n].size());
        b.seqs[n].push_back(std::move(seq));
        b.head[n].push_back(b.head[n - 1][j]);
        b.tail[n].push_back(base->tgt(f));
      }
    }
  }
  return b;
}

std::vector<long> bar_offsets(const BarDegrees& b, const CoeffFunctor& e, const CoeffFunctor& t,
                              int n, long* dim) {
  std::vector<long> off(b.seqs[n].size() + 1, 0);
  for (size_t j = 0; j < b.seqs[n].size(); ++j)
    off[j + 1] = off[j] + e.rank[b.head[n][j]] * t.rank[b.tail[n][j]];
  if (dim) *dim = off.back();
  return off;
}

}  // namespace cathom::bar_detail
