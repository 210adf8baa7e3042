#include "cathom/chain.hpp"

#include "cathom/parallel.hpp"
#include "cathom/snf.hpp"

#include <cassert>

namespace cathom {

void ChainComplex::set_diff(int n, IntMatrix m) {
  assert(m.rows() == rank_at(n - 1));
  assert(m.cols() == rank_at(n));
  diffs[n] = std::move(m);
}

bool ChainComplex::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (const auto& [n, m] : diffs) {
    if (m.rows() != rank_at(n - 1) || m.cols() != rank_at(n))
      return fail("differential at degree " + std::to_string(n) + " has wrong shape");
  }
  for (const auto& [n, m] : diffs) {
    const IntMatrix* next = diff(n + 1);
    if (!next) continue;
    if (!m.mul(*next).is_zero())
      return fail("d*d != 0 at degree " + std::to_string(n + 1));
  }
  return true;
}

namespace {

struct DiffInfo {
  long rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
};

DiffInfo diff_info(const IntMatrix& m) {
  DiffInfo out;
  auto f = invariant_factors(m);
  out.rank = (long)f.size();
  for (auto& v : f)
    if (v > 1) out.torsion.push_back(std::move(v));
  return out;
}

// H_n = Z^{rank C_n - rank d_n - rank d_{n+1}}  +  torsion(d_{n+1}):
// ker d_n is saturated, so the torsion of C_n / im d_{n+1} is the torsion of
// the homology itself
FgAbGroup assemble(long cn, const DiffInfo& out, const DiffInfo& in) {
  FgAbGroup g;
  g.free_rank = cn - out.rank - in.rank;
  g.torsion = in.torsion;
  return g;
}

}  // namespace

FgAbGroup ChainComplex::homology(int n) const {
  long cn = rank_at(n);
  if (cn == 0) return {};
  DiffInfo dout, din;
  if (const IntMatrix* d = diff(n)) dout = diff_info(*d);
  if (const IntMatrix* d = diff(n + 1)) din = diff_info(*d);
  return assemble(cn, dout, din);
}

std::vector<FgAbGroup> ChainComplex::homology_range(int n0, int n1) const {
  std::vector<int> degs;
  for (int n = n0; n <= n1 + 1; ++n)
    if (diff(n)) degs.push_back(n);
  std::vector<DiffInfo> info(degs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_budget()) if (degs.size() > 1)
#endif
  for (size_t i = 0; i < degs.size(); ++i) info[i] = diff_info(*diff(degs[i]));
  auto at = [&](int n) -> DiffInfo {
    for (size_t i = 0; i < degs.size(); ++i)
      if (degs[i] == n) return info[i];
    return {};
  };
  std::vector<FgAbGroup> out;
  for (int n = n0; n <= n1; ++n) {
    if (rank_at(n) == 0) {
      out.push_back({});
      continue;
    }
    out.push_back(assemble(rank_at(n), at(n), at(n + 1)));
  }
  return out;
}

std::vector<FgAbGroup> ChainComplex::homology_range_serial(int n0, int n1) const {
  std::vector<FgAbGroup> out;
  for (int n = n0; n <= n1; ++n) out.push_back(homology(n));
  return out;
}

}  // namespace cathom
