#pragma once

#include "cathom/abgroup.hpp"
#include "cathom/intmatrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace cathom {

// chain complex of free Z-modules; d[n] : C_n -> C_{n-1}, absent meaning zero
struct ChainComplex {
  int lo = 0;
  std::vector<long> ranks;
  std::map<int, IntMatrix> diffs;

  ChainComplex() = default;
  ChainComplex(int low, std::vector<long> rk) : lo(low), ranks(std::move(rk)) {}

  int hi() const { return lo + (int)ranks.size() - 1; }
  long rank_at(int n) const {
    if (n < lo || n > hi()) return 0;
    return ranks[n - lo];
  }
  const IntMatrix* diff(int n) const {
    auto it = diffs.find(n);
    return it == diffs.end() ? nullptr : &it->second;
  }
  void set_diff(int n, IntMatrix m);

  // shape check plus d(n) * d(n+1) == 0 for every adjacent pair
  bool validate(std::string* why = nullptr) const;

  FgAbGroup homology(int n) const;
  // homology in degrees [n0, n1]; Smith forms run in parallel across degrees
  std::vector<FgAbGroup> homology_range(int n0, int n1) const;
  std::vector<FgAbGroup> homology_range_serial(int n0, int n1) const;
};

}  // namespace cathom
