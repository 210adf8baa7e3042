#pragma once

#include "cathom/intmatrix.hpp"

#include <string>
#include <vector>

namespace cathom {

// finitely generated abelian group; torsion entries are >= 2 and each divides
// the next
struct FgAbGroup {
  long free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FgAbGroup&) const = default;

  std::string render() const;
  FgAbGroup localized(const Int& p) const;  // Z_(p) coefficients
  FgAbGroup rationalized() const { return {free_rank, {}}; }
};

// coefficient ring selector: Z itself, Z localized at one prime, or Q
struct LocalizationSpec {
  enum Mode { kIntegers, kLocalAtPrime, kRationals };
  Mode mode = kIntegers;
  Int prime = 0;  // set (and prime) exactly when mode == kLocalAtPrime

  static LocalizationSpec integers() { return {}; }
  static LocalizationSpec local_at(Int p);  // rejects non-primes
  static LocalizationSpec rationals() { return {kRationals, 0}; }

  bool operator==(const LocalizationSpec&) const = default;
  std::string render() const;
};

// exactness of localization lets homology be localized after the fact
FgAbGroup localize(const FgAbGroup& g, const LocalizationSpec& r);

// Z^ambient modulo the column span of rel
FgAbGroup coker_group(const IntMatrix& rel, long ambient_rank);

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

// group of homomorphisms a -> b
FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b);

// free part plus arbitrary cyclic orders (0 meaning Z), normalized
FgAbGroup group_from_cyclic(long free_rank, std::vector<Int> orders);

}  // namespace cathom
