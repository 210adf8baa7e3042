#pragma once

#include "cathom/intmatrix.hpp"

#include <optional>
#include <vector>

namespace cathom {

enum : unsigned { SNF_U = 1u, SNF_V = 2u };

// S = U * A * V with S diagonal, entries nonnegative, each dividing the next.
// U, V are unimodular; Uinv * S * Vinv == A.
struct SmithForm {
  std::vector<Int> diag;  // length min(rows, cols), zeros trailing
  int rank = 0;
  bool has_u = false, has_v = false;
  IntMatrix U, Uinv, V, Vinv;
};

SmithForm smith(const IntMatrix& a, unsigned flags = 0);

// columns form a basis of ker(a); the lattice they span is saturated
IntMatrix kernel_basis(const IntMatrix& a);

// x with a*x == b, columnwise; nullopt when no integer solution exists
std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b);

long rank_of(const IntMatrix& a);
std::vector<Int> invariant_factors(const IntMatrix& a);  // nonzero diagonal of the Smith form
bool is_unimodular(const IntMatrix& a);

// sorts and repairs a multiset of nonnegative values into a divisibility chain
// (zeros sort last) without changing the group  ⊕ Z/d  it presents
void divisibility_fix(std::vector<Int>& d);

}  // namespace cathom
