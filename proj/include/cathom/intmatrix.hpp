#pragma once

#include "cathom/ints.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace cathom {

// Integer matrix, dense row-major below kDenseMax entries and row-map sparse
// above; the interface is storage-agnostic.  Zero values are never stored in
// sparse rows.
class IntMatrix {
 public:
  static constexpr long long kDenseMax = 4096;

  IntMatrix() = default;
  IntMatrix(int rows, int cols);

  static IntMatrix identity(int n);
  static IntMatrix diag_of(const std::vector<Int>& d, int rows, int cols);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  // e_j -> e_img[j]
  static IntMatrix basis_map(const std::vector<int>& img, int rows);

  int rows() const { return nr; }
  int cols() const { return nc; }
  bool is_dense() const { return dense_; }

  Int at(int i, int j) const;
  void set(int i, int j, Int v);
  void add_at(int i, int j, const Int& v);

  long long nnz() const;
  bool is_zero() const;

  // f(col, value) over nonzeros of row i, columns ascending
  template <class F>
  void for_row(int i, F&& f) const {
    if (dense_) {
      for (int j = 0; j < nc; ++j) {
        const Int& v = d[(size_t)i * nc + j];
        if (v != 0) f(j, v);
      }
    } else {
      for (const auto& [j, v] : s[i]) f(j, v);
    }
  }

  // f(row, col, value); rows ascending, columns ascending within a row
  template <class F>
  void for_nonzero(F&& f) const {
    for (int i = 0; i < nr; ++i) for_row(i, [&](int j, const Int& v) { f(i, j, v); });
  }

  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix mul_serial(const IntMatrix& o) const;
  IntMatrix add(const IntMatrix& o) const;
  IntMatrix sub(const IntMatrix& o) const;
  IntMatrix neg() const;
  IntMatrix scale(const Int& c) const;
  IntMatrix transpose() const;
  IntMatrix hstack(const IntMatrix& o) const;
  IntMatrix vstack(const IntMatrix& o) const;
  IntMatrix kron(const IntMatrix& o) const;
  // half-open ranges
  IntMatrix slice(int r0, int r1, int c0, int c1) const;
  IntMatrix col(int j) const { return slice(0, nr, j, j + 1); }

  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  std::vector<std::tuple<int, int, Int>> triplets() const;

 private:
  int nr = 0, nc = 0;
  bool dense_ = true;
  std::vector<Int> d;
  std::vector<std::map<int, Int>> s;
};

IntMatrix block_diag(const std::vector<IntMatrix>& blocks);

}  // namespace cathom
