#include "cathom/intmatrix.hpp"

#include "cathom/parallel.hpp"

#include <cassert>

namespace cathom {

IntMatrix::IntMatrix(int rows, int cols) : nr(rows), nc(cols) {
  assert(rows >= 0 && cols >= 0);
  dense_ = (long long)rows * cols <= kDenseMax;
  if (dense_)
    d.assign((size_t)nr * nc, Int(0));
  else
    s.assign(nr, {});
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix IntMatrix::diag_of(const std::vector<Int>& dg, int rows, int cols) {
  IntMatrix m(rows, cols);
  for (int i = 0; i < (int)dg.size(); ++i)
    if (dg[i] != 0) m.set(i, i, dg[i]);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  int r = (int)rows.size();
  int c = r == 0 ? 0 : (int)rows[0].size();
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    assert((int)rows[i].size() == c);
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.set(i, j, Int(rows[i][j]));
  }
  return m;
}

IntMatrix IntMatrix::basis_map(const std::vector<int>& img, int rows) {
  IntMatrix m(rows, (int)img.size());
  for (int j = 0; j < (int)img.size(); ++j) {
    assert(img[j] >= 0 && img[j] < rows);
    m.set(img[j], j, 1);
  }
  return m;
}

Int IntMatrix::at(int i, int j) const {
  assert(i >= 0 && i < nr && j >= 0 && j < nc);
  if (dense_) return d[(size_t)i * nc + j];
  auto it = s[i].find(j);
  return it == s[i].end() ? Int(0) : it->second;
}

void IntMatrix::set(int i, int j, Int v) {
  assert(i >= 0 && i < nr && j >= 0 && j < nc);
  if (dense_) {
    d[(size_t)i * nc + j] = std::move(v);
  } else if (v == 0) {
    s[i].erase(j);
  } else {
    s[i][j] = std::move(v);
  }
}

void IntMatrix::add_at(int i, int j, const Int& v) {
  if (v == 0) return;
  if (dense_) {
    d[(size_t)i * nc + j] += v;
  } else {
    auto [it, fresh] = s[i].try_emplace(j, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) s[i].erase(it);
    }
  }
}

long long IntMatrix::nnz() const {
  long long n = 0;
  for_nonzero([&](int, int, const Int&) { ++n; });
  return n;
}

bool IntMatrix::is_zero() const { return nnz() == 0; }

namespace {

IntMatrix mul_impl(const IntMatrix& a, const IntMatrix& b, int threads) {
  assert(a.cols() == b.rows());
  IntMatrix c(a.rows(), b.cols());
  (void)threads;
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(dynamic, 4) if (threads > 1)
#endif
  for (int i = 0; i < a.rows(); ++i) {
    std::map<int, Int> acc;
    a.for_row(i, [&](int k, const Int& av) {
      b.for_row(k, [&](int j, const Int& bv) {
        auto [it, fresh] = acc.try_emplace(j);
        it->second += av * bv;
      });
    });
    for (auto& [j, v] : acc)
      if (v != 0) c.set(i, j, std::move(v));
  }
  return c;
}

}  // namespace

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  long long sz = (long long)nr * o.cols();
  int th = (nr >= 16 && sz >= 32768) ? thread_budget() : 1;
  return mul_impl(*this, o, th);
}

IntMatrix IntMatrix::mul_serial(const IntMatrix& o) const { return mul_impl(*this, o, 1); }

IntMatrix IntMatrix::add(const IntMatrix& o) const {
  assert(nr == o.nr && nc == o.nc);
  IntMatrix c(nr, nc);
  for_nonzero([&](int i, int j, const Int& v) { c.add_at(i, j, v); });
  o.for_nonzero([&](int i, int j, const Int& v) { c.add_at(i, j, v); });
  return c;
}

IntMatrix IntMatrix::sub(const IntMatrix& o) const { return add(o.neg()); }

IntMatrix IntMatrix::neg() const {
  IntMatrix c(nr, nc);
  for_nonzero([&](int i, int j, const Int& v) { c.set(i, j, -v); });
  return c;
}

IntMatrix IntMatrix::scale(const Int& k) const {
  IntMatrix c(nr, nc);
  if (k != 0) for_nonzero([&](int i, int j, const Int& v) { c.set(i, j, k * v); });
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix c(nc, nr);
  for_nonzero([&](int i, int j, const Int& v) { c.set(j, i, v); });
  return c;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
  assert(nr == o.nr);
  IntMatrix c(nr, nc + o.nc);
  for_nonzero([&](int i, int j, const Int& v) { c.set(i, j, v); });
  o.for_nonzero([&](int i, int j, const Int& v) { c.set(i, nc + j, v); });
  return c;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const {
  assert(nc == o.nc);
  IntMatrix c(nr + o.nr, nc);
  for_nonzero([&](int i, int j, const Int& v) { c.set(i, j, v); });
  o.for_nonzero([&](int i, int j, const Int& v) { c.set(nr + i, j, v); });
  return c;
}

IntMatrix IntMatrix::kron(const IntMatrix& o) const {
  IntMatrix c(nr * o.nr, nc * o.nc);
  for_nonzero([&](int i, int j, const Int& v) {
    o.for_nonzero([&](int i2, int j2, const Int& w) {
      c.set(i * o.nr + i2, j * o.nc + j2, v * w);
    });
  });
  return c;
}

IntMatrix IntMatrix::slice(int r0, int r1, int c0, int c1) const {
  assert(0 <= r0 && r0 <= r1 && r1 <= nr);
  assert(0 <= c0 && c0 <= c1 && c1 <= nc);
  IntMatrix c(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for_row(i, [&](int j, const Int& v) {
      if (j >= c0 && j < c1) c.set(i - r0, j - c0, v);
    });
  return c;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  if (nr != o.nr || nc != o.nc) return false;
  bool eq = true;
  for_nonzero([&](int i, int j, const Int& v) {
    if (eq && o.at(i, j) != v) eq = false;
  });
  if (!eq) return false;
  o.for_nonzero([&](int i, int j, const Int& v) {
    if (eq && at(i, j) != v) eq = false;
  });
  return eq;
}

std::vector<std::tuple<int, int, Int>> IntMatrix::triplets() const {
  std::vector<std::tuple<int, int, Int>> out;
  out.reserve((size_t)nnz());
  for_nonzero([&](int i, int j, const Int& v) { out.emplace_back(i, j, v); });
  return out;
}

IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  IntMatrix m(r, c);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    b.for_nonzero([&](int i, int j, const Int& v) { m.set(ro + i, co + j, v); });
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

}  // namespace cathom
