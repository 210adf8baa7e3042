#include "cathom/simpset.hpp"

#include <algorithm>
#include <stdexcept>

namespace cathom {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool monotone_onto(const std::vector<int>& t, int k) {
  if (t.empty() || t.front() != 0 || t.back() != k) return false;
  for (size_t j = 1; j < t.size(); ++j) {
    int step = t[j] - t[j - 1];
    if (step < 0 || step > 1) return false;
  }
  return true;
}

void gen_tables(int len, int hi, bool onto, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == len) {
    if (!onto || cur.back() == hi) out.push_back(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  int remaining = len - (int)cur.size();
  // onto: start at 0, step by at most 1, and leave room to climb to hi
  int vmax = onto ? (cur.empty() ? 0 : cur.back() + 1) : hi;
  for (int v = lo; v <= std::min(vmax, hi); ++v) {
    if (onto && hi - v > remaining - 1) continue;
    cur.push_back(v);
    gen_tables(len, hi, onto, cur, out);
    cur.pop_back();
  }
}

std::vector<int> compose_tables(const std::vector<int>& outer,
                                const std::vector<int>& inner) {
  std::vector<int> r(inner.size());
  for (size_t j = 0; j < inner.size(); ++j) r[j] = outer[inner[j]];
  return r;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::vector<std::vector<int>> monotone_surjections(int n, int k) {
  std::vector<std::vector<int>> out;
  if (n < 0 || k < 0 || k > n) return out;
  std::vector<int> cur;
  gen_tables(n + 1, k, true, cur, out);
  return out;
}

void epi_mono_factor(const std::vector<int>& theta, std::vector<int>& epi,
                     std::vector<int>& mono) {
  require(!theta.empty(), "epi_mono_factor: empty table");
  mono.clear();
  for (int v : theta)
    if (mono.empty() || v > mono.back()) {
      require(mono.empty() || v >= mono.back(), "epi_mono_factor: not monotone");
      mono.push_back(v);
    } else {
      require(v == mono.back(), "epi_mono_factor: not monotone");
    }
  epi.resize(theta.size());
  for (size_t j = 0; j < theta.size(); ++j)
    epi[j] = (int)(std::lower_bound(mono.begin(), mono.end(), theta[j]) - mono.begin());
}

SimpRef TruncSimpSet::cell(int n, long x) const {
  require(n >= 0 && n <= levels() && x >= 0 && x < counts[n], "cell: out of range");
  std::vector<int> id(n + 1);
  for (int j = 0; j <= n; ++j) id[j] = j;
  return {n, x, std::move(id)};
}

SimpRef TruncSimpSet::face(const SimpRef& x, int i) const {
  int n = x.dim();
  require(n >= 1 && i >= 0 && i <= n, "face: index out of range");
  std::vector<int> tau;
  tau.reserve(n);
  for (int j = 0; j <= n; ++j)
    if (j != i) tau.push_back(x.surj[j]);
  int v = x.surj[i];
  bool present = (i > 0 && x.surj[i - 1] == v) || (i < n && x.surj[i + 1] == v);
  if (present) return {x.base_dim, x.base, std::move(tau)};
  // v drops out of the image: take the stored face of the base there
  const SimpRef& f = faces[x.base_dim][x.base][v];
  std::vector<int> out(tau.size());
  for (size_t j = 0; j < tau.size(); ++j) out[j] = f.surj[tau[j] - (tau[j] > v)];
  return {f.base_dim, f.base, std::move(out)};
}

SimpRef TruncSimpSet::degeneracy(const SimpRef& x, int j) const {
  int n = x.dim();
  require(j >= 0 && j <= n, "degeneracy: index out of range");
  std::vector<int> t = x.surj;
  t.insert(t.begin() + j, x.surj[j]);
  return {x.base_dim, x.base, std::move(t)};
}

SimpRef TruncSimpSet::act(const SimpRef& x, const std::vector<int>& theta) const {
  require(!theta.empty() && theta.front() >= 0 && theta.back() <= x.dim(),
          "act: table out of range");
  std::vector<int> epi, mono;
  epi_mono_factor(theta, epi, mono);
  // peel the injective part as faces, largest missing index first
  SimpRef y = x;
  for (int v = x.dim(); v >= 0; --v)
    if (!std::binary_search(mono.begin(), mono.end(), v)) y = face(y, v);
  return {y.base_dim, y.base, compose_tables(y.surj, epi)};
}

long TruncSimpSet::simplex_count(int n) const {
  require(n >= 0 && n <= levels(), "simplex_count: level out of range");
  long total = 0;
  for (int k = 0; k <= n; ++k) total += counts[k] * binom(n, k);
  return total;
}

long TruncSimpSet::index_of(const SimpRef& x) const {
  int n = x.dim();
  long off = 0;
  for (int k = 0; k < x.base_dim; ++k) off += counts[k] * binom(n, k);
  auto surjs = monotone_surjections(n, x.base_dim);
  auto it = std::find(surjs.begin(), surjs.end(), x.surj);
  require(it != surjs.end(), "index_of: malformed simplex");
  return off + x.base * (long)surjs.size() + (it - surjs.begin());
}

SimpRef TruncSimpSet::simplex_at(int n, long pos) const {
  require(pos >= 0 && pos < simplex_count(n), "simplex_at: out of range");
  for (int k = 0; k <= n; ++k) {
    long block = counts[k] * binom(n, k);
    if (pos >= block) {
      pos -= block;
      continue;
    }
    auto surjs = monotone_surjections(n, k);
    return {k, pos / (long)surjs.size(), surjs[pos % (long)surjs.size()]};
  }
  throw std::invalid_argument("simplex_at: out of range");
}

bool TruncSimpSet::validate(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (counts.empty() || faces.size() != counts.size())
    return fail("level tables disagree");
  if ((int)counts.size() != dim + 2) return fail("levels must run through dim+1");
  for (int n = 0; n <= levels(); ++n) {
    if (counts[n] < 0 || (long)faces[n].size() != counts[n])
      return fail("face table size mismatch at level " + std::to_string(n));
    for (long x = 0; x < counts[n]; ++x) {
      if (n == 0) {
        if (!faces[0][x].empty()) return fail("vertex with faces");
        continue;
      }
      if ((int)faces[n][x].size() != n + 1)
        return fail("wrong face count at level " + std::to_string(n));
      for (int i = 0; i <= n; ++i) {
        const SimpRef& f = faces[n][x][i];
        if (f.dim() != n - 1 || f.base_dim < 0 || f.base_dim > n - 1 ||
            f.base < 0 || f.base >= counts[f.base_dim] ||
            !monotone_onto(f.surj, f.base_dim))
          return fail("malformed face at level " + std::to_string(n));
      }
    }
  }
  // full identity suite on every stored simplex
  for (int n = 0; n <= levels(); ++n) {
    for (long x = 0; x < counts[n]; ++x) {
      SimpRef c = cell(n, x);
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (!(face(face(c, j), i) == face(face(c, i), j - 1)))
              return fail("face identity fails at level " + std::to_string(n));
      for (int j = 0; j <= n; ++j) {
        SimpRef s = degeneracy(c, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimpRef got = face(s, i);
          SimpRef want = i < j    ? degeneracy(face(c, i), j - 1)
                         : i > j + 1 ? degeneracy(face(c, i - 1), j)
                                     : c;
          if (!(got == want))
            return fail("mixed identity fails at level " + std::to_string(n));
        }
        for (int i = 0; i <= j; ++i)
          if (!(degeneracy(s, i) == degeneracy(degeneracy(c, i), j + 1)))
            return fail("degeneracy identity fails at level " + std::to_string(n));
      }
    }
  }
  return true;
}

TruncSimpSet nerve(const FinCat& c, int dim) {
  require(dim >= 0, "nerve: negative dimension");
  int top = dim + 1;
  TruncSimpSet x;
  x.dim = dim;
  x.counts.assign(top + 1, 0);
  x.faces.resize(top + 1);

  // identity-free composable words per level; level 0 holds the objects
  std::vector<std::vector<std::vector<int>>> words(top + 1);
  std::vector<std::map<std::vector<int>, long>> pos(top + 1);
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) {
      pos[1][{m}] = (long)words[1].size();
      words[1].push_back({m});
    }
  for (int n = 2; n <= top; ++n)
    for (const auto& w : words[n - 1])
      for (int m : c.out_of(c.tgt(w.back())))
        if (!c.is_identity(m)) {
          std::vector<int> w2 = w;
          w2.push_back(m);
          pos[n][w2] = (long)words[n].size();
          words[n].push_back(std::move(w2));
        }
  x.counts[0] = c.num_objects();
  x.faces[0].resize(x.counts[0]);
  for (int n = 1; n <= top; ++n) x.counts[n] = (long)words[n].size();

  for (int n = 1; n <= top; ++n) {
    x.faces[n].resize(x.counts[n]);
    for (long xi = 0; xi < x.counts[n]; ++xi) {
      const auto& w = words[n][xi];
      auto& fs = x.faces[n][xi];
      fs.reserve(n + 1);
      for (int i = 0; i <= n; ++i) {
        if (i == 0 || i == n) {
          if (n == 1) {
            fs.push_back({0, i == 0 ? c.tgt(w[0]) : c.src(w[0]), {0}});
          } else {
            std::vector<int> w2(i == 0 ? w.begin() + 1 : w.begin(),
                                i == 0 ? w.end() : w.end() - 1);
            long b = pos[n - 1].at(w2);
            fs.push_back(x.cell(n - 1, b));
          }
          continue;
        }
        int g = c.compose(w[i], w[i - 1]);
        std::vector<int> w2 = w;
        w2.erase(w2.begin() + i);
        w2[i - 1] = g;
        if (!c.is_identity(g)) {
          fs.push_back(x.cell(n - 1, pos[n - 1].at(w2)));
          continue;
        }
        // the composite collapses: record the degenerate face in normal form
        std::vector<int> surj(n);
        for (int j = 0; j < n; ++j) surj[j] = j - (j > i - 1);
        w2.erase(w2.begin() + (i - 1));
        if (w2.empty())
          fs.push_back({0, c.src(g), std::move(surj)});
        else
          fs.push_back({n - 2, pos[n - 2].at(w2), std::move(surj)});
      }
    }
  }
  return x;
}

TruncChains chains(const TruncSimpSet& x, const LocalizationSpec& r) {
  (void)r;  // the integral matrices carry every mode; see header
  std::vector<long> ranks(x.counts.begin(), x.counts.end());
  ChainComplex c(0, ranks);
  for (int n = 1; n <= x.levels(); ++n) {
    IntMatrix d((int)x.counts[n - 1], (int)x.counts[n]);
    for (long xi = 0; xi < x.counts[n]; ++xi)
      for (int i = 0; i <= n; ++i) {
        const SimpRef& f = x.faces[n][xi][i];
        if (!f.degenerate()) d.add_at((int)f.base, (int)xi, (i % 2) ? -1 : 1);
      }
    c.set_diff(n, std::move(d));
  }
  return {std::move(c), x.dim};
}

int SimplexCat::find(int a, int b, const std::vector<int>& img) const {
  auto it = index.find({{a, b}, img});
  if (it == index.end()) throw std::invalid_argument("simplex_cat: no such map");
  return it->second;
}

SimplexCat simplex_cat(int top) {
  require(top >= 0, "simplex_cat: negative bound");
  SimplexCat sc;
  sc.top = top;
  FinCat c;
  for (int n = 0; n <= top; ++n) c.add_object("[" + std::to_string(n) + "]");
  for (int a = 0; a <= top; ++a)
    for (int b = 0; b <= top; ++b) {
      std::vector<std::vector<int>> tabs;
      std::vector<int> cur;
      gen_tables(a + 1, b, false, cur, tabs);
      for (auto& t : tabs) {
        int m = c.add_morphism(a, b);
        sc.index[{{a, b}, t}] = m;
        sc.shape.emplace_back(a, b);
        sc.images.push_back(std::move(t));
      }
    }
  for (int n = 0; n <= top; ++n) {
    std::vector<int> id(n + 1);
    for (int j = 0; j <= n; ++j) id[j] = j;
    c.set_identity(n, sc.find(n, n, id));
  }
  int nm = (int)sc.images.size();
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (sc.shape[f].second == sc.shape[g].first)
        c.set_compose(g, f,
                      sc.find(sc.shape[f].first, sc.shape[g].second,
                              compose_tables(sc.images[g], sc.images[f])));
  sc.cat = wrap_cat(std::move(c));
  return sc;
}

TotalCat tot_of_simpset(const TruncSimpSet& x) {
  SimplexCat sc = simplex_cat(x.dim);
  CatValuedFunctor fv;
  fv.base = sc.cat;
  fv.contravariant = true;
  for (int n = 0; n <= x.dim; ++n)
    fv.fiber.push_back(wrap_cat(poset_cat((int)x.simplex_count(n), {})));
  int nm = sc.cat->num_morphisms();
  fv.act_obj.resize(nm);
  fv.act_mor.resize(nm);
  for (int m = 0; m < nm; ++m) {
    auto [a, b] = sc.shape[m];
    long nb = x.simplex_count(b);
    fv.act_obj[m].resize(nb);
    for (long p = 0; p < nb; ++p)
      fv.act_obj[m][p] = (int)x.index_of(x.act(x.simplex_at(b, p), sc.images[m]));
    fv.act_mor[m] = fv.act_obj[m];  // discrete fibers: morphisms are objects
  }
  std::string why;
  if (!fv.validate(&why))
    throw std::invalid_argument("tot_of_simpset: inconsistent simplex action: " + why);
  return grothendieck_total(fv);
}

}  // namespace cathom
