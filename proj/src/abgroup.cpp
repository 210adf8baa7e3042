#include "cathom/abgroup.hpp"

#include "cathom/snf.hpp"

#include <cassert>
#include <stdexcept>

namespace cathom {

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

}  // namespace

LocalizationSpec LocalizationSpec::local_at(Int p) {
  if (!is_prime(p))
    throw std::invalid_argument("local_at: " + p.str() + " is not prime");
  return {kLocalAtPrime, std::move(p)};
}

std::string LocalizationSpec::render() const {
  switch (mode) {
    case kLocalAtPrime: return "Z_(" + prime.str() + ")";
    case kRationals: return "Q";
    default: return "Z";
  }
}

FgAbGroup localize(const FgAbGroup& g, const LocalizationSpec& r) {
  switch (r.mode) {
    case LocalizationSpec::kLocalAtPrime: return g.localized(r.prime);
    case LocalizationSpec::kRationals: return g.rationalized();
    default: return g;
  }
}

std::string FgAbGroup::render() const {
  std::vector<std::string> parts;
  if (free_rank == 1)
    parts.push_back("Z");
  else if (free_rank > 1)
    parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : torsion) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += " ⊕ " + parts[i];
  return out;
}

FgAbGroup FgAbGroup::localized(const Int& p) const {
  // v_p is monotone along a divisibility chain, so the chain survives
  std::vector<Int> t2;
  for (const auto& d : torsion) {
    long v = vp(d, p);
    if (v > 0) t2.push_back(ipow(p, v));
  }
  return {free_rank, t2};
}

FgAbGroup coker_group(const IntMatrix& rel, long ambient_rank) {
  assert(rel.rows() <= ambient_rank);
  SmithForm f = smith(rel);
  FgAbGroup g;
  g.free_rank = ambient_rank - f.rank;
  for (int i = 0; i < f.rank; ++i)
    if (f.diag[i] > 1) g.torsion.push_back(f.diag[i]);
  return g;
}

FgAbGroup group_from_cyclic(long free_rank, std::vector<Int> orders) {
  std::vector<Int> ds;
  for (auto& d : orders) {
    Int a = iabs(d);
    if (a == 0)
      ++free_rank;
    else if (a > 1)
      ds.push_back(a);
  }
  divisibility_fix(ds);
  ds.erase(std::remove(ds.begin(), ds.end(), Int(1)), ds.end());
  return {free_rank, ds};
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  return group_from_cyclic(a.free_rank + b.free_rank, std::move(orders));
}

FgAbGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) {
  // Hom(Z, Z/e) = Z/e, Hom(Z/d, Z/e) = Z/gcd(d, e), Hom(Z/d, Z) = 0
  long fr = a.free_rank * b.free_rank;
  std::vector<Int> orders;
  for (const auto& e : b.torsion)
    for (long i = 0; i < a.free_rank; ++i) orders.push_back(e);
  for (const auto& d : a.torsion)
    for (const auto& e : b.torsion) orders.push_back(igcd(d, e));
  return group_from_cyclic(fr, std::move(orders));
}

}  // namespace cathom
