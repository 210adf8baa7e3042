#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cathom {

using Int = boost::multiprecision::cpp_int;

inline Int iabs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int isign(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Int igcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int ilcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return iabs(a / igcd(a, b) * b);
}

// g = s*a + t*b, g >= 0
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int r0 = a, r1 = b;
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1; r1 = r2;
    Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
    Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  s = s0; t = t0;
  return r0;
}

// quotient minimizing |b - q*a|, a != 0
inline Int nearest_quotient(const Int& b, const Int& a) {
  Int q = b / a;
  Int r = b - q * a;
  if (2 * iabs(r) > iabs(a)) q += (isign(r) == isign(a) ? 1 : -1);
  return q;
}

inline long vp(Int n, const Int& p) {
  n = iabs(n);
  long v = 0;
  while (n != 0 && n % p == 0) { n /= p; ++v; }
  return v;
}

inline Int ipow(const Int& p, long e) {
  Int r = 1, b = p;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string istr(const Int& v) { return v.str(); }

}  // namespace cathom
