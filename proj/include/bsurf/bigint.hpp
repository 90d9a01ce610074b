#ifndef BSURF_BIGINT_HPP
#define BSURF_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace bsurf {

// All bound arithmetic is exact; BigInt carries group orders and indices
// that do not fit in 64 bits (e.g. |GL_r(F_3)|^r).
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, long long exp) {
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

}  // namespace bsurf

#endif
