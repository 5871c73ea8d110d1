#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace flowlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigRat rat(long num, long den = 1) { return BigRat(num, den); }

inline double to_double(const BigRat& q) { return q.convert_to<double>(); }

inline std::string to_string(const BigRat& q) { return q.str(); }

inline int sign_of(const BigRat& q) { return q.sign(); }

/// q^e for integer e (e < 0 requires q != 0).
BigRat pow_rat(const BigRat& q, long e);

}  // namespace flowlab
