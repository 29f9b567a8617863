#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace tourprof {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace tourprof
