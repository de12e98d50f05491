#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace ranklab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

}  // namespace ranklab
