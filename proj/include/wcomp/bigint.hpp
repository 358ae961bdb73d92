#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wcomp {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }
inline BigInt from_decimal(const std::string& s) { return BigInt(s); }

}  // namespace wcomp
