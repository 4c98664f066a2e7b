#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace matnum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using VecZ = std::vector<Int>;

std::size_t hash_int(const Int& v);

struct VecZHash {
  std::size_t operator()(const VecZ& v) const;
};

VecZ vecz(std::initializer_list<long long> xs);
std::string to_string(const VecZ& v);

bool lex_less(const VecZ& a, const VecZ& b);
bool is_zero_vec(const VecZ& v);
VecZ add(const VecZ& a, const VecZ& b);
VecZ sub(const VecZ& a, const VecZ& b);
VecZ negate(const VecZ& a);

}  // namespace matnum
