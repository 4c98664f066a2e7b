#include "matnum/types.hpp"

#include <functional>
#include <sstream>

namespace matnum {

std::size_t hash_int(const Int& v) {
  // Small values dominate every workload here; fall back to the decimal
  // string only when the value does not fit a machine word.
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) {
    return std::hash<long long>{}(v.convert_to<long long>());
  }
  return std::hash<std::string>{}(v.str());
}

std::size_t VecZHash::operator()(const VecZ& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const Int& x : v) {
    h ^= hash_int(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VecZ vecz(std::initializer_list<long long> xs) {
  VecZ v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

std::string to_string(const VecZ& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << "]";
  return os.str();
}

bool lex_less(const VecZ& a, const VecZ& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_zero_vec(const VecZ& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

VecZ add(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecZ sub(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecZ negate(const VecZ& a) {
  VecZ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

}  // namespace matnum
