#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace ts {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;

// Floor division and non-negative remainder (b != 0).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t);

Rat floor_rat(const Rat& r);   // largest integer <= r, as a rational
Rat frac_rat(const Rat& r);    // r - floor(r), in [0,1)

// "p/q" in lowest terms with q > 0, or "p" when q == 1.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

inline Rat to_rat(const Int& a) { return Rat(a); }
long long to_ll(const Int& a);

}  // namespace ts
