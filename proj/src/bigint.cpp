#include "toricstack/bigint.hpp"

#include <stdexcept>

namespace ts {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int mod_floor(const Int& a, const Int& b) {
    Int r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int x = a < 0 ? Int(-a) : a;
    Int y = b < 0 ? Int(-b) : b;
    while (y != 0) {
        Int r = x % y;
        x = y;
        y = r;
    }
    return x;
}

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int l = a / g * b;
    return l < 0 ? Int(-l) : l;
}

Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * cs; old_s = cs; cs = tmp;
        tmp = old_t - q * ct; old_t = ct; ct = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    s = old_s;
    t = old_t;
    return old_r;
}

Rat floor_rat(const Rat& r) {
    Int n = boost::multiprecision::numerator(r);
    Int d = boost::multiprecision::denominator(r);
    return Rat(floor_div(n, d));
}

Rat frac_rat(const Rat& r) { return r - floor_rat(r); }

std::string rat_to_string(const Rat& r) {
    Int n = boost::multiprecision::numerator(r);
    Int d = boost::multiprecision::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

long long to_ll(const Int& a) { return a.convert_to<long long>(); }

}  // namespace ts
