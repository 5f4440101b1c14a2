#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sg {

// Arbitrary-precision integers and exact rationals. Every solver-facing
// comparison in this library goes through these types; no floating point
// is allowed on any verdict path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Rat rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& x) { return floor_div(x.numerator(), x.denominator()); }

inline Int rat_ceil(const Rat& x) { return -floor_div(-x.numerator(), x.denominator()); }

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x) {
    if (x.denominator() == 1) return x.numerator().str();
    return x.numerator().str() + "/" + x.denominator().str();
}

// Parses "p", "-p" or "p/q". Whitespace is not accepted.
inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s), Int(1));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();  // unreachable
}

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

// The fraction with the smallest denominator in [lo, hi] (ties broken towards
// the smaller numerator). Classic continued-fraction descent.
inline Rat simplest_between(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
    if (lo == hi) return lo;
    Int fl = rat_floor(lo);
    if (Rat(fl, 1) >= lo) return Rat(fl, 1);          // lo itself integral
    if (Rat(fl + 1, 1) <= hi) return Rat(fl + 1, 1);  // an integer inside
    // Recurse on the fractional parts of the reciprocals.
    Rat r = simplest_between(Rat(hi.denominator(), hi.numerator() - fl * hi.denominator()),
                             Rat(lo.denominator(), lo.numerator() - fl * lo.denominator()));
    return Rat(fl * r.numerator() + r.denominator(), r.numerator());
}

}  // namespace sg
