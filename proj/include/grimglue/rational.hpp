#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace grimglue {

// Exact coefficient arithmetic. Every recurrence in the series engines runs
// over rationals so that order-vanishing statements are equality tests.
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& q) { return q.convert_to<double>(); }

// Serialized as "num/den" (den omitted when 1) for the CSV coefficient tables.
inline std::string rational_string(const rational& q) {
    std::string num = numerator(q).str();
    if (denominator(q) == 1) return num;
    return num + "/" + denominator(q).str();
}

}  // namespace grimglue
