#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace upho {

using Int = boost::multiprecision::cpp_int;

/// Truncated power series with exact integer coefficients c_0..c_N,
/// all arithmetic performed modulo x^(N+1).
struct Series {
    std::vector<Int> coeff;

    Series() = default;
    explicit Series(std::vector<Int> c) : coeff(std::move(c)) {}

    int degree_bound() const { return static_cast<int>(coeff.size()) - 1; }

    const Int& operator[](int i) const { return coeff[static_cast<size_t>(i)]; }
    Int& operator[](int i) { return coeff[static_cast<size_t>(i)]; }

    bool operator==(const Series& o) const { return coeff == o.coeff; }

    static Series one(int degree_bound);

    std::string to_string() const;
};

/// Product truncated to the shorter of the two operands.
Series mul_trunc(const Series& a, const Series& b);

/// Multiplicative inverse modulo x^(N+1). Requires c_0 = +-1.
Series invert(const Series& s);

}  // namespace upho
