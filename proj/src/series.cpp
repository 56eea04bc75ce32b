#include "uphocore/series.hpp"

#include <sstream>
#include <stdexcept>

namespace upho {

Series Series::one(int degree_bound) {
    Series s;
    s.coeff.assign(static_cast<size_t>(degree_bound) + 1, 0);
    s.coeff[0] = 1;
    return s;
}

Series mul_trunc(const Series& a, const Series& b) {
    size_t n = std::min(a.coeff.size(), b.coeff.size());
    Series out;
    out.coeff.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a.coeff[i] == 0) continue;
        for (size_t j = 0; i + j < n; ++j)
            out.coeff[i + j] += a.coeff[i] * b.coeff[j];
    }
    return out;
}

Series invert(const Series& s) {
    if (s.coeff.empty()) throw std::invalid_argument("invert: empty series");
    const Int& c0 = s.coeff[0];
    if (c0 != 1 && c0 != -1)
        throw std::invalid_argument("invert: constant term must be +1 or -1, got " + c0.str());
    size_t n = s.coeff.size();
    Series t;
    t.coeff.assign(n, 0);
    t.coeff[0] = c0;  // 1/c0 == c0 for c0 = +-1
    for (size_t k = 1; k < n; ++k) {
        Int acc = 0;
        for (size_t j = 1; j <= k; ++j) acc += s.coeff[j] * t.coeff[k - j];
        t.coeff[k] = -acc * c0;
    }
    return t;
}

std::string Series::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeff.size(); ++i) {
        const Int& c = coeff[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = abs(c);
        if (i == 0) {
            os << a.str();
        } else {
            if (a != 1) os << a.str();
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace upho
