#pragma once

#include "vcalc/rational_fn.hpp"
#include "vcalc/scalars.hpp"
#include "vcalc/series.hpp"

#include <random>

namespace vtest {

using namespace vcalc;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240915);
    return gen;
}

inline long rand_int(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational rand_rational(long num_mag = 9, long den_mag = 5) {
    long n = rand_int(-num_mag, num_mag);
    long d = rand_int(1, den_mag);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline QScalar rand_qscalar(int max_deg = 2) {
    Poly num, den;
    for (int k = 0; k <= max_deg; ++k) {
        num = num + Poly::monomial(rand_rational(), k);
        den = den + Poly::monomial(rand_rational(), k);
    }
    if (den.is_zero()) den = Poly(Rational(1));
    if (num.is_zero()) num = Poly(Rational(1));
    return QScalar(num, den);
}

inline QScalar rand_nonzero_qscalar(int max_deg = 2) {
    for (;;) {
        QScalar v = rand_qscalar(max_deg);
        if (!v.is_zero()) return v;
    }
}

// random exact Laurent polynomial with exponents in [lo, hi]
inline ScalarSeries rand_poly(const Ordering& ord, int lo, int hi, int nterms = 4,
                              bool rational_coeffs = true) {
    std::map<ExpVec, QScalar> t;
    for (int i = 0; i < nterms; ++i) {
        ExpVec e(ord.size());
        for (int v = 0; v < ord.size(); ++v) e[v] = static_cast<int>(rand_int(lo, hi));
        QScalar c = rational_coeffs ? QScalar(rand_rational()) : rand_qscalar(1);
        auto it = t.find(e);
        if (it == t.end())
            t.emplace(e, c);
        else
            it->second += c;
    }
    return ScalarSeries::from_terms(ord, std::move(t));
}

}  // namespace vtest
