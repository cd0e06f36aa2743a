#pragma once

#include <random>

#include "planeaut/plane.hpp"

namespace pa::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Num random_num(Rng& rng, int k, long bound = 9)
{
    up::Poly<mpq_class> c;
    for (int i = 0; i < euler_phi(k); ++i) {
        mpq_class v(uniform(rng, -bound, bound), uniform(rng, 1, 3));
        v.canonicalize();
        c.push_back(v);
    }
    return Num::from_coeffs(k, c);
}

inline Num random_nonzero_num(Rng& rng, int k, long bound = 9)
{
    for (;;) {
        Num n = random_num(rng, k, bound);
        if (!n.is_zero()) return n;
    }
}

inline NPoly random_npoly(Rng& rng, int k, int deg, long bound = 5)
{
    NPoly p;
    for (int i = 0; i <= deg; ++i) p.push_back(random_num(rng, k, bound));
    up::trim(p);
    return p;
}

inline Scalar random_scalar(Rng& rng, const Field& f, long bound = 9)
{
    if (!f.ratfun) return Scalar::from_num(f, random_num(rng, f.k, bound));
    NPoly den;
    while (den.empty()) den = random_npoly(rng, f.k, static_cast<int>(uniform(rng, 0, 2)), 3);
    return Scalar::fraction(f, random_npoly(rng, f.k, static_cast<int>(uniform(rng, 0, 2)), 3), den);
}

inline Scalar random_nonzero(Rng& rng, const Field& f, long bound = 9)
{
    for (;;) {
        Scalar s = random_scalar(rng, f, bound);
        if (!s.is_zero()) return s;
    }
}

inline Scalar random_int_scalar(Rng& rng, const Field& f, long lo, long hi, bool nonzero = false)
{
    for (;;) {
        long v = uniform(rng, lo, hi);
        if (!nonzero || v) return Scalar::from_int(f, v);
    }
}

// Integer affine map with nonzero determinant, entries in [-9, 9].
inline Affine random_affine(Rng& rng, const Field& f, bool linear = false)
{
    for (;;) {
        Affine a{random_int_scalar(rng, f, -9, 9), random_int_scalar(rng, f, -9, 9),
                 random_int_scalar(rng, f, -9, 9), random_int_scalar(rng, f, -9, 9),
                 Scalar::zero(f), Scalar::zero(f)};
        if (!linear) {
            a.b1 = random_int_scalar(rng, f, -9, 9);
            a.b2 = random_int_scalar(rng, f, -9, 9);
        }
        if (!a.det().is_zero()) return a;
    }
}

inline Affine random_affine_not_in_E(Rng& rng, const Field& f)
{
    for (;;) {
        Affine a = random_affine(rng, f);
        if (!a.in_E()) return a;
    }
}

// Elementary (z1 + p(z2), z2) with deg p = d, integer coefficients in [-9, 9].
inline Elementary random_shear(Rng& rng, const Field& f, int d)
{
    SPoly p;
    for (int i = 0; i < d; ++i) p.push_back(random_int_scalar(rng, f, -9, 9));
    p.push_back(random_int_scalar(rng, f, -9, 9, true));
    return Elementary::shear(f, p);
}

struct TameSample {
    std::vector<int> degrees;
    TameDecomposition word;
    PlaneEndo map;
};

// Reduced word a_{m+1} e_m ... e_1 a_1 with the given degrees.
inline TameSample random_tame(Rng& rng, const Field& f, const std::vector<int>& degrees)
{
    TameSample s;
    s.degrees = degrees;
    s.word.a.push_back(random_affine(rng, f));
    for (size_t j = 0; j < degrees.size(); ++j) {
        s.word.e.push_back(random_shear(rng, f, degrees[j]));
        s.word.a.push_back(j + 1 < degrees.size() ? random_affine_not_in_E(rng, f) : random_affine(rng, f));
    }
    s.map = s.word.recompose();
    return s;
}

inline std::vector<int> random_degrees(Rng& rng, int max_len, int lo = 2, int hi = 4)
{
    std::vector<int> d(uniform(rng, 0, max_len));
    for (auto& x : d) x = static_cast<int>(uniform(rng, lo, hi));
    return d;
}

}  // namespace pa::testing
