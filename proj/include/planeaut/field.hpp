#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>
#include <vector>

#include "planeaut/errors.hpp"
#include "planeaut/upoly.hpp"

namespace pa {

// Coefficient field: Q, Q(zeta_k), or one transcendental layer over either.
struct Field {
    int k = 1;
    bool cyc = false;
    bool ratfun = false;
    char var = 'x';

    static Field rationals() { return {}; }
    static Field cyclotomic(int k);
    Field over(char v = 'x') const;
    Field base() const;
    int basis_size() const;

    // "Q", "Q(zeta3)", "Q(x)", "Q(zeta6)(x)".
    std::string name() const;
    static Field parse(const std::string& s);

    bool operator==(const Field&) const = default;
};

int euler_phi(int k);
const up::Poly<mpq_class>& cyclotomic_poly(int k);

// Element of Q(zeta_k) in the power basis mod Phi_k. k <= 2 is plain Q.
class Num {
public:
    Num() = default;
    Num(int k, const mpq_class& r);
    static Num from_coeffs(int k, up::Poly<mpq_class> c);
    static Num zeta(int k, long j = 1);

    int k() const { return k_; }
    bool rational() const;
    mpq_class to_rational() const;
    std::vector<mpq_class> coeffs() const;

    bool is_zero() const;
    bool is_one() const;

    Num operator+(const Num& o) const;
    Num operator-(const Num& o) const;
    Num operator-() const;
    Num operator*(const Num& o) const;
    Num operator/(const Num& o) const;
    Num inv() const;
    Num pow(long e) const;

    bool operator==(const Num& o) const;
    bool operator!=(const Num& o) const { return !(*this == o); }
    // Total order: rationals by value, cyclotomics lexicographic in the basis.
    int compare(const Num& o) const;

    std::string str() const;

private:
    bool big() const { return euler_phi(k_) > 1; }
    void check(const Num& o) const;

    int k_ = 1;
    mpq_class r_;               // used when phi(k) == 1
    up::Poly<mpq_class> c_;     // used when phi(k) > 1, trimmed
};

inline bool is_zero(const Num& a) { return a.is_zero(); }
inline Num zero_like(const Num& a) { return Num(a.k(), 0); }
inline Num one_like(const Num& a) { return Num(a.k(), 1); }

using NPoly = up::Poly<Num>;

// Element of a Field. Rational functions are num/den with den monic, gcd 1.
class Scalar {
public:
    Scalar() = default;
    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_int(const Field& f, long n);
    static Scalar from_mpq(const Field& f, const mpq_class& q);
    static Scalar from_num(const Field& f, const Num& a);
    static Scalar zeta(const Field& f, int k, long j = 1);
    static Scalar var(const Field& f);
    static Scalar fraction(const Field& f, NPoly num, NPoly den);

    const Field& field() const { return f_; }
    const Num& num_value() const { return a_; }
    const NPoly& numer() const { return num_; }
    const NPoly& denom() const { return den_; }
    // Constant in x (or not a rational-function field).
    bool is_constant() const;
    Num constant_value() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;
    Scalar pow(long e) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Substitute x = a; throws NotIntegral at a pole.
    Scalar specialize(const Num& a) const;

    std::string str() const;

private:
    void check(const Scalar& o) const;
    void normalize();

    Field f_;
    Num a_;
    NPoly num_, den_;
};

inline bool is_zero(const Scalar& a) { return a.is_zero(); }
inline Scalar zero_like(const Scalar& a) { return Scalar::zero(a.field()); }
inline Scalar one_like(const Scalar& a) { return Scalar::one(a.field()); }

// The local ring kappa[x]_(x-a).
struct DVRContext {
    Field field;
    Num center;
    DVRContext(const Field& f, const Num& a);
    Scalar uniformizer() const;
};

using Val = long;
constexpr Val kValInf = std::numeric_limits<long>::max();

int multiplicity(const NPoly& p, const Num& a);
Val valuation(const Scalar& a, const DVRContext& ctx);
Scalar residue(const Scalar& a, const DVRContext& ctx);  // in ctx.field.base()

}  // namespace pa
