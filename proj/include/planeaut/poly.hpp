#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "planeaut/field.hpp"

namespace pa {

using Mono = std::pair<int, int>;

// Graded-lex: total degree, then z1 exponent.
struct GrLex {
    bool operator()(const Mono& a, const Mono& b) const
    {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da < db;
        return a.first < b.first;
    }
};

constexpr int kDegNegInf = std::numeric_limits<int>::min();

using SPoly = up::Poly<Scalar>;  // univariate, ascending

class BiPoly {
public:
    using Terms = std::map<Mono, Scalar, GrLex>;

    BiPoly() = default;
    explicit BiPoly(const Field& f) : f_(f) {}
    static BiPoly constant(const Scalar& c);
    static BiPoly monomial(const Scalar& c, int i, int j);
    static BiPoly z1(const Field& f) { return monomial(Scalar::one(f), 1, 0); }
    static BiPoly z2(const Field& f) { return monomial(Scalar::one(f), 0, 1); }
    // p(z2) or p(z1)
    static BiPoly in_z2(const Field& f, const SPoly& p);
    static BiPoly in_z1(const Field& f, const SPoly& p);

    const Field& field() const { return f_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;
    int degree_z1() const;
    int degree_z2() const;
    size_t size() const { return t_.size(); }
    Scalar coeff(int i, int j) const;
    Scalar constant_term() const { return coeff(0, 0); }
    void add_term(int i, int j, const Scalar& c);
    // this += c * o
    void add_scaled(const BiPoly& o, const Scalar& c);

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const Scalar& c) const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly pow(int e) const;
    bool operator==(const BiPoly& o) const { return f_ == o.f_ && t_ == o.t_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly homogeneous_part(int d) const;
    BiPoly leading_form() const { return homogeneous_part(degree()); }
    BiPoly d_z1() const;
    BiPoly d_z2() const;

    Scalar eval(const Scalar& a, const Scalar& b) const;
    // this(g1, g2)
    BiPoly compose(const BiPoly& g1, const BiPoly& g2) const;
    // Coefficientwise map into another field; zero results are dropped.
    BiPoly map(const Field& to, const std::function<Scalar(const Scalar&)>& fn) const;

    // Coefficients of a polynomial in z2 alone; throws if z1 occurs.
    SPoly as_z2_poly() const;

    std::string str() const;

private:
    Field f_;
    Terms t_;
};

// (z1, z2) -> (p1, p2)
struct PlaneEndo {
    BiPoly p1, p2;

    PlaneEndo() = default;
    PlaneEndo(BiPoly a, BiPoly b);
    static PlaneEndo identity(const Field& f);
    static PlaneEndo swap(const Field& f);

    const Field& field() const { return p1.field(); }
    int degree() const { return std::max(p1.degree(), p2.degree()); }
    const BiPoly& operator[](int i) const { return i == 0 ? p1 : p2; }
    bool operator==(const PlaneEndo& o) const { return p1 == o.p1 && p2 == o.p2; }
    bool operator!=(const PlaneEndo& o) const { return !(*this == o); }
    bool is_identity() const { return *this == identity(field()); }
    PlaneEndo map(const Field& to, const std::function<Scalar(const Scalar&)>& fn) const
    {
        return {p1.map(to, fn), p2.map(to, fn)};
    }
    std::string str() const { return "(" + p1.str() + ", " + p2.str() + ")"; }
};

// f(g(z))
PlaneEndo compose(const PlaneEndo& f, const PlaneEndo& g);
std::pair<Scalar, Scalar> evaluate(const PlaneEndo& f, const Scalar& a, const Scalar& b);
// p(h) for univariate p
BiPoly apply_upoly(const SPoly& p, const BiPoly& h);

}  // namespace pa
