#pragma once

// Dense univariate polynomials as coefficient vectors in ascending degree.
// The zero polynomial is the empty vector. T needs zero_like, one_like and
// is_zero overloads found by ADL or declared before instantiation.

#include <gmpxx.h>

#include <algorithm>
#include <utility>
#include <vector>

namespace pa {

inline bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
inline mpq_class zero_like(const mpq_class&) { return 0; }
inline mpq_class one_like(const mpq_class&) { return 1; }

namespace up {

template <class T>
using Poly = std::vector<T>;

template <class T>
void trim(Poly<T>& p)
{
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class T>
int deg(const Poly<T>& p) { return static_cast<int>(p.size()) - 1; }

template <class T>
Poly<T> add(const Poly<T>& a, const Poly<T>& b)
{
    if (a.size() < b.size()) return add(b, a);
    Poly<T> r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    trim(r);
    return r;
}

template <class T>
Poly<T> neg(const Poly<T>& a)
{
    Poly<T> r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(-c);
    return r;
}

template <class T>
Poly<T> sub(const Poly<T>& a, const Poly<T>& b) { return add(a, neg(b)); }

template <class T>
Poly<T> mul(const Poly<T>& a, const Poly<T>& b)
{
    if (a.empty() || b.empty()) return {};
    Poly<T> r(a.size() + b.size() - 1, zero_like(a[0]));
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    trim(r);
    return r;
}

template <class T>
Poly<T> scale(const Poly<T>& a, const T& c)
{
    if (is_zero(c)) return {};
    Poly<T> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    return r;
}

// a = q*b + r with deg r < deg b; b nonzero.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b)
{
    Poly<T> r = a;
    if (r.size() < b.size()) return {{}, r};
    Poly<T> q(r.size() - b.size() + 1, zero_like(b[0]));
    const T inv_lc = one_like(b[0]) / b.back();
    for (int i = deg(r); i >= deg(b); --i) {
        if (is_zero(r[i])) continue;
        T c = r[i] * inv_lc;
        int s = i - deg(b);
        q[s] = c;
        for (size_t j = 0; j < b.size(); ++j) r[s + j] = r[s + j] - c * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

template <class T>
Poly<T> monic(const Poly<T>& a)
{
    if (a.empty()) return a;
    return scale(a, one_like(a.back()) / a.back());
}

template <class T>
size_t order(const Poly<T>& p)
{
    size_t i = 0;
    while (i < p.size() && is_zero(p[i])) ++i;
    return i;
}

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b)
{
    // gcd(c x^k, p) = x^min(k, ord p); denominators are often powers of x
    if (!a.empty() && !b.empty() && (order(a) + 1 == a.size() || order(b) + 1 == b.size())) {
        Poly<T> g(std::min(order(a), order(b)) + 1, zero_like(a.back()));
        g.back() = one_like(a.back());
        return g;
    }
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

// Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
template <class T>
std::pair<Poly<T>, Poly<T>> inv_mod(const Poly<T>& a, const Poly<T>& m)
{
    Poly<T> r0 = m, r1 = a, s0, s1{one_like(m.back())};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly<T> s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    T lc = r0.back();
    T il = one_like(lc) / lc;
    return {scale(r0, il), divmod(scale(s0, il), m).second};
}

template <class T>
T eval(const Poly<T>& p, const T& x)
{
    if (p.empty()) return zero_like(x);
    T r = p.back();
    for (int i = deg(p) - 1; i >= 0; --i) r = r * x + p[i];
    return r;
}

template <class T>
Poly<T> derivative(const Poly<T>& p)
{
    Poly<T> r;
    for (size_t i = 1; i < p.size(); ++i) {
        T c = zero_like(p[i]);
        for (size_t j = 0; j < i; ++j) c = c + p[i];
        r.push_back(c);
    }
    trim(r);
    return r;
}

// p(c*x + d)
template <class T>
Poly<T> affine_subst(const Poly<T>& p, const T& c, const T& d)
{
    Poly<T> r;
    Poly<T> lin{d, c};
    trim(lin);
    for (int i = deg(p); i >= 0; --i) {
        r = mul(r, lin);
        r = add(r, Poly<T>{p[i]});
    }
    return r;
}

}  // namespace up
}  // namespace pa
