#include "planeaut/field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pa {

Field Field::cyclotomic(int k)
{
    if (k < 1) throw SchemaError("cyclotomic order must be positive");
    Field f;
    f.k = k;
    f.cyc = true;
    return f;
}

Field Field::over(char v) const
{
    if (ratfun) throw SchemaError("rational-function towers are not supported");
    Field f = *this;
    f.ratfun = true;
    f.var = v;
    return f;
}

Field Field::base() const
{
    Field f = *this;
    f.ratfun = false;
    f.var = 'x';
    return f;
}

int Field::basis_size() const { return euler_phi(k); }

std::string Field::name() const
{
    std::string s = cyc ? "Q(zeta" + std::to_string(k) + ")" : "Q";
    if (ratfun) s += std::string("(") + var + ")";
    return s;
}

Field Field::parse(const std::string& s)
{
    Field f;
    size_t i = 0;
    if (s.compare(0, 1, "Q") != 0) throw SchemaError("bad field descriptor: " + s);
    i = 1;
    if (s.compare(i, 6, "(zeta_") == 0 || s.compare(i, 5, "(zeta") == 0) {
        i += s.compare(i, 6, "(zeta_") == 0 ? 6 : 5;
        size_t j = s.find(')', i);
        if (j == std::string::npos || j == i) throw SchemaError("bad field descriptor: " + s);
        int k = 0;
        for (size_t p = i; p < j; ++p) {
            if (!isdigit(static_cast<unsigned char>(s[p]))) throw SchemaError("bad field descriptor: " + s);
            k = k * 10 + (s[p] - '0');
            if (k > 10000) throw SchemaError("cyclotomic order too large");
        }
        f = Field::cyclotomic(k);
        i = j + 1;
    }
    if (i < s.size()) {
        if (s.size() != i + 3 || s[i] != '(' || s[i + 2] != ')' || !isalpha(static_cast<unsigned char>(s[i + 1])))
            throw SchemaError("bad field descriptor: " + s);
        f = f.over(s[i + 1]);
    }
    return f;
}

int euler_phi(int k)
{
    int r = k;
    for (int p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        while (k % p == 0) k /= p;
        r -= r / p;
    }
    if (k > 1) r -= r / k;
    return r;
}

const up::Poly<mpq_class>& cyclotomic_poly(int k)
{
    static std::recursive_mutex mu;
    static std::map<int, up::Poly<mpq_class>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    up::Poly<mpq_class> p(k + 1, mpq_class(0));
    p[0] = -1;
    p[k] = 1;
    for (int d = 1; d < k; ++d)
        if (k % d == 0) p = up::divmod(p, cyclotomic_poly(d)).first;
    return cache.emplace(k, p).first->second;
}

// ---- Num ----

Num::Num(int k, const mpq_class& r) : k_(k)
{
    if (big()) {
        if (sgn(r) != 0) c_.push_back(r);
    } else {
        r_ = r;
    }
}

Num Num::from_coeffs(int k, up::Poly<mpq_class> c)
{
    Num n;
    n.k_ = k;
    if (n.big()) {
        up::trim(c);
        const auto& phi = cyclotomic_poly(k);
        // phi is monic: fold the top coefficients down in place
        size_t d = phi.size() - 1;
        for (size_t i = c.size(); i-- > d;) {
            if (c[i] == 0) continue;
            size_t sh = i - d;
            for (size_t j = 0; j < d; ++j)
                if (phi[j] != 0) c[sh + j] -= c[i] * phi[j];
        }
        if (c.size() > d) c.resize(d);
        up::trim(c);
        n.c_ = std::move(c);
    } else {
        // Q(zeta_1) = Q(zeta_2) = Q with zeta = 1 or -1
        mpq_class z = k == 2 ? -1 : 1;
        n.r_ = up::eval(c, z);
    }
    return n;
}

Num Num::zeta(int k, long j)
{
    j %= k;
    if (j < 0) j += k;
    up::Poly<mpq_class> c(j + 1, mpq_class(0));
    c[j] = 1;
    return from_coeffs(k, c);
}

bool Num::rational() const { return !big() || c_.size() <= 1; }

mpq_class Num::to_rational() const
{
    if (!big()) return r_;
    if (c_.size() > 1) throw MathError("NotRational", str());
    return c_.empty() ? mpq_class(0) : c_[0];
}

std::vector<mpq_class> Num::coeffs() const
{
    if (!big()) return {r_};
    std::vector<mpq_class> v(euler_phi(k_), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    return v;
}

bool Num::is_zero() const { return big() ? c_.empty() : sgn(r_) == 0; }

bool Num::is_one() const { return big() ? (c_.size() == 1 && c_[0] == 1) : r_ == 1; }

void Num::check(const Num& o) const
{
    if (k_ != o.k_) fail("DescriptorMismatch", "cyclotomic orders differ");
}

Num Num::operator+(const Num& o) const
{
    check(o);
    Num r;
    r.k_ = k_;
    if (big()) r.c_ = up::add(c_, o.c_);
    else r.r_ = r_ + o.r_;
    return r;
}

Num Num::operator-() const
{
    Num r;
    r.k_ = k_;
    if (big()) r.c_ = up::neg(c_);
    else r.r_ = -r_;
    return r;
}

Num Num::operator-(const Num& o) const { return *this + (-o); }

Num Num::operator*(const Num& o) const
{
    check(o);
    if (!big()) {
        Num r;
        r.k_ = k_;
        r.r_ = r_ * o.r_;
        return r;
    }
    return from_coeffs(k_, up::mul(c_, o.c_));
}

Num Num::inv() const
{
    if (is_zero()) fail("DivisionByZero");
    if (!big()) {
        Num r;
        r.k_ = k_;
        r.r_ = 1 / r_;
        return r;
    }
    auto [g, s] = up::inv_mod(c_, cyclotomic_poly(k_));
    if (g.size() != 1) fail("DivisionByZero", "non-invertible cyclotomic element");
    return from_coeffs(k_, s);
}

Num Num::operator/(const Num& o) const { return *this * o.inv(); }

Num Num::pow(long e) const
{
    if (e < 0) return inv().pow(-e);
    Num r(k_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Num::operator==(const Num& o) const
{
    if (k_ != o.k_) return false;
    return big() ? c_ == o.c_ : r_ == o.r_;
}

int Num::compare(const Num& o) const
{
    check(o);
    if (!big()) return cmp(r_, o.r_) < 0 ? -1 : (r_ == o.r_ ? 0 : 1);
    auto a = coeffs(), b = o.coeffs();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    return 0;
}

std::string Num::str() const
{
    if (!big()) return r_.get_str();
    std::ostringstream os;
    os << "[";
    auto v = coeffs();
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << "]_" << k_;
    return os.str();
}

// ---- Scalar ----

Scalar Scalar::zero(const Field& f) { return from_int(f, 0); }
Scalar Scalar::one(const Field& f) { return from_int(f, 1); }
Scalar Scalar::from_int(const Field& f, long n) { return from_mpq(f, mpq_class(n)); }
Scalar Scalar::from_mpq(const Field& f, const mpq_class& q) { return from_num(f, Num(f.k, q)); }

Scalar Scalar::from_num(const Field& f, const Num& a)
{
    if (a.k() != f.k) fail("DescriptorMismatch", "base element from another field");
    Scalar s;
    s.f_ = f;
    if (f.ratfun) {
        if (!a.is_zero()) s.num_.push_back(a);
        s.den_.push_back(Num(f.k, 1));
    } else {
        s.a_ = a;
    }
    return s;
}

Scalar Scalar::zeta(const Field& f, int k, long j)
{
    if (k <= 2) return from_int(f, (k == 2 && (j % 2 != 0)) ? -1 : 1);
    if (!f.cyc || f.k % k != 0) fail("FieldTooSmall", "no primitive " + std::to_string(k) + "-th root of unity in " + f.name());
    return from_num(f, Num::zeta(f.k, j * (f.k / k)));
}

Scalar Scalar::var(const Field& f)
{
    if (!f.ratfun) fail("DescriptorMismatch", "field has no variable");
    return fraction(f, {Num(f.k, 0), Num(f.k, 1)}, {Num(f.k, 1)});
}

Scalar Scalar::fraction(const Field& f, NPoly num, NPoly den)
{
    if (!f.ratfun) fail("DescriptorMismatch", "fraction over a non-rational-function field");
    up::trim(num);
    up::trim(den);
    if (den.empty()) fail("DivisionByZero");
    for (const auto& c : num)
        if (c.k() != f.k) fail("DescriptorMismatch");
    for (const auto& c : den)
        if (c.k() != f.k) fail("DescriptorMismatch");
    Scalar s;
    s.f_ = f;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.normalize();
    return s;
}

void Scalar::normalize()
{
    if (num_.empty()) {
        den_ = {Num(f_.k, 1)};
        return;
    }
    if (den_.size() > 1) {
        auto g = up::gcd(num_, den_);
        if (g.size() > 1) {
            num_ = up::divmod(num_, g).first;
            den_ = up::divmod(den_, g).first;
        }
    }
    if (!den_.back().is_one()) {
        Num il = den_.back().inv();
        num_ = up::scale(num_, il);
        den_ = up::scale(den_, il);
    }
}

bool Scalar::is_constant() const { return !f_.ratfun || (num_.size() <= 1 && den_.size() == 1); }

Num Scalar::constant_value() const
{
    if (!f_.ratfun) return a_;
    if (!is_constant()) fail("NotConstant", str());
    return num_.empty() ? Num(f_.k, 0) : num_[0];
}

bool Scalar::is_zero() const { return f_.ratfun ? num_.empty() : a_.is_zero(); }

bool Scalar::is_one() const
{
    return f_.ratfun ? (num_.size() == 1 && den_.size() == 1 && num_[0].is_one()) : a_.is_one();
}

void Scalar::check(const Scalar& o) const
{
    if (!(f_ == o.f_)) fail("DescriptorMismatch", f_.name() + " vs " + o.f_.name());
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check(o);
    Scalar r;
    r.f_ = f_;
    if (!f_.ratfun) {
        r.a_ = a_ + o.a_;
        return r;
    }
    if (o.num_.empty()) return *this;
    if (num_.empty()) return o;
    if (den_ == o.den_) {
        r.num_ = up::add(num_, o.num_);
        r.den_ = den_;
    } else {
        r.num_ = up::add(up::mul(num_, o.den_), up::mul(o.num_, den_));
        r.den_ = up::mul(den_, o.den_);
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    if (f_.ratfun) r.num_ = up::neg(num_);
    else r.a_ = -a_;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const
{
    check(o);
    Scalar r;
    r.f_ = f_;
    if (!f_.ratfun) {
        r.a_ = a_ * o.a_;
        return r;
    }
    if (num_.empty() || o.num_.empty()) return zero(f_);
    // cross-cancel before multiplying
    auto g1 = up::gcd(num_, o.den_);
    auto g2 = up::gcd(o.num_, den_);
    auto n1 = g1.size() > 1 ? up::divmod(num_, g1).first : num_;
    auto d2 = g1.size() > 1 ? up::divmod(o.den_, g1).first : o.den_;
    auto n2 = g2.size() > 1 ? up::divmod(o.num_, g2).first : o.num_;
    auto d1 = g2.size() > 1 ? up::divmod(den_, g2).first : den_;
    r.num_ = up::mul(n1, n2);
    r.den_ = up::mul(d1, d2);
    if (!r.den_.back().is_one()) r.normalize();
    return r;
}

Scalar Scalar::inv() const
{
    if (is_zero()) fail("DivisionByZero");
    Scalar r;
    r.f_ = f_;
    if (!f_.ratfun) {
        r.a_ = a_.inv();
        return r;
    }
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(long e) const
{
    if (e < 0) return inv().pow(-e);
    Scalar r = one(f_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const
{
    if (!(f_ == o.f_)) return false;
    return f_.ratfun ? (num_ == o.num_ && den_ == o.den_) : a_ == o.a_;
}

Scalar Scalar::specialize(const Num& a) const
{
    Field b = f_.base();
    if (!f_.ratfun) return *this;
    Num d = up::eval(den_, a);
    if (d.is_zero()) fail("NotIntegral", "pole at " + a.str());
    return from_num(b, up::eval(num_, a) / d);
}

std::string Scalar::str() const
{
    if (!f_.ratfun) return a_.str();
    auto ps = [&](const NPoly& p) {
        if (p.empty()) return std::string("0");
        std::string s;
        for (int i = up::deg(p); i >= 0; --i) {
            if (p[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += p[i].str();
            if (i > 0) s += std::string("*") + f_.var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    };
    if (den_.size() == 1) return ps(num_);
    return "(" + ps(num_) + ")/(" + ps(den_) + ")";
}

// ---- valuation ----

DVRContext::DVRContext(const Field& f, const Num& a) : field(f), center(a)
{
    if (!f.ratfun) fail("DescriptorMismatch", "DVR needs a rational-function field");
    if (a.k() != f.k) fail("DescriptorMismatch", "center outside the base field");
}

Scalar DVRContext::uniformizer() const
{
    return Scalar::fraction(field, {-center, Num(field.k, 1)}, {Num(field.k, 1)});
}

int multiplicity(const NPoly& p, const Num& a)
{
    if (p.empty()) return std::numeric_limits<int>::max();
    if (a.is_zero()) return static_cast<int>(up::order(p));
    NPoly q = p;
    int m = 0;
    while (true) {
        // synthetic division: q = (x - a) s + rem
        NPoly s(q.size() - 1);
        Num rem = q.back();
        for (int i = up::deg(q) - 1; i >= 0; --i) {
            s[static_cast<size_t>(i)] = rem;
            rem = q[static_cast<size_t>(i)] + rem * a;
        }
        if (!rem.is_zero()) return m;
        q = std::move(s);
        ++m;
    }
}

Val valuation(const Scalar& a, const DVRContext& ctx)
{
    if (!(a.field() == ctx.field)) fail("DescriptorMismatch", "valuation outside the DVR's field");
    if (a.is_zero()) return kValInf;
    return static_cast<Val>(multiplicity(a.numer(), ctx.center)) - multiplicity(a.denom(), ctx.center);
}

Scalar residue(const Scalar& a, const DVRContext& ctx)
{
    Val v = valuation(a, ctx);
    if (v < 0) fail("NotIntegral", a.str());
    if (v > 0) return Scalar::zero(ctx.field.base());
    return a.specialize(ctx.center);
}

}  // namespace pa
