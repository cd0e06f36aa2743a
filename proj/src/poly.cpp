#include "planeaut/poly.hpp"

#include <algorithm>
#include <optional>

namespace pa {

BiPoly BiPoly::constant(const Scalar& c) { return monomial(c, 0, 0); }

BiPoly BiPoly::monomial(const Scalar& c, int i, int j)
{
    BiPoly p(c.field());
    if (!c.is_zero()) p.t_.emplace(Mono{i, j}, c);
    return p;
}

BiPoly BiPoly::in_z2(const Field& f, const SPoly& p)
{
    BiPoly r(f);
    for (size_t j = 0; j < p.size(); ++j) r.add_term(0, static_cast<int>(j), p[j]);
    return r;
}

BiPoly BiPoly::in_z1(const Field& f, const SPoly& p)
{
    BiPoly r(f);
    for (size_t i = 0; i < p.size(); ++i) r.add_term(static_cast<int>(i), 0, p[i]);
    return r;
}

int BiPoly::degree() const
{
    if (t_.empty()) return kDegNegInf;
    const auto& m = t_.rbegin()->first;
    return m.first + m.second;
}

int BiPoly::degree_z1() const
{
    int d = kDegNegInf;
    for (const auto& [m, c] : t_) d = std::max(d, m.first);
    return d;
}

int BiPoly::degree_z2() const
{
    int d = kDegNegInf;
    for (const auto& [m, c] : t_) d = std::max(d, m.second);
    return d;
}

Scalar BiPoly::coeff(int i, int j) const
{
    auto it = t_.find({i, j});
    return it == t_.end() ? Scalar::zero(f_) : it->second;
}

void BiPoly::add_term(int i, int j, const Scalar& c)
{
    if (c.is_zero()) return;
    if (!(c.field() == f_)) fail("DescriptorMismatch", c.field().name() + " vs " + f_.name());
    auto [it, fresh] = t_.try_emplace(Mono{i, j}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void BiPoly::add_scaled(const BiPoly& o, const Scalar& c)
{
    if (!(f_ == o.f_) || !(c.field() == f_)) fail("DescriptorMismatch", "add_scaled");
    if (c.is_zero()) return;
    auto it = t_.begin();
    for (const auto& [m, v] : o.t_) {
        while (it != t_.end() && GrLex{}(it->first, m)) ++it;
        if (it != t_.end() && it->first == m) {
            it->second += v * c;
            it = it->second.is_zero() ? t_.erase(it) : std::next(it);
        } else {
            t_.emplace_hint(it, m, v * c);
        }
    }
}

BiPoly& BiPoly::operator+=(const BiPoly& o)
{
    if (!(f_ == o.f_)) fail("DescriptorMismatch", f_.name() + " vs " + o.f_.name());
    for (const auto& [m, c] : o.t_) add_term(m.first, m.second, c);
    return *this;
}

BiPoly BiPoly::operator+(const BiPoly& o) const
{
    BiPoly r = *this;
    r += o;
    return r;
}

BiPoly BiPoly::operator-() const
{
    BiPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const
{
    if (!(f_ == o.f_)) fail("DescriptorMismatch", f_.name() + " vs " + o.f_.name());
    BiPoly r(f_);
    if (t_.empty() || o.t_.empty()) return r;
    // dense accumulator indexed by (i, j)
    int w = degree_z2() + o.degree_z2() + 1, h = degree_z1() + o.degree_z1() + 1;
    std::vector<std::optional<Scalar>> acc(static_cast<size_t>(w) * h);
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) {
            auto& slot = acc[static_cast<size_t>(ma.first + mb.first) * w + ma.second + mb.second];
            if (slot) *slot += ca * cb;
            else slot = ca * cb;
        }
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            auto& slot = acc[static_cast<size_t>(i) * w + j];
            if (slot && !slot->is_zero()) r.t_.emplace_hint(r.t_.end(), Mono{i, j}, std::move(*slot));
        }
    return r;
}

BiPoly BiPoly::operator*(const Scalar& c) const
{
    if (c.is_zero()) return BiPoly(f_);
    BiPoly r = *this;
    for (auto& [m, v] : r.t_) v *= c;
    return r;
}

BiPoly BiPoly::pow(int e) const
{
    BiPoly r = constant(Scalar::one(f_)), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

BiPoly BiPoly::homogeneous_part(int d) const
{
    BiPoly r(f_);
    for (const auto& [m, c] : t_)
        if (m.first + m.second == d) r.t_.emplace(m, c);
    return r;
}

BiPoly BiPoly::d_z1() const
{
    BiPoly r(f_);
    for (const auto& [m, c] : t_)
        if (m.first > 0) r.add_term(m.first - 1, m.second, c * Scalar::from_int(f_, m.first));
    return r;
}

BiPoly BiPoly::d_z2() const
{
    BiPoly r(f_);
    for (const auto& [m, c] : t_)
        if (m.second > 0) r.add_term(m.first, m.second - 1, c * Scalar::from_int(f_, m.second));
    return r;
}

Scalar BiPoly::eval(const Scalar& a, const Scalar& b) const
{
    Scalar r = Scalar::zero(f_);
    std::map<int, Scalar> pa_, pb_;
    auto pw = [](std::map<int, Scalar>& cache, const Scalar& x, int e) -> const Scalar& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        return cache.emplace(e, x.pow(e)).first->second;
    };
    for (const auto& [m, c] : t_) r += c * pw(pa_, a, m.first) * pw(pb_, b, m.second);
    return r;
}

BiPoly BiPoly::compose(const BiPoly& g1, const BiPoly& g2) const
{
    if (!(g1.field() == f_) || !(g2.field() == f_)) fail("DescriptorMismatch", "compose");
    if (t_.empty()) return BiPoly(f_);
    int n1 = degree_z1();
    // group by z1 exponent: this = sum_i z1^i Q_i(z2)
    std::vector<SPoly> q(n1 + 1);
    for (const auto& [m, c] : t_) {
        auto& v = q[m.first];
        if (static_cast<int>(v.size()) <= m.second) v.resize(m.second + 1, Scalar::zero(f_));
        v[m.second] = c;
    }
    int n2 = degree_z2();
    std::vector<BiPoly> g2p{constant(Scalar::one(f_))};
    for (int j = 1; j <= n2; ++j) g2p.push_back(g2p.back() * g2);
    BiPoly r(f_);
    for (int i = n1; i >= 0; --i) {
        r = r * g1;
        for (size_t j = 0; j < q[i].size(); ++j)
            r.add_scaled(g2p[j], q[i][j]);
    }
    return r;
}

BiPoly BiPoly::map(const Field& to, const std::function<Scalar(const Scalar&)>& fn) const
{
    BiPoly r(to);
    for (const auto& [m, c] : t_) r.add_term(m.first, m.second, fn(c));
    return r;
}

SPoly BiPoly::as_z2_poly() const
{
    SPoly p;
    for (const auto& [m, c] : t_) {
        if (m.first != 0) fail("NotUnivariate", str());
        if (static_cast<int>(p.size()) <= m.second) p.resize(m.second + 1, Scalar::zero(f_));
        p[m.second] = c;
    }
    return p;
}

std::string BiPoly::str() const
{
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!s.empty()) s += " + ";
        bool unit = c.is_one() && (m.first || m.second);
        if (!unit) s += (c.field().ratfun || !c.num_value().rational()) ? "(" + c.str() + ")" : c.str();
        std::string mono;
        if (m.first) mono += "z1" + (m.first > 1 ? "^" + std::to_string(m.first) : "");
        if (m.second) mono += std::string(mono.empty() ? "" : "*") + "z2" + (m.second > 1 ? "^" + std::to_string(m.second) : "");
        if (!mono.empty()) s += (unit ? "" : "*") + mono;
    }
    return s;
}

PlaneEndo::PlaneEndo(BiPoly a, BiPoly b) : p1(std::move(a)), p2(std::move(b))
{
    if (!(p1.field() == p2.field())) fail("DescriptorMismatch", "endomorphism components");
}

PlaneEndo PlaneEndo::identity(const Field& f) { return {BiPoly::z1(f), BiPoly::z2(f)}; }

PlaneEndo PlaneEndo::swap(const Field& f) { return {BiPoly::z2(f), BiPoly::z1(f)}; }

PlaneEndo compose(const PlaneEndo& f, const PlaneEndo& g)
{
    if (!(f.field() == g.field())) fail("DescriptorMismatch", "compose");
    return {f.p1.compose(g.p1, g.p2), f.p2.compose(g.p1, g.p2)};
}

std::pair<Scalar, Scalar> evaluate(const PlaneEndo& f, const Scalar& a, const Scalar& b)
{
    if (!(a.field() == f.field()) || !(b.field() == f.field())) fail("DescriptorMismatch", "evaluate");
    return {f.p1.eval(a, b), f.p2.eval(a, b)};
}

BiPoly apply_upoly(const SPoly& p, const BiPoly& h)
{
    BiPoly r(h.field());
    for (int i = up::deg(p); i >= 0; --i) {
        r = r * h;
        if (!p[i].is_zero()) r += BiPoly::constant(p[i]);
    }
    return r;
}

}  // namespace pa
