#include "planeaut/plane.hpp"

#include <algorithm>

namespace pa {

// ---- Affine ----

Affine Affine::identity(const Field& f)
{
    auto o = Scalar::one(f), z = Scalar::zero(f);
    return {o, z, z, o, z, z};
}

Affine Affine::linear(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d)
{
    auto z = Scalar::zero(a.field());
    return {a, b, c, d, z, z};
}

Affine Affine::diagonal(const Scalar& a, const Scalar& d)
{
    auto z = Scalar::zero(a.field());
    return {a, z, z, d, z, z};
}

Affine Affine::translation(const Scalar& b1, const Scalar& b2)
{
    Affine r = identity(b1.field());
    r.b1 = b1;
    r.b2 = b2;
    return r;
}

std::optional<Affine> Affine::from_endo(const PlaneEndo& f)
{
    if (f.degree() > 1) return std::nullopt;
    return Affine{f.p1.coeff(1, 0), f.p1.coeff(0, 1), f.p2.coeff(1, 0),
                  f.p2.coeff(0, 1), f.p1.coeff(0, 0), f.p2.coeff(0, 0)};
}

Affine Affine::inverse() const
{
    Scalar d = det();
    if (d.is_zero()) fail("NotAnAutomorphism", "singular affine map");
    Scalar id = d.inv();
    Affine r{m22 * id, -m12 * id, -m21 * id, m11 * id, b1, b2};
    r.b1 = -(r.m11 * b1 + r.m12 * b2);
    r.b2 = -(r.m21 * b1 + r.m22 * b2);
    return r;
}

PlaneEndo Affine::to_endo() const { return left_apply(PlaneEndo::identity(field())); }

PlaneEndo Affine::left_apply(const PlaneEndo& h) const
{
    BiPoly r1 = h.p1 * m11 + h.p2 * m12 + BiPoly::constant(b1);
    BiPoly r2 = h.p1 * m21 + h.p2 * m22 + BiPoly::constant(b2);
    return {r1, r2};
}

bool Affine::operator==(const Affine& o) const
{
    return m11 == o.m11 && m12 == o.m12 && m21 == o.m21 && m22 == o.m22 && b1 == o.b1 && b2 == o.b2;
}

Affine operator*(const Affine& a, const Affine& b)
{
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22,
            a.m11 * b.b1 + a.m12 * b.b2 + a.b1, a.m21 * b.b1 + a.m22 * b.b2 + a.b2};
}

// ---- Elementary ----

Elementary Elementary::shear(const Field& f, const SPoly& p)
{
    return {Scalar::one(f), Scalar::one(f), Scalar::zero(f), p};
}

Elementary Elementary::inverse() const
{
    Scalar ia = alpha.inv(), ib = beta.inv();
    SPoly q = up::scale(up::affine_subst(p, ib, -beta1 * ib), -ia);
    return {ia, ib, -beta1 * ib, q};
}

PlaneEndo Elementary::to_endo() const { return left_apply(PlaneEndo::identity(field())); }

PlaneEndo Elementary::left_apply(const PlaneEndo& h) const
{
    BiPoly r1 = h.p1 * alpha + apply_upoly(p, h.p2);
    BiPoly r2 = h.p2 * beta + BiPoly::constant(beta1);
    return {r1, r2};
}

bool Elementary::operator==(const Elementary& o) const
{
    return alpha == o.alpha && beta == o.beta && beta1 == o.beta1 && p == o.p;
}

Elementary operator*(const Elementary& a, const Elementary& b)
{
    SPoly p = up::add(up::scale(b.p, a.alpha), up::affine_subst(a.p, b.beta, b.beta1));
    return {a.alpha * b.alpha, a.beta * b.beta, a.beta * b.beta1 + a.beta1, p};
}

// ---- TameDecomposition ----

PlaneEndo TameDecomposition::apply_to(const PlaneEndo& h) const
{
    PlaneEndo r = a[0].left_apply(h);
    for (size_t j = 0; j < e.size(); ++j) {
        r = e[j].left_apply(r);
        r = a[j + 1].left_apply(r);
    }
    return r;
}

PlaneEndo TameDecomposition::recompose() const { return apply_to(PlaneEndo::identity(a[0].field())); }

TameDecomposition TameDecomposition::inverse() const
{
    TameDecomposition r;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r.a.push_back(it->inverse());
    for (auto it = e.rbegin(); it != e.rend(); ++it) r.e.push_back(it->inverse());
    return r;
}

std::vector<int> TameDecomposition::polydegree() const
{
    std::vector<int> d;
    for (const auto& x : e) d.push_back(x.degree());
    return d;
}

namespace {

struct Syllable {
    bool elem;
    Affine A;
    Elementary E;
};

Affine elem_to_affine(const Elementary& e)
{
    auto z = Scalar::zero(e.field());
    Scalar p0 = e.p.size() > 0 ? e.p[0] : z, p1 = e.p.size() > 1 ? e.p[1] : z;
    return {e.alpha, p1, z, e.beta, p0, e.beta1};
}

Elementary affine_to_elem(const Affine& a)
{
    SPoly p{a.b1, a.m12};
    up::trim(p);
    return {a.m11, a.m22, a.b2, p};
}

// Merge until the list alternates between affine maps outside E and
// elementaries of degree >= 2.
void reduce_word(std::vector<Syllable>& w)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& s : w) {
            if (s.elem && up::deg(s.E.p) <= 1) {
                s = {false, elem_to_affine(s.E), {}};
                changed = true;
            }
        }
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            Syllable& x = w[i];
            Syllable& y = w[i + 1];
            if (x.elem != y.elem) {
                if (!x.elem && x.A.in_E()) {
                    x = {true, {}, affine_to_elem(x.A)};
                    changed = true;
                } else if (!y.elem && y.A.in_E()) {
                    y = {true, {}, affine_to_elem(y.A)};
                    changed = true;
                }
            }
            if (x.elem == y.elem) {
                if (x.elem) x.E = x.E * y.E;
                else x.A = x.A * y.A;
                w.erase(w.begin() + i + 1);
                changed = true;
                break;
            }
        }
    }
}

}  // namespace

namespace {

// outer is a_{m+1}, e_m, ..., e_1, a_1 with possibly missing end affines
TameDecomposition from_syllables(const std::vector<Syllable>& outer, const Field& F)
{
    std::vector<Affine> A;
    std::vector<Elementary> E;
    size_t i = 0;
    bool want_affine = true;
    while (i < outer.size() || want_affine) {
        if (want_affine) {
            if (i < outer.size() && !outer[i].elem) A.push_back(outer[i++].A);
            else A.push_back(Affine::identity(F));
            if (i >= outer.size()) break;
        } else {
            E.push_back(outer[i++].E);
        }
        want_affine = !want_affine;
    }
    TameDecomposition d;
    d.a.assign(A.rbegin(), A.rend());
    d.e.assign(E.rbegin(), E.rend());
    return d;
}

std::vector<Syllable> to_syllables(const TameDecomposition& d)
{
    std::vector<Syllable> w;
    for (size_t j = d.a.size(); j-- > 0;) {
        w.push_back({false, d.a[j], {}});
        if (j > 0) w.push_back({true, {}, d.e[j - 1]});
    }
    return w;
}

}  // namespace

TameDecomposition operator*(const TameDecomposition& f, const TameDecomposition& g)
{
    auto w = to_syllables(f), wg = to_syllables(g);
    w.insert(w.end(), wg.begin(), wg.end());
    reduce_word(w);
    return from_syllables(w, f.a[0].field());
}

bool TameDecomposition::is_identity() const { return e.empty() && a[0] == Affine::identity(a[0].field()); }

TameDecomposition TameDecomposition::of(const Affine& x) { return {{x}, {}}; }

TameDecomposition decompose(const PlaneEndo& f0)
{
    const Field& F = f0.field();
    PlaneEndo f = f0;
    std::vector<Syllable> outer;  // f0 = outer[0] o outer[1] o ... o f
    while (f.degree() >= 2) {
        int d1 = f.p1.degree(), d2 = f.p2.degree();
        if (d1 < d2) {
            f = PlaneEndo(f.p2, f.p1);
            outer.push_back({false, Affine::linear(Scalar::zero(F), Scalar::one(F), Scalar::one(F), Scalar::zero(F)), {}});
            continue;
        }
        if (d2 < 1 || d1 % d2 != 0) fail("NotAnAutomorphism", "degree pattern " + std::to_string(d1) + "," + std::to_string(d2));
        int k = d1 / d2;
        BiPoly L1 = f.p1.leading_form();
        BiPoly Lk = f.p2.leading_form().pow(k);
        const auto& top = L1.terms().rbegin()->first;
        Scalar lk = Lk.coeff(top.first, top.second);
        if (lk.is_zero()) fail("NotAnAutomorphism", "leading forms are not proportional");
        Scalar c = L1.terms().rbegin()->second / lk;
        if (L1 != Lk * c) fail("NotAnAutomorphism", "leading forms are not proportional");
        f.p1 = f.p1 - f.p2.pow(k) * c;
        SPoly p(k + 1, Scalar::zero(F));
        p[k] = c;
        outer.push_back({true, {}, Elementary::shear(F, p)});
    }
    auto last = Affine::from_endo(f);
    if (last->det().is_zero()) fail("NotAnAutomorphism", "degenerate linear part");
    outer.push_back({false, *last, {}});
    reduce_word(outer);
    TameDecomposition d = from_syllables(outer, F);

    // canonical form: e = A o (z1 + P(z2), z2) o R with P free of degree <= 1
    for (size_t j = 0; j < d.e.size(); ++j) {
        const Elementary& e = d.e[j];
        Scalar ib = e.beta.inv();
        SPoly pt = up::affine_subst(e.p, ib, -e.beta1 * ib);
        Scalar z = Scalar::zero(F);
        Scalar c0 = pt.size() > 0 ? pt[0] : z, c1 = pt.size() > 1 ? pt[1] : z;
        SPoly P = pt;
        for (size_t t = 0; t < std::min<size_t>(2, P.size()); ++t) P[t] = z;
        P = up::scale(P, e.alpha.inv());
        Affine Aout{e.alpha, c1, z, Scalar::one(F), c0, z};
        Affine R{Scalar::one(F), z, z, e.beta, z, e.beta1};
        d.a[j + 1] = d.a[j + 1] * Aout;
        d.a[j] = R * d.a[j];
        d.e[j] = Elementary::shear(F, P);
    }
    return d;
}

PlaneAut invert(const PlaneEndo& f)
{
    auto d = decompose(f);
    return {f, d.inverse().recompose()};
}

PlaneAut compose(const PlaneAut& f, const PlaneAut& g)
{
    // word products avoid the degree blowup of substituting one map into another
    auto wf = decompose(f.forward), wg = decompose(g.forward);
    return {(wf * wg).recompose(), (wg.inverse() * wf.inverse()).recompose()};
}

std::vector<int> polydegree(const PlaneEndo& f) { return decompose(f).polydegree(); }

bool is_left_inverse(const PlaneEndo& g, const PlaneEndo& f)
{
    TameDecomposition dg;
    try {
        dg = decompose(g);
    } catch (const MathError&) {
        return false;
    }
    if (dg.recompose() != g) return false;
    return dg.apply_to(f).is_identity();
}

ProjPoint anchor_line(const PlaneEndo& f)
{
    int D = f.degree();
    if (D <= 1) fail("DegreeTooLow", "anchor line needs degree >= 2");
    const Field& F = f.field();
    BiPoly L1 = f.p1.homogeneous_part(D), L2 = f.p2.homogeneous_part(D);
    const BiPoly& L = L1.is_zero() ? L2 : L1;
    Scalar cD = L.coeff(D, 0), cD1 = L.coeff(D - 1, 1);
    // L = c (a z1 + b z2)^D vanishes on the direction (-b, a)
    Scalar a = Scalar::one(F), b = Scalar::zero(F);
    ProjPoint pt;
    if (cD.is_zero()) {
        a = Scalar::zero(F);
        b = Scalar::one(F);
        pt.value = Scalar::zero(F);
    } else if (cD1.is_zero()) {
        pt.inf = true;
        pt.value = Scalar::zero(F);
    } else {
        b = cD1 / (cD * Scalar::from_int(F, D));
        pt.value = -a / b;
    }
    BiPoly lD = (BiPoly::z1(F) * a + BiPoly::z2(F) * b).pow(D);
    for (const BiPoly* Li : {&L1, &L2}) {
        if (Li->is_zero()) continue;
        const auto& top = Li->terms().rbegin()->first;
        Scalar t = lD.coeff(top.first, top.second);
        if (t.is_zero() || *Li != lD * (Li->terms().rbegin()->second / t)) fail("NotAnAutomorphism", "leading form is not a power of a linear form");
    }
    return pt;
}

}  // namespace pa
