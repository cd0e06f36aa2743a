#include "planeaut/group.hpp"

#include <algorithm>

namespace pa {

PlaneEndo power(const PlaneEndo& g, int n)
{
    PlaneEndo r = PlaneEndo::identity(g.field());
    for (int i = 0; i < n; ++i) r = compose(g, r);
    return r;
}

PlaneAut to_aut(const Affine& a) { return {a.to_endo(), a.inverse().to_endo()}; }
PlaneAut to_aut(const Elementary& e) { return {e.to_endo(), e.inverse().to_endo()}; }

std::optional<Elementary> elementary_from_endo(const PlaneEndo& f)
{
    const Field& F = f.field();
    if (f.p2.degree() > 1 || !f.p2.coeff(1, 0).is_zero()) return std::nullopt;
    Scalar alpha = f.p1.coeff(1, 0);
    BiPoly rest = f.p1 - BiPoly::z1(F) * alpha;
    for (const auto& [m, c] : rest.terms())
        if (m.first != 0) return std::nullopt;
    Elementary e{alpha, f.p2.coeff(0, 1), f.p2.coeff(0, 0), rest.as_z2_poly()};
    if (e.alpha.is_zero() || e.beta.is_zero()) return std::nullopt;
    return e;
}

namespace {

bool has_order_dividing(const PlaneAut& g, int n)
{
    auto wg = decompose(g.forward), w = wg;
    for (int i = 1; i < n; ++i) w = wg * w;
    return w.is_identity();
}

bool commute(const PlaneAut& g, const PlaneAut& h)
{
    auto wg = decompose(g.forward), wh = decompose(h.forward);
    return ((wg * wh) * (wh * wg).inverse()).is_identity();
}

}  // namespace

GroupAction GroupAction::cyclic(const PlaneAut& g, int n)
{
    return finite_abelian({g}, {n});
}

GroupAction GroupAction::finite_abelian(const std::vector<PlaneAut>& gens, const std::vector<int>& orders)
{
    if (gens.empty() || gens.size() != orders.size()) throw SchemaError("generators and orders differ in length");
    GroupAction G;
    G.kind = gens.size() == 1 ? Kind::cyclic : Kind::finite_abelian;
    G.field = gens[0].field();
    G.generators = gens;
    G.orders = orders;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (orders[i] < 1) throw SchemaError("order must be positive");
        if (!has_order_dividing(gens[i], orders[i]))
            fail("OrderMismatch", "generator " + std::to_string(i) + " does not have order dividing " + std::to_string(orders[i]));
        for (size_t j = 0; j < i; ++j)
            if (!commute(gens[i], gens[j]))
                fail("NotCommuting", "generators " + std::to_string(j) + " and " + std::to_string(i));
    }
    return G;
}

GroupAction GroupAction::torus(const Field& f, int w1, int w2, std::optional<PlaneAut> conj)
{
    GroupAction G;
    G.kind = Kind::torus;
    G.field = f;
    G.weights = {w1, w2};
    G.torus_conj = std::move(conj);
    return G;
}

namespace {

PlaneAut identity_aut(const Field& F) { return {PlaneEndo::identity(F), PlaneEndo::identity(F)}; }

// c^-1 o g o c
PlaneAut conjugate(const PlaneAut& g, const PlaneAut& c) { return compose(compose(c.inv(), g), c); }

bool is_linear_map(const PlaneEndo& f)
{
    auto a = Affine::from_endo(f);
    return a && a->is_linear();
}

}  // namespace

CyclicReduction cyclic_reduce(const PlaneAut& g)
{
    CyclicReduction r{identity_aut(g.field()), g, 0};
    for (;;) {
        auto d = decompose(r.reduced);
        size_t m = d.e.size();
        if (m == 0) return r;
        Affine A = d.a[0] * d.a[m];
        if (!A.in_E()) fail("NotFiniteOrder", "cyclically reduced word of length " + std::to_string(2 * m));
        // c o g o c^-1 is shorter: c = a_1 when m = 1, else e_1 o a_1
        PlaneAut c = to_aut(d.a[0]);
        if (m > 1) c = compose(to_aut(d.e[0]), c);
        r.reduced = conjugate(r.reduced, c.inv());
        r.conjugator = compose(r.conjugator, c.inv());
        ++r.steps;
        if (m == 1) return r;
    }
}

Affine barycenter_translation(const std::vector<Affine>& gens)
{
    const Field& F = gens.at(0).field();
    std::vector<std::pair<Scalar, Scalar>> orbit{{Scalar::zero(F), Scalar::zero(F)}};
    for (size_t i = 0; i < orbit.size(); ++i) {
        for (const auto& a : gens) {
            auto [x, y] = orbit[i];
            std::pair<Scalar, Scalar> p{a.m11 * x + a.m12 * y + a.b1, a.m21 * x + a.m22 * y + a.b2};
            if (std::find(orbit.begin(), orbit.end(), p) == orbit.end()) orbit.push_back(p);
        }
        if (orbit.size() > 100000) fail("NotFiniteOrder", "orbit of the origin is too large");
    }
    Scalar sx = Scalar::zero(F), sy = Scalar::zero(F);
    for (const auto& [x, y] : orbit) {
        sx += x;
        sy += y;
    }
    Scalar n = Scalar::from_int(F, static_cast<long>(orbit.size()));
    return Affine::translation(sx / n, sy / n);
}

namespace {

// Phi with Phi^-1 o g o Phi linear.
PlaneAut to_linear(const PlaneAut& g)
{
    const Field& F = g.field();
    auto red = cyclic_reduce(g);
    PlaneAut phi = red.conjugator;
    if (auto a = Affine::from_endo(red.reduced.forward)) {
        if (!a->is_linear()) phi = compose(phi, to_aut(barycenter_translation({*a})));
        return phi;
    }
    auto e = elementary_from_endo(red.reduced.forward);
    if (!e) fail("NotFiniteOrder", "reduced element is not elementary");
    Scalar one = Scalar::one(F);
    // move the fixed value of z2 to 0
    if (!e->beta1.is_zero()) {
        if (e->beta == one) fail("NotFiniteOrder", "translation in z2");
        Scalar c = e->beta1 / (one - e->beta);
        Affine T = Affine::translation(Scalar::zero(F), c);
        phi = compose(phi, to_aut(T));
        e->p = up::affine_subst(e->p, one, c);
        e->beta1 = Scalar::zero(F);
    }
    // s o e o s^-1 = (alpha z1, beta z2) for s = (z1 + r(z2), z2)
    SPoly rr(e->p.size(), Scalar::zero(F));
    Scalar bj = one;
    for (size_t j = 0; j < e->p.size(); ++j, bj *= e->beta) {
        if (e->p[j].is_zero()) continue;
        Scalar den = e->alpha - bj;
        if (den.is_zero()) fail("NotFiniteOrder", "resonant term z2^" + std::to_string(j));
        rr[j] = e->p[j] / den;
    }
    up::trim(rr);
    phi = compose(phi, to_aut(Elementary::shear(F, rr)).inv());
    return phi;
}

std::vector<Scalar> roots_of_unity(const Field& F, int n)
{
    std::vector<Scalar> cand;
    int K = F.cyc ? F.k : 1;
    for (int j = 0; j < K; ++j) {
        Scalar z = Scalar::zeta(F, K, j);
        for (const Scalar& s : {z, -z})
            if (s.pow(n).is_one() && std::find(cand.begin(), cand.end(), s) == cand.end()) cand.push_back(s);
    }
    return cand;
}

std::pair<Scalar, Scalar> eigenvector(const Affine& M, const Scalar& l)
{
    Scalar n11 = M.m11 - l, n12 = M.m12, n21 = M.m21, n22 = M.m22 - l;
    std::pair<Scalar, Scalar> v = (!n11.is_zero() || !n12.is_zero()) ? std::pair{-n12, n11} : std::pair{-n22, n21};
    if (!v.first.is_zero()) {
        Scalar i = v.first.inv();
        v = {Scalar::one(M.field()), v.second * i};
    } else {
        v.second = Scalar::one(M.field());
    }
    return v;
}

bool is_diagonal(const Affine& m) { return m.m12.is_zero() && m.m21.is_zero() && m.is_linear(); }

}  // namespace

Diagonalization diagonalize(const std::vector<Affine>& mats, const std::vector<int>& orders)
{
    const Field& F = mats.at(0).field();
    Diagonalization d{Affine::identity(F), mats};
    if (std::all_of(mats.begin(), mats.end(), is_diagonal)) return d;
    size_t i = 0;
    while (mats[i].m12.is_zero() && mats[i].m21.is_zero() && mats[i].m11 == mats[i].m22) ++i;
    const Affine& M = mats[i];
    std::vector<Scalar> ev;
    for (const Scalar& l : roots_of_unity(F, orders[i])) {
        Scalar ch = (M.m11 - l) * (M.m22 - l) - M.m12 * M.m21;
        if (ch.is_zero()) ev.push_back(l);
    }
    if (ev.size() == 1) fail("NotFiniteOrder", "non-semisimple generator");
    if (ev.size() != 2) fail("FieldTooSmall", "eigenvalues of a generator are not in " + F.name());
    auto v1 = eigenvector(M, ev[0]), v2 = eigenvector(M, ev[1]);
    if (v1.first.is_zero()) std::swap(v1, v2);
    d.P = Affine::linear(v1.first, v2.first, v1.second, v2.second);
    Affine Pi = d.P.inverse();
    for (auto& m : d.diag) {
        m = Pi * m * d.P;
        if (!is_diagonal(m)) fail("GroupReductionFailed", "generators have no common eigenbasis");
    }
    return d;
}

Linearization linearize_over_field(const GroupAction& G)
{
    const Field& F = G.field;
    if (G.kind == GroupAction::Kind::torus) {
        PlaneAut conj = G.torus_conj.value_or(identity_aut(F));
        return {conj.inv(), {{}, G.weights}};
    }
    std::vector<PlaneAut> gens = G.generators;
    PlaneAut phi = identity_aut(F);  // phi^-1 o g o phi is the current generator
    auto apply = [&](const PlaneAut& c) {
        phi = compose(phi, c);
        for (auto& g : gens) g = conjugate(g, c);
    };

    bool all_affine = true;
    std::vector<Affine> aff;
    for (const auto& g : gens) {
        auto a = Affine::from_endo(g.forward);
        if (!a) {
            all_affine = false;
            break;
        }
        aff.push_back(*a);
    }
    if (all_affine) {
        apply(to_aut(barycenter_translation(aff)));
    } else {
        // one generator at a time with shared conjugators
        size_t passes = 2 * gens.size() + 2;
        for (size_t p = 0; p < passes; ++p) {
            auto it = std::find_if(gens.begin(), gens.end(), [](const PlaneAut& g) { return !is_linear_map(g.forward); });
            if (it == gens.end()) break;
            apply(to_linear(*it));
        }
    }
    std::vector<Affine> mats;
    for (const auto& g : gens) {
        if (!is_linear_map(g.forward)) fail("GroupReductionFailed", "generators did not become linear together");
        mats.push_back(*Affine::from_endo(g.forward));
    }
    auto d = diagonalize(mats, G.orders);
    apply(to_aut(d.P));
    return {phi.inv(), {d.diag, std::nullopt}};
}

bool torus_equivariant(const PlaneEndo& f, int w1, int w2)
{
    for (int c = 0; c < 2; ++c) {
        int target = c == 0 ? w1 : w2;
        for (const auto& [m, v] : f[c].terms())
            if (w1 * m.first + w2 * m.second != target) return false;
    }
    return true;
}

bool verify_linearization(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho)
{
    if (G.kind == GroupAction::Kind::torus) {
        if (!rho.torus_weights || *rho.torus_weights != G.weights) return false;
        PlaneEndo chi = G.torus_conj ? compose(psi.forward, G.torus_conj->forward) : psi.forward;
        return torus_equivariant(chi, G.weights.first, G.weights.second);
    }
    if (rho.images.size() != G.generators.size()) return false;
    TameDecomposition wp;
    try {
        wp = decompose(psi.forward);
    } catch (const MathError&) {
        return false;
    }
    for (size_t i = 0; i < G.generators.size(); ++i) {
        auto w = wp * decompose(G.generators[i].forward) * wp.inverse() * TameDecomposition::of(rho.images[i].inverse());
        if (!w.is_identity()) return false;
    }
    return true;
}

bool is_equivariant(const PlaneEndo& f, const GroupAction& G)
{
    if (G.kind == GroupAction::Kind::torus) {
        PlaneEndo chi = G.torus_conj ? compose(G.torus_conj->inverse, compose(f, G.torus_conj->forward)) : f;
        return torus_equivariant(chi, G.weights.first, G.weights.second);
    }
    std::optional<TameDecomposition> wf;
    try {
        wf = decompose(f);
    } catch (const MathError&) {
    }
    for (const auto& g : G.generators) {
        if (wf) {
            auto wg = decompose(g.forward);
            if (!((*wf * wg) * (wg * *wf).inverse()).is_identity()) return false;
        } else if (compose(f, g.forward) != compose(g.forward, f)) {
            return false;
        }
    }
    return true;
}

}  // namespace pa
