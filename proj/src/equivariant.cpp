#include "planeaut/equivariant.hpp"

#include "planeaut/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pa {

std::string to_string(SubgroupTag t)
{
    switch (t) {
    case SubgroupTag::S_hat: return "S-hat";
    case SubgroupTag::T: return "T";
    case SubgroupTag::D: return "D";
    case SubgroupTag::Z: return "Z";
    }
    return "?";
}

std::string to_string(CentralizerCase c)
{
    switch (c) {
    case CentralizerCase::fiber: return "fiber";
    case CentralizerCase::bundle: return "bundle-over-P1xP1";
    case CentralizerCase::two_fibers: return "two-fibers";
    case CentralizerCase::single_fiber: return "single-fiber";
    case CentralizerCase::affine_gl2g: return "affine-GL2G";
    case CentralizerCase::one_parameter: return "one-parameter-family";
    }
    return "?";
}

bool FiberNormalForm::operator==(const FiberNormalForm& o) const
{
    return alpha == o.alpha && beta == o.beta && alpha1 == o.alpha1 && beta1 == o.beta1 && q == o.q && d == o.d;
}

bool FiberNormalForm::s_in(SubgroupTag t) const
{
    switch (t) {
    case SubgroupTag::S_hat: return true;
    case SubgroupTag::T: return beta1.is_zero();
    case SubgroupTag::D: return alpha1.is_zero() && beta1.is_zero();
    case SubgroupTag::Z: return alpha1.is_zero() && beta1.is_zero() && alpha == beta;
    }
    return false;
}

namespace {

Affine transposition(const Field& F)
{
    return Affine::linear(Scalar::zero(F), Scalar::one(F), Scalar::one(F), Scalar::zero(F));
}

// (m11 z1 + m12 z2 + b1, m22 z2 + b2) as an elementary map
Elementary elem_of(const Affine& a)
{
    SPoly p{a.b1, a.m12};
    up::trim(p);
    return {a.m11, a.m22, a.b2, p};
}

}  // namespace

PlaneAut build_fiber(const FiberNormalForm& fnf)
{
    const Field& F = fnf.field();
    size_t m = fnf.d.size();
    if (m == 0 || fnf.q.size() != m) fail("DegreeMismatch", "need one q_j per polydegree entry");
    for (size_t j = 0; j < m; ++j) {
        if (fnf.d[j] < 2 || up::deg(fnf.q[j]) != fnf.d[j] - 1)
            fail("DegreeMismatch", "deg q_" + std::to_string(j + 1) + " must be d_" + std::to_string(j + 1) + " - 1");
    }
    if (fnf.alpha.is_zero() || fnf.beta.is_zero()) fail("NotAnAutomorphism", "s is singular");
    TameDecomposition w;
    w.a.push_back(Affine::identity(F));
    for (size_t j = 0; j < m; ++j) {
        SPoly p{Scalar::zero(F)};
        p.insert(p.end(), fnf.q[j].begin(), fnf.q[j].end());
        w.e.push_back(Elementary::shear(F, p));
        if (j + 1 < m) w.a.push_back(transposition(F));
        else w.a.push_back(Affine{fnf.alpha, Scalar::zero(F), Scalar::zero(F), fnf.beta, fnf.alpha1, fnf.beta1});
    }
    return {w.recompose(), w.inverse().recompose()};
}

FiberNormalForm extract_fiber(const PlaneAut& f)
{
    const Field& F = f.field();
    auto w = decompose(f.forward);
    size_t m = w.e.size();
    if (m == 0) fail("NotInFiber", "affine map");
    if (!w.a[0].in_E()) fail("NotInFiber", "anchor line of the inverse is not {z2 = 0}");
    FiberNormalForm r;
    Affine prev = w.a[0];
    for (size_t j = 0; j < m; ++j) {
        Elementary X = w.e[j] * elem_of(prev);
        const Affine& N = w.a[j + 1];
        Scalar b;
        if (j + 1 < m) {
            b = -N.m22 * X.beta / N.m21;
        } else {
            if (!N.in_E()) fail("NotInFiber", "anchor line is not {z2 = 0}");
            b = -N.m12 * X.beta / N.m11;
        }
        Scalar z = Scalar::zero(F);
        Scalar c = X.p.empty() ? z : X.p[0];
        Affine t{X.alpha, b, z, X.beta, c, X.beta1};
        SPoly q;
        for (size_t i = 1; i < X.p.size(); ++i) q.push_back((i == 1 ? X.p[i] - b : X.p[i]) / X.alpha);
        up::trim(q);
        r.q.push_back(q);
        r.d.push_back(up::deg(q) + 1);
        if (j + 1 < m) {
            prev = N * t * transposition(F);
        } else {
            Affine s = N * t;
            if (!s.m12.is_zero() || !s.m21.is_zero()) fail("NotInFiber", "outer affine factor is not in S-hat");
            r.alpha = s.m11;
            r.beta = s.m22;
            r.alpha1 = s.b1;
            r.beta1 = s.b2;
        }
    }
    if (build_fiber(r).forward != f.forward) fail("NotInFiber", "normal form does not reproduce the map");
    return r;
}

FiberNormalForm conjugate_by_diagonal(const Scalar& lambda0, const Scalar& lambda1, const FiberNormalForm& fnf)
{
    auto lam = [&](size_t j) { return j % 2 == 0 ? lambda0 : lambda1; };
    size_t m = fnf.q.size();
    FiberNormalForm r = fnf;
    r.alpha = fnf.alpha * lam(m - 1) / lambda0;
    r.alpha1 = fnf.alpha1 / lambda0;
    r.beta = fnf.beta * lam(m) / lambda1;
    r.beta1 = fnf.beta1 / lambda1;
    for (size_t j = 1; j <= m; ++j) {
        const SPoly& q = fnf.q[j - 1];
        r.q[j - 1] = up::scale(up::affine_subst(q, lam(j), Scalar::zero(lambda0.field())), lam(j) / lam(j + 1));
    }
    return r;
}

Affine section_map(int chart, const Scalar& l)
{
    const Field& F = l.field();
    auto o = Scalar::one(F), z = Scalar::zero(F);
    if (chart == 0) return Affine::linear(o, z, l, o);
    return Affine::linear(l, o, o, z);
}

// ---- diagonal groups ----

namespace {

int mod(long a, int k) { return static_cast<int>(((a % k) + k) % k); }

std::set<std::pair<int, int>> closure(const DiagonalGroup& G)
{
    std::set<std::pair<int, int>> el{{0, 0}};
    std::vector<std::pair<int, int>> todo{{0, 0}};
    while (!todo.empty()) {
        auto [x, y] = todo.back();
        todo.pop_back();
        for (auto [a, b] : G.gens) {
            std::pair<int, int> n{mod(x + a, G.k), mod(y + b, G.k)};
            if (el.insert(n).second) todo.push_back(n);
        }
    }
    return el;
}

int element_order(std::pair<int, int> e, int k) { return k / std::gcd(std::gcd(e.first, e.second), k); }

// Weights divided by their gcd, with a fixed sign.
std::pair<int, int> primitive_weights(std::pair<int, int> w)
{
    int g = std::gcd(w.first, w.second);
    if (g == 0) return {0, 0};
    w = {w.first / g, w.second / g};
    if (w.second < 0 || (w.second == 0 && w.first < 0)) w = {-w.first, -w.second};
    return w;
}

}  // namespace

Field DiagonalGroup::oracle_field() const
{
    if (torus) return Field::rationals().over('x');
    return k <= 2 ? Field::rationals() : Field::cyclotomic(k);
}

std::vector<Affine> DiagonalGroup::matrices(const Field& f) const
{
    std::vector<Affine> r;
    for (auto [a, b] : gens) {
        if (torus) {
            Scalar x = Scalar::var(f);
            r.push_back(Affine::diagonal(x.pow(a), x.pow(b)));
        } else {
            r.push_back(Affine::diagonal(Scalar::zeta(f, k, a), Scalar::zeta(f, k, b)));
        }
    }
    return r;
}

bool DiagonalGroup::is_cyclic() const
{
    if (torus) return false;
    auto el = closure(*this);
    int expo = 1;
    for (auto e : el) expo = std::lcm(expo, element_order(e, k));
    return static_cast<size_t>(expo) == el.size();
}

GroupAction DiagonalGroup::action(const Field& f) const
{
    if (torus) return GroupAction::torus(f, gens.at(0).first, gens.at(0).second);
    std::vector<PlaneAut> g;
    std::vector<int> orders;
    auto mats = matrices(f);
    for (size_t i = 0; i < gens.size(); ++i) {
        g.push_back(to_aut(mats[i]));
        orders.push_back(element_order(gens[i], k));
    }
    return GroupAction::finite_abelian(g, orders);
}

std::optional<HdGroup> normalize_group(int d1, const DiagonalGroup& G)
{
    if (G.torus) {
        auto w = primitive_weights(G.gens.at(0));
        if (w == std::pair{0, 0}) return HdGroup{d1, 1, false};
        if (w == std::pair{d1, 1}) return HdGroup{d1, 0, false};
        if (w == std::pair{1, d1}) return HdGroup{d1, 0, true};
        return std::nullopt;
    }
    std::pair<int, int> gen{0, 0};
    if (G.gens.size() == 1) {
        gen = G.gens[0];
    } else {
        if (!G.is_cyclic()) return std::nullopt;
        auto el = closure(G);
        for (auto e : el)
            if (static_cast<size_t>(element_order(e, G.k)) == el.size()) gen = e;
    }
    int k = G.k, a = gen.first, b = gen.second;
    if (mod(a - static_cast<long>(b) * d1, k) == 0) return HdGroup{d1, k / std::gcd(mod(b, k), k), false};
    if (mod(b - static_cast<long>(a) * d1, k) == 0) return HdGroup{d1, k / std::gcd(mod(a, k), k), true};
    return std::nullopt;
}

bool diagonal_equivariant(const PlaneEndo& f, const DiagonalGroup& G)
{
    for (int c = 0; c < 2; ++c)
        for (const auto& [m, v] : f[c].terms())
            for (auto [a, b] : G.gens) {
                long w = static_cast<long>(a) * m.first + static_cast<long>(b) * m.second - (c == 0 ? a : b);
                if (G.torus ? w != 0 : mod(w, G.k) != 0) return false;
            }
    return true;
}

// ---- classification ----

namespace {

int inverse_mod(int a, int k)
{
    for (int x = 1; x <= k; ++x)
        if (mod(static_cast<long>(a) * x, k) == 1 % k) return x;
    return 0;
}

int translations(SubgroupTag t) { return t == SubgroupTag::S_hat ? 2 : t == SubgroupTag::T ? 1 : 0; }

bool exponent_allowed(int r, int l, int k)
{
    if (k == 1) return true;
    if (k == 0) return r == l - 1;
    return mod(r - (l - 1), k) == 0;
}

CentralizerDescription make_empty(CentralizerDescription d, const std::string& why)
{
    d.empty = true;
    d.reason = why;
    d.l.clear();
    d.units = d.affine_coords = 0;
    return d;
}

}  // namespace

CentralizerDescription classify_fiber_centralizer(const std::vector<int>& d, const HdGroup& G)
{
    if (d.empty()) throw SchemaError("polydegree must be nonempty");
    for (int x : d)
        if (x < 2) throw SchemaError("polydegree entries must be >= 2");
    if (d[0] != G.d1) throw SchemaError("group weight d1 does not match the polydegree");
    size_t m = d.size();
    int d1 = d[0], k = G.k;
    CentralizerDescription r;
    r.d = d;
    r.group = G;
    r.k = k;
    if (k == 1) {
        r.s_tag = SubgroupTag::S_hat;
        r.l.assign(m, 1);
    } else if (k == 0) {
        if (m != 1) return make_empty(r, "infinite H forces m = 1");
        r.s_tag = SubgroupTag::D;
        r.l = {d1};
    } else if (d1 % k == 0) {
        if (m != 1) return make_empty(r, "k | d1 forces m = 1");
        r.s_tag = SubgroupTag::T;
        r.l = {k};
    } else {
        if ((d1 - 1) % k != 0 && m % 2 == 0) return make_empty(r, "even m requires G inside Z");
        if (m >= 2 && std::gcd(k, d1) != 1) return make_empty(r, "m >= 2 requires gcd(k, d1) = 1");
        int odd = mod(d1, k) == 0 ? k : mod(d1, k);
        int even = m >= 2 ? inverse_mod(d1, k) : 0;
        for (size_t j = 1; j <= m; ++j) r.l.push_back(j % 2 == 1 ? odd : even);
        r.s_tag = SubgroupTag::D;
    }
    for (size_t j = 0; j < m; ++j)
        if (!exponent_allowed(d[j] - 1, r.l[j], k)) return make_empty(r, "deg q_" + std::to_string(j + 1) + " is not in the allowed residue class");
    r.units = 2 + static_cast<int>(m);
    r.affine_coords = translations(r.s_tag);
    for (size_t j = 0; j < m; ++j)
        for (int e = 0; e + 1 < d[j]; ++e)
            if (exponent_allowed(e, r.l[j], k)) ++r.affine_coords;
    return r;
}

CentralizerDescription classify_fiber_centralizer(const std::vector<int>& d, const DiagonalGroup& G)
{
    if (d.empty()) throw SchemaError("polydegree must be nonempty");
    auto h = normalize_group(d[0], G);
    if (h && (!h->swapped || h->k == 1)) {
        h->swapped = false;
        return classify_fiber_centralizer(d, *h);
    }
    CentralizerDescription r;
    r.d = d;
    return make_empty(r, "G is not of the form H_d1 in these coordinates");
}

CentralizerDescription classify_Ad_centralizer(const std::vector<int>& d, const DiagonalGroup& G)
{
    if (d.empty()) throw SchemaError("polydegree must be nonempty");
    if (G.gens.empty()) fail("UnsupportedGroup", "no generators");
    auto h = normalize_group(d[0], G);
    if (!h) {
        CentralizerDescription r;
        r.d = d;
        r.kind = CentralizerCase::single_fiber;
        return make_empty(r, "G is not of the form H_d1 after a linear change of coordinates");
    }
    CentralizerDescription r = classify_fiber_centralizer(d, *h);
    int k = h->k, d1 = d[0];
    if (k >= 1 && (d1 - 1) % k == 0) r.kind = CentralizerCase::bundle;
    // tau o f o tau lands in A_d^G only when G^tau = G, i.e. d1^2 = 1 (mod k)
    else if (k >= 2 && std::gcd(k, d1) == 1 && mod(static_cast<long>(d1) * d1 - 1, k) == 0) r.kind = CentralizerCase::two_fibers;
    else r.kind = CentralizerCase::single_fiber;
    return r;
}

CentralizerDescription centralizer_structure_noncyclic(const DiagonalGroup& G)
{
    CentralizerDescription r;
    if (!G.torus) {
        if (G.is_cyclic()) fail("GroupIsCyclic", "use the polydegree classification");
        r.kind = CentralizerCase::affine_gl2g;
        r.source = G;
        return r;
    }
    auto w = primitive_weights(G.gens.at(0));
    if (w == std::pair{0, 0}) fail("GroupIsCyclic", "trivial group");
    if (w.second == 1 && w.first >= 2) {
        r.kind = CentralizerCase::one_parameter;
        r.v = w.first;
    } else if (w.first == 1 && w.second >= 2) {
        r.kind = CentralizerCase::one_parameter;
        r.v = w.second;
        r.group.swapped = true;
    } else {
        r.kind = CentralizerCase::affine_gl2g;
        r.source = G;
        return r;
    }
    r.units = 2;
    r.affine_coords = 1;
    r.group.d1 = r.v;
    r.group.k = 0;
    return r;
}

bool CentralizerDescription::contains(const FiberNormalForm& f) const
{
    if (empty || f.d != d || !f.s_in(s_tag)) return false;
    for (size_t j = 0; j < f.q.size(); ++j)
        for (size_t e = 0; e < f.q[j].size(); ++e)
            if (!f.q[j][e].is_zero() && !exponent_allowed(static_cast<int>(e), l[j], k)) return false;
    return true;
}

namespace {

PlaneAut tau_conj(const PlaneAut& f)
{
    PlaneEndo t = PlaneEndo::swap(f.field());
    return {compose(t, compose(f.forward, t)), compose(t, compose(f.inverse, t))};
}

bool fiber_member(const CentralizerDescription& c, const PlaneAut& f)
{
    try {
        return c.contains(extract_fiber(f));
    } catch (const MathError&) {
        return false;
    }
}

}  // namespace

bool CentralizerDescription::contains(const PlaneAut& f0) const
{
    if (empty) return false;
    PlaneAut f = group.swapped ? tau_conj(f0) : f0;
    const Field& F = f.field();
    if (kind == CentralizerCase::affine_gl2g) return f.forward.degree() <= 1 && diagonal_equivariant(f0.forward, source);
    if (kind == CentralizerCase::one_parameter) {
        if (f.forward.degree() > v) return false;
        PlaneEndo g = f.forward;
        Scalar a1 = g.p1.coeff(1, 0), b = g.p1.coeff(0, v), a2 = g.p2.coeff(0, 1);
        PlaneEndo shape{BiPoly::z1(F) * a1 + BiPoly::monomial(b, 0, v), BiPoly::z2(F) * a2};
        return g == shape && !a1.is_zero() && !a2.is_zero();
    }
    std::vector<int> pd;
    try {
        pd = polydegree(f.forward);
    } catch (const MathError&) {
        return false;
    }
    if (pd != d) return false;
    ProjPoint src = anchor_line(f.inverse), dst = anchor_line(f.forward);
    auto at_zero = [](const ProjPoint& p) { return !p.inf && p.value.is_zero(); };
    if (at_zero(src) && at_zero(dst)) return fiber_member(*this, f);
    if (kind == CentralizerCase::two_fibers) return src.inf && dst.inf && fiber_member(*this, tau_conj(f));
    if (kind != CentralizerCase::bundle) return false;
    auto chart = [&](const ProjPoint& p) { return p.inf ? section_map(1, Scalar::zero(F)) : section_map(0, p.value); };
    Affine A = chart(src), B = chart(dst);
    PlaneAut h = compose(compose(to_aut(A.inverse()), f), to_aut(B));
    return fiber_member(*this, h);
}

// ---- brute force ----

bool CommutantSpace::invertible(const PlaneEndo& f)
{
    try {
        return decompose(f).recompose() == f;
    } catch (const MathError&) {
        return false;
    }
}


CommutantSpace solve_commutant_bruteforce(int bound, const std::vector<Affine>& gens)
{
    if (bound > kMaxBruteBound) fail("BoundTooLarge", std::to_string(bound) + " > " + std::to_string(kMaxBruteBound));
    if (bound < 1 || gens.empty()) throw SchemaError("need a positive bound and at least one generator");
    const Field F = gens[0].field();
    CommutantSpace S;
    S.field = F;
    S.bound = bound;
    for (int t = 0; t <= bound; ++t)
        for (int i = 0; i <= t; ++i) S.monos.push_back({i, t - i});
    size_t N = S.monos.size(), cols = 2 * N;
    std::map<Mono, size_t, GrLex> index;
    for (size_t i = 0; i < N; ++i) index[S.monos[i]] = i;

    Matrix rows;
    for (const Affine& M : gens) {
        if (!M.is_linear()) throw SchemaError("brute force expects linear generators");
        PlaneEndo g = M.to_endo();
        std::vector<BiPoly> p1{BiPoly::constant(Scalar::one(F))}, p2 = p1;
        for (int e = 1; e <= bound; ++e) {
            p1.push_back(p1.back() * g.p1);
            p2.push_back(p2.back() * g.p2);
        }
        Scalar Mrs[2][2] = {{M.m11, M.m12}, {M.m21, M.m22}};
        for (int r = 0; r < 2; ++r) {
            std::vector<std::vector<Scalar>> block(N, std::vector<Scalar>(cols, Scalar::zero(F)));
            // (f o g)_r
            for (size_t c = 0; c < N; ++c) {
                BiPoly img = p1[S.monos[c].first] * p2[S.monos[c].second];
                for (const auto& [mu, v] : img.terms()) block[index.at(mu)][r * N + c] += v;
            }
            // - (g o f)_r
            for (size_t mu = 0; mu < N; ++mu)
                for (int s = 0; s < 2; ++s) block[mu][s * N + mu] -= Mrs[r][s];
            for (auto& row : block)
                if (std::any_of(row.begin(), row.end(), [](const Scalar& x) { return !x.is_zero(); })) rows.push_back(std::move(row));
        }
    }
    auto piv = rref(rows, cols);
    S.constraints = rows;
    std::vector<bool> is_piv(cols, false);
    for (size_t c : piv) is_piv[c] = true;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<Scalar> v(cols, Scalar::zero(F));
        v[fc] = Scalar::one(F);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][fc];
        PlaneEndo f{BiPoly(F), BiPoly(F)};
        for (size_t c = 0; c < cols; ++c) {
            if (v[c].is_zero()) continue;
            auto [i, j] = S.monos[c % N];
            (c < N ? f.p1 : f.p2).add_term(i, j, v[c]);
        }
        S.basis.push_back(f);
    }
    return S;
}

CommutantSpace solve_commutant_bruteforce(int bound, const DiagonalGroup& G)
{
    return solve_commutant_bruteforce(bound, G.matrices(G.oracle_field()));
}

bool CommutantSpace::contains(const PlaneEndo& f0) const
{
    PlaneEndo f = f0;
    if (!(f.field() == field)) {
        if (field.ratfun && f.field() == field.base()) {
            auto up = [&](const Scalar& c) { return Scalar::from_num(field, c.num_value()); };
            f = f.map(field, up);
        } else {
            fail("DescriptorMismatch", f.field().name() + " vs " + field.name());
        }
    }
    if (f.degree() > bound) return false;
    size_t N = monos.size();
    std::vector<Scalar> v(2 * N, Scalar::zero(field));
    for (size_t c = 0; c < N; ++c) {
        v[c] = f.p1.coeff(monos[c].first, monos[c].second);
        v[N + c] = f.p2.coeff(monos[c].first, monos[c].second);
    }
    for (const auto& row : constraints) {
        Scalar s = Scalar::zero(field);
        for (size_t c = 0; c < v.size(); ++c)
            if (!row[c].is_zero() && !v[c].is_zero()) s += row[c] * v[c];
        if (!s.is_zero()) return false;
    }
    return true;
}

}  // namespace pa
