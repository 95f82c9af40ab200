#include "qemb/qnum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qemb::qnum {

namespace {
constexpr int kMaxReduceSteps = 2000000;
constexpr int kMaxCycleSteps = 4000000;
}  // namespace

Discriminant::Discriminant(Int value) : value_(std::move(value)) {
    if (value_ <= 0) throw Error("Discriminant: must be positive");
    Int r = value_ % 4;
    if (r != 0 && r != 1) throw Error("Discriminant: must be 0 or 1 mod 4");
    if (is_square(value_)) throw Error("Discriminant: must not be a square");
}

Int BQF::content() const {
    Int g = gcd(gcd(abs(a), abs(b)), abs(c));
    return g;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const {
    Int dt = det();
    if (dt == 1) return Mat2{d, -b, -c, a};
    if (dt == -1) return Mat2{-d, b, c, -a};
    throw Error("Mat2::inverse: determinant not a unit");
}

BQF apply(const BQF& f, const Mat2& m) {
    Int a2 = f.eval(m.a, m.c);
    Int c2 = f.eval(m.b, m.d);
    Int b2 = 2 * f.a * m.a * m.b + f.b * (m.a * m.d + m.b * m.c) + 2 * f.c * m.c * m.d;
    return BQF{a2, b2, c2};
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_discriminant_shape(const Int& d) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
    return r == 0 || r == 1;
}

bool is_reduced(const BQF& f) {
    Int d = f.disc();
    if (d <= 0 || is_square(d)) throw Error("is_reduced: wants positive non-square discriminant");
    if (f.b <= 0) return false;
    Int s = floor_sqrt(d);
    if (f.b > s) return false;
    Int a2 = 2 * abs(f.a);
    return a2 > s - f.b && a2 <= s + f.b;
}

namespace {

/* rho step; returns the new form and the column transform taking old to new. */
std::pair<BQF, Mat2> rho_step(const BQF& f) {
    Int d = f.disc();
    Int s = floor_sqrt(d);
    if (f.c == 0) throw Error("rho: degenerate form");
    Int m = 2 * abs(f.c);
    Int top = (abs(f.c) <= s) ? s : abs(f.c);
    Int r;
    mpz_fdiv_r((r.get_mpz_t)(), Int(top + f.b).get_mpz_t(), m.get_mpz_t());
    Int b2 = top - r;  // b2 ≡ -b (mod m), top - m < b2 <= top
    Int c2 = exact_div(b2 * b2 - d, 4 * f.c);
    Int t = exact_div(f.b + b2, 2 * f.c);
    return {BQF{f.c, b2, c2}, Mat2{0, -1, 1, t}};
}

}  // namespace

BQF rho(const BQF& f) { return rho_step(f).first; }

BQF reduce(const BQF& f) {
    BQF g = f;
    for (int i = 0; i < kMaxReduceSteps; ++i) {
        if (is_reduced(g)) return g;
        g = rho(g);
    }
    throw Error("reduce: did not terminate");
}

std::pair<BQF, Mat2> reduce_with_transform(const BQF& f) {
    BQF g = f;
    Mat2 m{1, 0, 0, 1};
    for (int i = 0; i < kMaxReduceSteps; ++i) {
        if (is_reduced(g)) return {g, m};
        auto [g2, step] = rho_step(g);
        g = g2;
        m = m * step;
    }
    throw Error("reduce: did not terminate");
}

std::vector<BQF> reduced_cycle(const BQF& f) {
    BQF start = reduce(f);
    std::vector<BQF> cycle{start};
    BQF cur = rho(start);
    while (!(cur == start)) {
        cycle.push_back(cur);
        cur = rho(cur);
        if ((int)cycle.size() > kMaxCycleSteps) throw Error("reduced_cycle: runaway");
    }
    return cycle;
}

bool narrowly_equivalent(const BQF& f, const BQF& g) {
    if (f.disc() != g.disc()) return false;
    BQF fr = reduce(f);
    BQF gr = reduce(g);
    BQF cur = fr;
    do {
        if (cur == gr) return true;
        cur = rho(cur);
    } while (!(cur == fr));
    return false;
}

BQF principal_form(const Discriminant& d) {
    Int b0 = d.parity();
    return BQF{1, b0, exact_div(b0 * b0 - d.value(), 4)};
}

bool is_narrowly_principal(const BQF& f) {
    Int d = f.disc();
    return narrowly_equivalent(f, principal_form(Discriminant(d)));
}

bool represents_one(const BQF& f) {
    if (!f.primitive()) return false;
    return is_narrowly_principal(f);
}

QuadUnit fundamental_unit(const Discriminant& d) {
    BQF f = reduce(principal_form(d));
    Mat2 m{1, 0, 0, 1};
    BQF cur = f;
    int guard = 0;
    do {
        auto [nxt, step] = rho_step(cur);
        cur = nxt;
        m = m * step;
        if (++guard > kMaxCycleSteps) throw Error("fundamental_unit: runaway cycle");
    } while (!(cur == f));
    Int t = m.a + m.d;
    Int u = exact_div(m.c, f.a);
    t = abs(t);
    u = abs(u);
    if (u == 0 || t * t - d.value() * u * u != 4)
        throw Error("fundamental_unit: internal automorph check failed");
    return QuadUnit{t, u, d.value()};
}

namespace {

/* eps = x + y*w, w = (b0 + sqrt(D))/2, w^2 = b0*w + (D - b0^2)/4. */
struct OmegaCtx {
    Int b0;
    Int q;       // (D - b0^2)/4
    Int mod;     // 0 = exact
    Int red(const Int& v) const {
        if (mod == 0) return v;
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
        return r;
    }
};

struct OmegaElt {
    Int x, y;
};

OmegaElt omul(const OmegaCtx& ctx, const OmegaElt& a, const OmegaElt& b) {
    Int yy = a.y * b.y;
    return OmegaElt{ctx.red(a.x * b.x + ctx.q * yy), ctx.red(a.x * b.y + a.y * b.x + ctx.b0 * yy)};
}

OmegaElt opow(const OmegaCtx& ctx, OmegaElt base, Int e) {
    OmegaElt acc{1, 0};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = omul(ctx, acc, base);
        base = omul(ctx, base, base);
        e >>= 1;
    }
    return acc;
}

OmegaElt unit_as_omega(const QuadUnit& u, const OmegaCtx& ctx) {
    // (T + U sqrt(D))/2 = (T - b0 U)/2 + U*w
    Int x = exact_div(u.t - ctx.b0 * u.u, 2);
    return OmegaElt{ctx.red(x), ctx.red(u.u)};
}

OmegaCtx make_ctx(const Int& d, const Int& mod) {
    Int b0 = mpz_odd_p(d.get_mpz_t()) ? 1 : 0;
    return OmegaCtx{b0, exact_div(d - b0 * b0, 4), mod};
}

}  // namespace

std::pair<Int, Int> unit_power(const QuadUnit& u, unsigned long i) {
    if (i < 1) throw Error("unit_power: i >= 1 required");
    OmegaCtx ctx = make_ctx(u.d, 0);
    OmegaElt e = opow(ctx, unit_as_omega(u, ctx), Int((unsigned long)i));
    return {2 * e.x + ctx.b0 * e.y, e.y};
}

std::vector<Int> tower_exponents(const Discriminant& d, const Int& p, unsigned k) {
    if (k < 1) throw Error("tower_exponents: k >= 1 required");
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw Error("tower_exponents: p not prime");
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
    OmegaCtx ctx = make_ctx(d.value(), mod);
    OmegaElt eps = unit_as_omega(fundamental_unit(d), ctx);
    std::vector<Int> es;
    // e1: minimal i >= 1 with p | U_i
    OmegaElt cur = eps;
    Int e1 = 0;
    for (Int i = 1; i <= p + 1; ++i) {
        if (cur.y % p == 0) {
            e1 = i;
            break;
        }
        cur = omul(ctx, cur, eps);
    }
    if (e1 == 0) throw Error("tower_exponents: e1 not found (internal)");
    es.push_back(e1);
    OmegaElt base = opow(ctx, eps, e1);
    Int pk = p;  // p^level
    for (unsigned level = 2; level <= k; ++level) {
        pk *= p;
        OmegaElt step = base;
        Int ek = 0;
        for (Int i = 1; i <= p; ++i) {
            if (step.y % pk == 0) {
                ek = i;
                break;
            }
            step = omul(ctx, step, base);
        }
        if (ek == 0) throw Error("tower_exponents: e_k not found (internal)");
        es.push_back(ek);
        base = opow(ctx, base, ek);
    }
    return es;
}

Int tower_exponent(const Discriminant& d, const Int& p, unsigned k) {
    return tower_exponents(d, p, k).back();
}

std::pair<Int, Int> fundamental_discriminant(const Int& d) {
    if (d <= 0 || !is_discriminant_shape(d) || is_square(d))
        throw Error("fundamental_discriminant: not a positive non-square discriminant");
    Int sf = 1;
    for (const auto& [p, e] : factorize(d)) {
        if (e % 2 == 1) sf *= p;
    }
    Int t = floor_sqrt(exact_div(d, sf));
    if (sf % 4 == 1) return {sf, t};
    if (t % 2 != 0) throw Error("fundamental_discriminant: internal parity error");
    return {4 * sf, exact_div(t, 2)};
}

Int unit_index_to_fundamental(const Int& d) {
    auto [df, s] = fundamental_discriminant(d);
    Int m = 1;
    Int cur = df;
    for (const auto& [p, a] : factorize(s)) {
        auto es = tower_exponents(Discriminant(cur), p, a);
        for (const auto& e : es) m *= e;
        Int p2a;
        mpz_pow_ui(p2a.get_mpz_t(), p.get_mpz_t(), 2 * a);
        cur *= p2a;
    }
    return m;
}

unsigned long narrow_class_number(const Discriminant& d) {
    Int dv = d.value();
    Int s = floor_sqrt(dv);
    std::set<std::array<Int, 3>> forms;
    for (Int b = 1; b <= s; ++b) {
        if ((dv - b * b) % 4 != 0) continue;
        Int m = exact_div(dv - b * b, 4);  // -a*c
        for (const Int& a : divisors(m)) {
            if (2 * a <= s - b || 2 * a > s + b) continue;
            Int c = -exact_div(m, a);
            if (gcd(gcd(a, b), c) != 1) continue;
            forms.insert({a, b, c});
            forms.insert({-a, b, -c});
        }
    }
    std::set<std::array<Int, 3>> seen;
    unsigned long classes = 0;
    for (const auto& fa : forms) {
        if (seen.count(fa)) continue;
        ++classes;
        for (const BQF& g : reduced_cycle(BQF{fa[0], fa[1], fa[2]}))
            seen.insert({g.a, g.b, g.c});
    }
    return classes;
}

BQF prime_form(const Discriminant& d, const Int& p) {
    int kr = kronecker(d.value(), p);
    if (kr == -1) throw Error("prime_form: p inert, no form above p");
    Int dv = d.value();
    Int b = -1;
    Int fourp = 4 * p;
    for (Int cand = 0; cand < 2 * p; ++cand) {
        if ((cand * cand - dv) % fourp == 0) {
            b = cand;
            break;
        }
    }
    if (b < 0) throw Error("prime_form: no square root of D mod 4p (internal)");
    BQF f{p, b, exact_div(b * b - dv, fourp)};
    if (!f.primitive()) throw Error("prime_form: form above p is imprimitive (p^2 | conductor pathology)");
    return f;
}

unsigned long prime_form_order(const Discriminant& d, const Int& p) {
    if (kronecker(d.value(), p) == -1) return 1;
    BQF q = reduce(prime_form(d, p));
    BQF acc = q;
    unsigned long ord = 1;
    while (!is_narrowly_principal(acc)) {
        acc = reduce(compose(acc, q));
        ++ord;
        if (ord > 1000000) throw Error("prime_form_order: runaway");
    }
    return ord;
}

std::pair<Discriminant, unsigned> p_fundamental_part(const Discriminant& d, const Int& p) {
    Int cur = d.value();
    Int p2 = p * p;
    unsigned k = 0;
    while (cur % p2 == 0 && is_discriminant_shape(exact_div(cur, p2))) {
        cur = exact_div(cur, p2);
        ++k;
    }
    return {Discriminant(cur), k};
}

BQF compose(const BQF& f1, const BQF& f2) {
    Int d = f1.disc();
    if (d != f2.disc()) throw Error("compose: discriminant mismatch");
    if (!f1.primitive() || !f2.primitive()) throw Error("compose: forms must be primitive");
    // replace f2 by an equivalent form whose first coefficient is coprime to f1.a
    Int x, y, val;
    bool found = false;
    for (Int h = 1; h <= 8 * (abs(f1.a) + 2) && !found; h *= 2) {
        for (Int xx = -h; xx <= h && !found; ++xx) {
            for (Int yy = -h; yy <= h && !found; ++yy) {
                if (gcd(xx, yy) != 1) continue;
                Int v = f2.eval(xx, yy);
                if (v != 0 && gcd(v, f1.a) == 1) {
                    x = xx;
                    y = yy;
                    val = v;
                    found = true;
                }
            }
        }
    }
    if (!found) throw Error("compose: no coprime representation found (internal)");
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    // columns (x,y) and (-v,u): det = x*u + y*v = 1
    Mat2 s{x, -v, y, u};
    BQF g2 = apply(f2, s);
    // CRT: B ≡ f1.b (mod 2 f1.a), B ≡ g2.b (mod 2 g2.a)
    Int a1 = f1.a, a2 = g2.a;
    Int diff = exact_div(g2.b - f1.b, 2);
    Int inv;
    Int a2abs = abs(a2);
    Int b3;
    if (a2abs == 1) {
        b3 = f1.b;
    } else {
        if (mpz_invert(inv.get_mpz_t(), Int(a1 % a2abs).get_mpz_t(), a2abs.get_mpz_t()) == 0)
            throw Error("compose: modular inverse failed (internal)");
        Int t = (diff * inv) % a2abs;
        b3 = f1.b + 2 * a1 * t;
    }
    Int a3 = a1 * a2;
    Int c3 = exact_div(b3 * b3 - d, 4 * a3);
    return BQF{a3, b3, c3};
}

std::optional<Mat2> proper_equivalence_transform(const BQF& f, const BQF& g) {
    if (f.disc() != g.disc()) return std::nullopt;
    auto [fr, mf] = reduce_with_transform(f);
    auto [gr, mg] = reduce_with_transform(g);
    BQF cur = fr;
    Mat2 walk{1, 0, 0, 1};
    int guard = 0;
    do {
        if (cur == gr) {
            Mat2 m = mf * walk * mg.inverse();
            if (!(apply(f, m) == g)) throw Error("proper_equivalence_transform: internal check failed");
            return m;
        }
        auto [nxt, step] = rho_step(cur);
        cur = nxt;
        walk = walk * step;
        if (++guard > kMaxCycleSteps) throw Error("proper_equivalence_transform: runaway");
    } while (!(cur == fr));
    return std::nullopt;
}

Mat2 fundamental_automorph(const BQF& f) {
    if (!f.primitive()) throw Error("fundamental_automorph: form must be primitive");
    Int d = f.disc();
    QuadUnit e = fundamental_unit(Discriminant(d));
    Mat2 m{exact_div(e.t - f.b * e.u, 2), -f.c * e.u, f.a * e.u, exact_div(e.t + f.b * e.u, 2)};
    if (!(apply(f, m) == f)) throw Error("fundamental_automorph: internal check failed");
    return m;
}

std::vector<std::pair<Int, Int>> represent(const BQF& f, const Int& n) {
    if (n == 0) throw Error("represent: n must be nonzero");
    std::vector<std::pair<Int, Int>> out;
    Int cont = f.content();
    if (n % cont != 0) return out;
    BQF ft{exact_div(f.a, cont), exact_div(f.b, cont), exact_div(f.c, cont)};
    Int nn = exact_div(n, cont);
    Int delta = ft.disc();
    for (const Int& dd : divisors(abs(nn))) {
        if (nn % (dd * dd) != 0) continue;
        Int m = exact_div(nn, dd * dd);
        Int mabs = abs(m);
        std::set<Int> bs;
        for (const Int& r : sqrt_mod(delta, 4 * mabs)) {
            Int b;
            mpz_fdiv_r(b.get_mpz_t(), r.get_mpz_t(), Int(2 * mabs).get_mpz_t());
            bs.insert(b);
        }
        for (const Int& b : bs) {
            Int c = exact_div(b * b - delta, 4 * m);
            BQF g{m, b, c};
            auto s = proper_equivalence_transform(ft, g);
            if (s) out.emplace_back(dd * s->a, dd * s->c);
        }
    }
    for (const auto& [x, y] : out) {
        if (f.eval(x, y) != n) throw Error("represent: internal value check failed");
    }
    return out;
}

namespace {

bool miller_rabin(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    while (true) {
        Int y = rng.get_z_range(n - 1) + 1;
        Int c = rng.get_z_range(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(m, Int(r - k));
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(const Int& n, std::map<Int, unsigned>& acc) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        acc[n] += 1;
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, acc);
    factor_rec(exact_div(n, d), acc);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n == 0) throw Error("factorize: zero");
    Int m = abs(n);
    std::map<Int, unsigned> acc;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (m % p == 0) {
            acc[Int(p)] += 1;
            m = exact_div(m, Int(p));
        }
    }
    Int p = 17;
    while (p * p <= m && p < 100000) {
        while (m % p == 0) {
            acc[p] += 1;
            m = exact_div(m, p);
        }
        p += 2;
    }
    if (m > 1) factor_rec(m, acc);
    return {acc.begin(), acc.end()};
}

std::vector<Int> divisors(const Int& n) {
    if (n == 0) throw Error("divisors: zero");
    std::vector<Int> out{1};
    for (const auto& [p, e] : factorize(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Int tonelli_shanks(const Int& a, const Int& p) {
    // a a QR mod odd prime p, a not ≡ 0
    if (p % 4 == 3) {
        Int r;
        Int e = exact_div(p + 1, 4);
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    Int q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q = exact_div(q, 2);
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e = exact_div(q + 1, 2);
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    unsigned m = s;
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
            if (i == m) throw Error("tonelli_shanks: not a QR (internal)");
        }
        Int b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

/* all y mod p^m with y^2 ≡ a (mod p^m), p ∤ a */
std::vector<Int> sqrt_unit_mod_pk(const Int& a, const Int& p, unsigned m) {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), m);
    if (p != 2) {
        if (kronecker(a, p) != 1) return {};
        Int r = tonelli_shanks(a % p, p);
        // Newton lifting
        Int pk = p;
        while (pk < q) {
            pk = pk * pk;
            Int pm = std::min(pk, q);
            Int inv2r;
            if (mpz_invert(inv2r.get_mpz_t(), Int(2 * r % pm).get_mpz_t(), pm.get_mpz_t()) == 0)
                throw Error("sqrt_unit_mod_pk: lift inverse failed");
            r = (r - (r * r - a) % pm * inv2r) % pm;
            if (r < 0) r += pm;
        }
        r %= q;
        Int r2 = (q - r) % q;
        if (r == r2) return {r};
        return {r, r2};
    }
    if (m == 1) return {Int(1)};
    if (m == 2) return (a % 4 == 1) ? std::vector<Int>{Int(1), Int(3)} : std::vector<Int>{};
    if (a % 8 != 1) return {};
    Int r = 1;
    Int pj = 8;
    for (unsigned j = 3; j < m; ++j) {
        Int pj1 = pj * 2;
        if ((r * r - a) % pj1 != 0) r += exact_div(pj, 2);
        pj = pj1;
    }
    std::set<Int> sols{r % q, (q - r) % q, (r + exact_div(q, 2)) % q, (q - r + exact_div(q, 2)) % q};
    return {sols.begin(), sols.end()};
}

/* all x mod p^k with x^2 ≡ a (mod p^k) */
std::vector<Int> sqrt_mod_pk(Int a, const Int& p, unsigned k) {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), k);
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
    std::vector<Int> out;
    if (a == 0) {
        unsigned half_up = (k + 1) / 2;
        Int step;
        mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(), half_up);
        for (Int x = 0; x < q; x += step) out.push_back(x);
        return out;
    }
    unsigned t = 0;
    Int aa = a;
    while (aa % p == 0) {
        aa = exact_div(aa, p);
        ++t;
    }
    if (t % 2 == 1) return {};
    Int pt2;
    mpz_pow_ui(pt2.get_mpz_t(), p.get_mpz_t(), t / 2);
    Int step;
    mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(), k - t / 2);
    for (const Int& y : sqrt_unit_mod_pk(aa, p, k - t)) {
        Int x0 = pt2 * y % step;
        for (Int x = x0; x < q; x += step) {
            if ((x * x - a) % q == 0) out.push_back(x);
        }
    }
    return out;
}

}  // namespace

std::vector<Int> sqrt_mod(const Int& a, const Int& m) {
    if (m < 1) throw Error("sqrt_mod: modulus must be >= 1");
    if (m == 1) return {Int(0)};
    std::vector<Int> sols{Int(0)};
    Int mod_so_far = 1;
    for (const auto& [p, e] : factorize(m)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        auto part = sqrt_mod_pk(a, p, e);
        std::vector<Int> next;
        Int g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), mod_so_far.get_mpz_t(), pe.get_mpz_t());
        Int newmod = mod_so_far * pe;
        for (const Int& s1 : sols) {
            for (const Int& s2 : part) {
                // x ≡ s1 (mod_so_far), x ≡ s2 (pe)
                Int x = (s1 * v % newmod * pe + s2 * u % newmod * mod_so_far) % newmod;
                if (x < 0) x += newmod;
                next.push_back(x);
            }
        }
        sols = std::move(next);
        mod_so_far = newmod;
        if (sols.size() > 2000000) throw Error("sqrt_mod: solution set too large");
    }
    std::sort(sols.begin(), sols.end());
    return sols;
}

}  // namespace qemb::qnum
