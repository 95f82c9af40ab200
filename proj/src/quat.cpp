#include "qemb/quat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qemb/qnum.hpp"

namespace qemb::quat {

QuatElem QuatElem::operator+(const QuatElem& o) const {
    QuatElem r;
    for (int i = 0; i < 4; ++i) r.x[i] = x[i] + o.x[i];
    return r;
}

QuatElem QuatElem::operator-(const QuatElem& o) const {
    QuatElem r;
    for (int i = 0; i < 4; ++i) r.x[i] = x[i] - o.x[i];
    return r;
}

QuatElem QuatElem::operator-() const {
    QuatElem r;
    for (int i = 0; i < 4; ++i) r.x[i] = -x[i];
    return r;
}

QuatElem QuatElem::scaled(const Rat& s) const {
    QuatElem r;
    for (int i = 0; i < 4; ++i) r.x[i] = x[i] * s;
    return r;
}

QuatElem quat_one() { return quat_scalar(Rat(1)); }

QuatElem quat_scalar(const Rat& s) {
    QuatElem r;
    r.x[0] = s;
    return r;
}

Rat trd(const QuatElem& x) { return 2 * x.x[0]; }

QuatElem conj(const QuatElem& x) {
    QuatElem r;
    r.x[0] = x.x[0];
    for (int i = 1; i < 4; ++i) r.x[i] = -x.x[i];
    return r;
}

Int height(const QuatElem& x) {
    Int h = 0;
    for (int i = 0; i < 4; ++i) {
        h = std::max(h, Int(abs(x.x[i].get_num())));
        h = std::max(h, Int(x.x[i].get_den()));
    }
    return h;
}

bool lex_less(const QuatElem& a, const QuatElem& b) {
    for (int i = 0; i < 4; ++i) {
        if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
    }
    return false;
}

namespace {

/* (v, u) with r = p^v * u, u a p-unit */
std::pair<long, Rat> p_split(const Rat& r, const Int& p) {
    long v = 0;
    Int num = r.get_num(), den = r.get_den();
    while (num % p == 0) {
        num = exact_div(num, p);
        ++v;
    }
    while (den % p == 0) {
        den = exact_div(den, p);
        --v;
    }
    return {v, Rat(num) / Rat(den)};
}

int legendre_rat(const Rat& u, const Int& p) {
    return qnum::kronecker(u.get_num(), p) * qnum::kronecker(u.get_den(), p);
}

long residue_mod8(const Rat& u) {
    Int num = u.get_num(), den = u.get_den();
    long n8 = mpz_fdiv_ui(num.get_mpz_t(), 8);
    long d8 = mpz_fdiv_ui(den.get_mpz_t(), 8);
    long dinv = (d8 * d8 * d8) % 8;  // odd residues are involutions cubed: d^3 ≡ d^-1 mod 8
    return (n8 * dinv) % 8;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
    if (a == 0 || b == 0) throw Error("hilbert_symbol: zero argument");
    auto [alpha, u] = p_split(a, p);
    auto [beta, w] = p_split(b, p);
    if (p != 2) {
        int s = 1;
        if ((alpha % 2 != 0) && (beta % 2 != 0)) s *= qnum::kronecker(Int(-1), p);
        if (beta % 2 != 0) s *= legendre_rat(u, p);
        if (alpha % 2 != 0) s *= legendre_rat(w, p);
        return s;
    }
    long ur = residue_mod8(u), wr = residue_mod8(w);
    long eps_u = ((ur - 1) / 2) % 2, eps_w = ((wr - 1) / 2) % 2;
    long om_u = ((ur * ur - 1) / 8) % 2, om_w = ((wr * wr - 1) / 8) % 2;
    long e = eps_u * eps_w + (alpha % 2 != 0 ? om_w : 0) + (beta % 2 != 0 ? om_u : 0);
    return (e % 2 != 0) ? -1 : 1;
}

std::vector<Int> ramified_primes(const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw Error("ramified_primes: zero structure constant");
    if (a < 0 && b < 0) throw Error("ramified_primes: definite algebra rejected");
    std::set<Int> cands{Int(2)};
    for (const Rat* r : {&a, &b}) {
        for (const Int& v : {Int(r->get_num()), Int(r->get_den())}) {
            if (abs(v) > 1)
                for (const auto& [p, e] : qnum::factorize(v)) cands.insert(p);
        }
    }
    std::vector<Int> out;
    for (const Int& p : cands) {
        if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
    }
    if (out.size() % 2 != 0)
        throw Error("ramified_primes: internal parity violation (odd ramification set)");
    return out;
}

QuatAlgebra::QuatAlgebra(const Rat& a, const Rat& b) : a_(a), b_(b) {
    ramified_ = ramified_primes(a, b);
    disc_ = 1;
    for (const Int& p : ramified_) disc_ *= p;
}

QuatElem QuatAlgebra::mul(const QuatElem& x, const QuatElem& y) const {
    const Rat &x0 = x.x[0], &x1 = x.x[1], &x2 = x.x[2], &x3 = x.x[3];
    const Rat &y0 = y.x[0], &y1 = y.x[1], &y2 = y.x[2], &y3 = y.x[3];
    QuatElem z;
    z.x[0] = x0 * y0 + a_ * x1 * y1 + b_ * x2 * y2 - a_ * b_ * x3 * y3;
    z.x[1] = x0 * y1 + x1 * y0 - b_ * x2 * y3 + b_ * x3 * y2;
    z.x[2] = x0 * y2 + x2 * y0 + a_ * x1 * y3 - a_ * x3 * y1;
    z.x[3] = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
    return z;
}

Rat QuatAlgebra::nrd(const QuatElem& x) const {
    return x.x[0] * x.x[0] - a_ * x.x[1] * x.x[1] - b_ * x.x[2] * x.x[2] +
           a_ * b_ * x.x[3] * x.x[3];
}

QuatElem QuatAlgebra::inv(const QuatElem& x) const {
    Rat n = nrd(x);
    if (n == 0) throw Error("QuatAlgebra::inv: zero reduced norm");
    return conj(x).scaled(1 / n);
}

QuatElem QuatAlgebra::conj_by(const QuatElem& g, const QuatElem& x) const {
    return mul(mul(g, x), inv(g));
}

EichlerOrder::EichlerOrder(QuatAlgebra alg, std::array<QuatElem, 4> basis, Int level)
    : alg_(std::move(alg)), basis_(std::move(basis)), level_(std::move(level)) {
    if (level_ < 1) throw Error("EichlerOrder: level must be positive");
    linalg::Mat4 bm;
    for (int i = 0; i < 4; ++i) bm[i] = basis_[i].x;
    try {
        basis_inv_ = linalg::invert(bm);
    } catch (const Error&) {
        throw Error("EichlerOrder: basis is not full rank");
    }
    if (!contains(quat_one())) throw NotARing("EichlerOrder: 1 is not in the lattice");
    for (const QuatElem& b : basis_) {
        Rat t = trd(b), n = alg_.nrd(b);
        if (t.get_den() != 1 || n.get_den() != 1)
            throw NotIntegral("EichlerOrder: basis element with non-integral trd or nrd");
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!contains(alg_.mul(basis_[i], basis_[j])))
                throw NotARing("EichlerOrder: lattice not closed under multiplication");
        }
    }
    // reduced discriminant: discrd(O)^2 = |det(trd(b_i b_j))|
    linalg::Mat4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = trd(alg_.mul(basis_[i], basis_[j]));
    // determinant via elimination
    Rat det = 1;
    linalg::Mat4 w = t;
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (w[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) {
            det = 0;
            break;
        }
        if (piv != c) {
            std::swap(w[piv], w[c]);
            det = -det;
        }
        det *= w[c][c];
        for (int r = c + 1; r < 4; ++r) {
            if (w[r][c] == 0) continue;
            Rat f = w[r][c] / w[c][c];
            for (int j = c; j < 4; ++j) w[r][j] -= f * w[c][j];
        }
    }
    Rat adet = abs(det);
    if (adet.get_den() != 1 || !is_square(Int(adet.get_num())))
        throw LevelMismatch("EichlerOrder: trace form determinant is not a perfect square");
    Int discrd = floor_sqrt(Int(adet.get_num()));
    if (gcd(alg_.disc(), level_) != 1)
        throw LevelMismatch("EichlerOrder: level shares a factor with the algebra discriminant");
    if (discrd != alg_.disc() * level_)
        throw LevelMismatch("EichlerOrder: reduced discriminant " + discrd.get_str() +
                            " != disc*level " + Int(alg_.disc() * level_).get_str());
}

linalg::Vec4 EichlerOrder::coords(const QuatElem& x) const {
    return linalg::row_times(x.x, basis_inv_);
}

bool EichlerOrder::contains(const QuatElem& x) const {
    for (const Rat& c : coords(x)) {
        if (c.get_den() != 1) return false;
    }
    return true;
}

QuatElem EichlerOrder::from_coords(const linalg::Vec4& c) const {
    QuatElem r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) r.x[j] += c[i] * basis_[i].x[j];
    }
    return r;
}

namespace {

std::optional<Rat> rat_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    Int num = r.get_num(), den = r.get_den();
    if (!is_square(num) || !is_square(den)) return std::nullopt;
    return Rat(floor_sqrt(num)) / Rat(floor_sqrt(den));
}

}  // namespace

std::vector<QuatElem> enumerate_norm(const EichlerOrder& o, const Rat& n, long height_bound) {
    // Gram matrix of nrd in the order basis
    linalg::Mat4 g;
    std::array<Rat, 4> diag;
    for (int i = 0; i < 4; ++i) diag[i] = o.alg().nrd(o.basis()[i]);
    for (int i = 0; i < 4; ++i) {
        g[i][i] = diag[i];
        for (int j = i + 1; j < 4; ++j) {
            Rat v = (o.alg().nrd(o.basis()[i] + o.basis()[j]) - diag[i] - diag[j]) / 2;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    struct Key {
        Int h;
        std::array<Int, 4> c;
        bool operator<(const Key& o) const {
            if (h != o.h) return h < o.h;
            return c < o.c;
        }
    };
    std::vector<Key> found;
    Rat A = g[3][3];
    for (long c0 = -height_bound; c0 <= height_bound; ++c0) {
        for (long c1 = -height_bound; c1 <= height_bound; ++c1) {
            for (long c2 = -height_bound; c2 <= height_bound; ++c2) {
                Rat B = 2 * (g[0][3] * c0 + g[1][3] * c1 + g[2][3] * c2);
                Rat C = g[0][0] * c0 * c0 + g[1][1] * c1 * c1 + g[2][2] * c2 * c2 +
                        2 * (g[0][1] * c0 * c1 + g[0][2] * c0 * c2 + g[1][2] * c1 * c2) - n;
                std::vector<Rat> roots;
                if (A == 0) {
                    if (B != 0) roots.push_back(-C / B);
                } else {
                    Rat disc = B * B - 4 * A * C;
                    auto s = rat_sqrt(disc);
                    if (s) {
                        roots.push_back((-B + *s) / (2 * A));
                        if (*s != 0) roots.push_back((-B - *s) / (2 * A));
                    }
                }
                for (const Rat& t : roots) {
                    if (t.get_den() != 1) continue;
                    Int c3(t.get_num());
                    if (abs(c3) > height_bound) continue;
                    Int h = std::max(std::max(Int(std::abs(c0)), Int(std::abs(c1))),
                                     std::max(Int(std::abs(c2)), Int(abs(c3))));
                    found.push_back(Key{h, {Int(c0), Int(c1), Int(c2), c3}});
                }
            }
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<QuatElem> out;
    out.reserve(found.size());
    for (const Key& k : found) {
        linalg::Vec4 c{Rat(k.c[0]), Rat(k.c[1]), Rat(k.c[2]), Rat(k.c[3])};
        out.push_back(o.from_coords(c));
    }
    return out;
}

bool coset_equal(const EichlerOrder& o, const QuatElem& x, const QuatElem& y, const Rat& n) {
    if (o.alg().nrd(x) != n || o.alg().nrd(y) != n) throw Error("coset_equal: norm mismatch");
    return o.contains(o.alg().mul(x, conj(y)).scaled(1 / n));
}

QuatElem normalizer_element(const EichlerOrder& o, const Int& p) {
    if (o.alg().disc() % p != 0)
        throw Error("normalizer_element: p does not divide the algebra discriminant");
    for (long h = 8; h <= 1024; h *= 2) {
        auto v = enumerate_norm(o, Rat(p), h);
        if (!v.empty()) return v.front();
    }
    throw Error("normalizer_element: no norm-p element found within escalating bound");
}

Int sigma_prime(const Int& n, const Int& disc) {
    Int s = 0;
    for (const Int& d : qnum::divisors(n)) {
        if (gcd(d, disc) == 1) s += d;
    }
    return s;
}

namespace {

std::vector<QuatElem> dedupe_cosets(const EichlerOrder& o, const std::vector<QuatElem>& xs,
                                    const Rat& n) {
    std::vector<QuatElem> reps;
    for (const QuatElem& x : xs) {
        bool fresh = true;
        for (const QuatElem& r : reps) {
            if (coset_equal(o, x, r, n)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(x);
    }
    return reps;
}

std::vector<QuatElem> prime_theta(const EichlerOrder& o, const Int& p, long height_start) {
    Int expected = p + 1;
    for (long h = height_start; h <= 4096; h *= 2) {
        auto cands = enumerate_norm(o, Rat(p), h);
        auto reps = dedupe_cosets(o, cands, Rat(p));
        if (Int((long)reps.size()) == expected) return reps;
        if (Int((long)reps.size()) > expected)
            throw Error("theta: more cosets than the a-priori count (internal)");
    }
    throw Error("theta: coset search exhausted the height bound");
}

std::vector<QuatElem> cross_products(const EichlerOrder& o, const std::vector<QuatElem>& a,
                                     const std::vector<QuatElem>& b, const Rat& norm,
                                     const Int& expected) {
    std::vector<QuatElem> prods;
    prods.reserve(a.size() * b.size());
    for (const QuatElem& x : a)
        for (const QuatElem& y : b) prods.push_back(o.alg().mul(x, y));
    auto reps = dedupe_cosets(o, prods, norm);
    if (Int((long)reps.size()) != expected)
        throw Error("theta: product coset count mismatch (internal)");
    return reps;
}

}  // namespace

CosetReps theta(const EichlerOrder& o, const Int& n, long height_start) {
    if (n < 1) throw Error("theta: n must be positive");
    if (gcd(n, o.level()) != 1) throw GcdViolation("theta: gcd(n, level) > 1");
    std::vector<QuatElem> acc{quat_one()};
    Rat acc_norm(1);
    Int acc_n(1);
    for (const auto& [p, e] : qnum::factorize(n)) {
        std::vector<QuatElem> pe_reps;
        if (o.alg().disc() % p == 0) {
            QuatElem w = normalizer_element(o, p);
            QuatElem cur = w;
            for (unsigned i = 1; i < e; ++i) cur = o.alg().mul(cur, w);
            pe_reps = {cur};
        } else {
            auto base = prime_theta(o, p, height_start);
            pe_reps = base;
            Int pk = p;
            for (unsigned i = 2; i <= e; ++i) {
                pk *= p;
                pe_reps = cross_products(o, pe_reps, base, Rat(pk), sigma_prime(pk, o.alg().disc()));
            }
        }
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        acc_n *= pe;
        acc_norm *= Rat(pe);
        acc = cross_products(o, acc, pe_reps, acc_norm, sigma_prime(acc_n, o.alg().disc()));
    }
    std::sort(acc.begin(), acc.end(), [&](const QuatElem& x, const QuatElem& y) {
        Int hx = height(x), hy = height(y);
        if (hx != hy) return hx < hy;
        return lex_less(x, y);
    });
    return CosetReps{n, acc};
}

std::array<std::array<IReal, 2>, 2> real_embedding(const QuatAlgebra& alg, const QuatElem& x,
                                                   long prec) {
    const Rat &x0 = x.x[0], &x1 = x.x[1], &x2 = x.x[2], &x3 = x.x[3];
    if (alg.a() > 0) {
        IReal sa = IReal(alg.a(), prec).sqrt();
        IReal b(alg.b(), prec);
        return {{{IReal(x0, prec) + IReal(x1, prec) * sa,
                  b * (IReal(x2, prec) + IReal(x3, prec) * sa)},
                 {IReal(x2, prec) - IReal(x3, prec) * sa,
                  IReal(x0, prec) - IReal(x1, prec) * sa}}};
    }
    if (alg.b() <= 0) throw Error("real_embedding: definite algebra");
    IReal sb = IReal(alg.b(), prec).sqrt();
    IReal a(alg.a(), prec);
    return {{{IReal(x0, prec) + IReal(x2, prec) * sb,
              a * (IReal(x1, prec) - IReal(x3, prec) * sb)},
             {IReal(x1, prec) + IReal(x3, prec) * sb,
              IReal(x0, prec) - IReal(x2, prec) * sb}}};
}

}  // namespace qemb::quat
