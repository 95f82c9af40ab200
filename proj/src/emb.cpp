#include "qemb/emb.hpp"

#include <array>

#include "qemb/linalg.hpp"

namespace qemb::emb {

using quat::EichlerOrder;
using quat::QuatElem;
using quat::quat_one;
using quat::quat_scalar;

namespace {

Int lcm_den(const linalg::Vec4& v, Int acc) {
    for (const Rat& r : v) acc = lcm(acc, Int(r.get_den()));
    return acc;
}

/* Basis of the rank-2 lattice {(u,v) in Q^2 : u*w1 + v*w2 in O}. */
std::array<std::array<Rat, 2>, 2> pair_lattice(const EichlerOrder& o, const QuatElem& w1,
                                               const QuatElem& w2) {
    linalg::Vec4 c1 = o.coords(w1), c2 = o.coords(w2);
    Int q = lcm_den(c2, lcm_den(c1, Int(1)));
    std::array<Int, 4> C1, C2;
    for (int i = 0; i < 4; ++i) {
        C1[i] = Int(Rat(c1[i] * q).get_num());
        C2[i] = Int(Rat(c2[i] * q).get_num());
    }
    // any nonzero 2x2 minor bounds the denominators of the lattice (Cramer)
    Int m = 0;
    for (int i = 0; i < 4 && m == 0; ++i)
        for (int j = i + 1; j < 4 && m == 0; ++j) m = abs(C1[i] * C2[j] - C1[j] * C2[i]);
    if (m == 0) throw Error("pair_lattice: dependent generators");
    // (u,v) = (s,t)/m with s*(q c1) + t*(q c2) = 0 mod m*q
    std::vector<std::vector<Int>> rows(4, std::vector<Int>(6, 0));
    for (int i = 0; i < 4; ++i) {
        rows[i][0] = C1[i];
        rows[i][1] = C2[i];
        rows[i][2 + i] = m * q;
    }
    auto ker = linalg::integer_kernel(rows);
    if (ker.size() != 2) throw Error("pair_lattice: kernel rank != 2");
    std::array<std::array<Rat, 2>, 2> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = Rat(ker[i][j]) / m;
    if (out[0][0] * out[1][1] - out[0][1] * out[1][0] == 0)
        throw Error("pair_lattice: degenerate projection");
    return out;
}

/* Smallest positive v-coordinate in the lattice: gcd of the v-components. */
Rat min_positive_v(const std::array<std::array<Rat, 2>, 2>& lat) {
    Int den = lcm(Int(lat[0][1].get_den()), Int(lat[1][1].get_den()));
    Int g = gcd(Int(Rat(lat[0][1] * den).get_num()), Int(Rat(lat[1][1] * den).get_num()));
    if (g == 0) throw Error("min_positive_v: v-projection is zero");
    return Rat(g) / den;
}

}  // namespace

qnum::Discriminant assoc_discriminant(const EichlerOrder& o, const QuatElem& g) {
    if (trd(g) != 0) throw BadTrace("assoc_discriminant: trd(g) != 0");
    Rat d0 = -o.alg().nrd(g);
    if (d0 <= 0) throw Error("assoc_discriminant: nrd(g) must be negative");
    Rat v0 = min_positive_v(pair_lattice(o, quat_one(), g));
    Rat d = 4 * v0 * v0 * d0;
    if (d.get_den() != 1) throw Error("assoc_discriminant: non-integral result");
    return qnum::Discriminant(Int(d.get_num()));
}

Int assoc_negative_discriminant(const EichlerOrder& o, const QuatElem& c) {
    if (trd(c) != 0) throw BadTrace("assoc_negative_discriminant: trd(c) != 0");
    Rat n = o.alg().nrd(c);
    if (n <= 0) throw Error("assoc_negative_discriminant: nrd(c) must be positive");
    Rat v0 = min_positive_v(pair_lattice(o, quat_one(), c));
    Rat d = -4 * v0 * v0 * n;
    if (d.get_den() != 1) throw Error("assoc_negative_discriminant: non-integral result");
    return Int(d.get_num());
}

Embedding make_embedding(const EichlerOrder& o, const QuatElem& g) {
    if (trd(g) != 0) throw BadTrace("make_embedding: trd(g) != 0");
    Rat n = o.alg().nrd(g);
    if (n >= 0 || n.get_den() != 1 || !qnum::is_discriminant_shape(Int(-n.get_num())))
        throw BadTrace("make_embedding: -nrd(g) is not a positive discriminant");
    qnum::Discriminant d(Int(-n.get_num()));
    QuatElem w = (quat_scalar(Rat(d.parity())) + g).scaled(Rat(1, 2));
    if (!o.contains(w)) throw quat::NotIntegral("make_embedding: (p_D + g)/2 not in order");
    qnum::Discriminant da = assoc_discriminant(o, g);
    if (!(da == d))
        throw NotOptimal("make_embedding: associated discriminant " + da.value().get_str() +
                         " != " + d.value().get_str());
    return Embedding{&o, d, g};
}

Embedding assoc_optimal(const EichlerOrder& o, const QuatElem& g) {
    if (trd(g) != 0) throw BadTrace("assoc_optimal: trd(g) != 0");
    Rat d0 = -o.alg().nrd(g);
    if (d0 <= 0) throw Error("assoc_optimal: nrd(g) must be negative");
    Rat v0 = min_positive_v(pair_lattice(o, quat_one(), g));
    return make_embedding(o, g.scaled(2 * v0));
}

Embedding conjugate(const Embedding& phi, const QuatElem& pi) {
    const EichlerOrder& o = *phi.order;
    if (o.alg().nrd(pi) == 0) throw Error("conjugate: nrd(pi) = 0");
    return assoc_optimal(o, o.alg().conj_by(pi, phi.g));
}

bool equivalent(const Embedding& phi, const Embedding& sigma) {
    const EichlerOrder& o = *phi.order;
    if (!(sigma.order->alg() == o.alg()) || sigma.order->basis() != o.basis())
        throw Error("equivalent: embeddings into different orders");
    if (!(phi.D == sigma.D)) return false;
    // intertwiners: {r : g_sigma r = r g_phi} is 2-dimensional
    std::vector<std::vector<Rat>> sys(4, std::vector<Rat>(4));
    for (int t = 0; t < 4; ++t) {
        QuatElem e;
        e.x[t] = 1;
        QuatElem col = o.alg().mul(sigma.g, e) - o.alg().mul(e, phi.g);
        for (int r = 0; r < 4; ++r) sys[r][t] = col.x[r];
    }
    auto ker = linalg::rational_kernel(sys);
    if (ker.size() != 2) throw Error("equivalent: intertwiner space is not 2-dimensional");
    QuatElem w1, w2;
    w1.x = {ker[0][0], ker[0][1], ker[0][2], ker[0][3]};
    w2.x = {ker[1][0], ker[1][1], ker[1][2], ker[1][3]};
    auto lat = pair_lattice(o, w1, w2);
    QuatElem r1 = w1.scaled(lat[0][0]) + w2.scaled(lat[0][1]);
    QuatElem r2 = w1.scaled(lat[1][0]) + w2.scaled(lat[1][1]);
    // nrd restricted to the intertwiner lattice; represents 1 iff conjugator exists
    Rat a = o.alg().nrd(r1);
    Rat c = o.alg().nrd(r2);
    Rat b = o.alg().nrd(r1 + r2) - a - c;
    if (a.get_den() != 1 || b.get_den() != 1 || c.get_den() != 1)
        throw Error("equivalent: intertwiner norm form is not integral");
    qnum::BQF f{Int(a.get_num()), Int(b.get_num()), Int(c.get_num())};
    if (f.disc() <= 0) throw Error("equivalent: intertwiner norm form is not indefinite");
    return qnum::represents_one(f);
}

}  // namespace qemb::emb
