#include "qemb/geo.hpp"

#include <algorithm>

#include "qemb/linalg.hpp"

namespace qemb::geo {

using emb::Embedding;
using quat::EichlerOrder;
using quat::QuatElem;

Geodesic make_geodesic(const Embedding& phi) {
    qnum::QuadUnit e = qnum::fundamental_unit(phi.D);
    QuatElem unit = (quat::quat_scalar(Rat(e.t)) + phi.g.scaled(Rat(e.u))).scaled(Rat(1, 2));
    if (phi.order->alg().nrd(unit) != 1) throw Error("make_geodesic: unit has wrong norm");
    if (trd(unit) * trd(unit) <= 4) throw Error("make_geodesic: transformation not hyperbolic");
    return Geodesic{phi, unit};
}

namespace {

std::optional<ProjPt> fixed_point(const Embedding& phi, int which, long prec) {
    auto m = quat::real_embedding(phi.order->alg(), phi.g, prec);
    IReal lam = IReal(Rat(phi.D.value()), prec).sqrt();
    if (which < 0) lam = -lam;
    // eigenvector of iota(g) for eigenvalue lam: (alpha + lam : gamma) ~ (beta : lam - alpha)
    IReal an = m[0][0] + lam, ad = m[1][0];
    if (an.sign() || ad.sign()) return ProjPt{an, ad};
    IReal bn = m[0][1], bd = lam - m[0][0];
    if (bn.sign() || bd.sign()) return ProjPt{bn, bd};
    return std::nullopt;
}

IReal wedge(const ProjPt& p, const ProjPt& q) { return p.n * q.d - q.n * p.d; }

}  // namespace

std::optional<std::array<ProjPt, 2>> endpoints(const Embedding& phi, long prec) {
    auto att = fixed_point(phi, +1, prec);
    auto rep = fixed_point(phi, -1, prec);
    if (!att || !rep) return std::nullopt;
    return std::array<ProjPt, 2>{*att, *rep};
}

Rat linkage(const Embedding& phi1, const Embedding& phi2) {
    if (!(phi1.order->alg() == phi2.order->alg())) throw Error("linkage: different algebras");
    return trd(phi1.order->alg().mul(phi1.g, phi2.g)) / 2;
}

bool transversal(const Embedding& phi1, const Embedding& phi2) {
    Rat x = linkage(phi1, phi2);
    return x * x < Rat(phi1.D.value() * phi2.D.value());
}

int crossing_sign(const Embedding& phi1, const Embedding& phi2) {
    if (!transversal(phi1, phi2)) throw Error("crossing_sign: geodesics are not transversal");
    for (long prec = 128; prec <= 65536; prec *= 2) {
        auto r1 = fixed_point(phi1, -1, prec);
        auto r2 = fixed_point(phi2, -1, prec);
        auto a2 = fixed_point(phi2, +1, prec);
        if (!r1 || !r2 || !a2) continue;
        // cyclic orientation (r1, r2, a2) on the boundary circle; representative
        // signs cancel since each point enters exactly two factors
        IReal prod = wedge(*r1, *r2) * wedge(*r2, *a2) * wedge(*r1, *a2);
        if (auto s = prod.sign()) return -*s;
    }
    throw Error("crossing_sign: undecided at maximal precision");
}

Int intersection_level(const Embedding& phi1, const Embedding& phi2) {
    if (!transversal(phi1, phi2)) throw Error("intersection_level: not transversal");
    const EichlerOrder& o = *phi1.order;
    Rat x = linkage(phi1, phi2);
    QuatElem c = o.alg().mul(phi1.g, phi2.g) - quat::quat_scalar(x);
    Int delta0 = Int(Rat(x * x - phi1.D.value() * phi2.D.value()).get_num());
    Int dassoc = emb::assoc_negative_discriminant(o, c);
    Int ratio = exact_div(delta0, dassoc);  // = level^2
    Int level = floor_sqrt(ratio);
    if (level * level != ratio) throw Error("intersection_level: non-square level ratio");
    return level;
}

namespace {

/* The rank-2 lattice O ∩ (trace 0) ∩ g1-perp, with the norm form and the
   action of conjugation by the fundamental unit of phi1. */
struct PerpLattice {
    QuatElem w1, w2;
    qnum::BQF q;
    int sigma;        // conj matrix = sigma * A^j in the automorph group
    unsigned long j;
    qnum::Mat2 a;     // fundamental automorph of the primitive part
};

std::pair<Int, Int> act(const qnum::Mat2& m, const std::pair<Int, Int>& v) {
    return {m.a * v.first + m.b * v.second, m.c * v.first + m.d * v.second};
}

PerpLattice build_perp(const EichlerOrder& o, const Embedding& phi1) {
    // integer conditions trd(y) = 0 and trd(y g1) = 0 in order coordinates
    std::vector<std::vector<Int>> rows(2, std::vector<Int>(4));
    for (int i = 0; i < 4; ++i) {
        Rat t0 = trd(o.basis()[i]);
        Rat t1 = trd(o.alg().mul(o.basis()[i], phi1.g));
        if (t0.get_den() != 1 || t1.get_den() != 1)
            throw Error("build_perp: non-integral trace pairing");
        rows[0][i] = Int(t0.get_num());
        rows[1][i] = Int(t1.get_num());
    }
    auto ker = linalg::integer_kernel(rows);
    if (ker.size() != 2) throw Error("build_perp: kernel rank != 2");
    auto from = [&](const std::vector<Int>& v) {
        linalg::Vec4 c{Rat(v[0]), Rat(v[1]), Rat(v[2]), Rat(v[3])};
        return o.from_coords(c);
    };
    QuatElem w1 = from(ker[0]), w2 = from(ker[1]);
    auto as_int = [](const Rat& r) {
        if (r.get_den() != 1) throw Error("build_perp: non-integral norm form");
        return Int(r.get_num());
    };
    qnum::BQF q{as_int(o.alg().nrd(w1)),
                as_int(o.alg().nrd(w1 + w2) - o.alg().nrd(w1) - o.alg().nrd(w2)),
                as_int(o.alg().nrd(w2))};
    if (q.disc() <= 0) throw Error("build_perp: perp form not indefinite");

    // conjugation by phi1(eps) as an integer matrix in the (w1, w2) basis
    QuatElem unit = make_geodesic(phi1).unit;
    int r0 = -1, r1 = -1;
    for (int i = 0; i < 4 && r0 < 0; ++i)
        for (int k = i + 1; k < 4 && r0 < 0; ++k)
            if (w1.x[i] * w2.x[k] - w1.x[k] * w2.x[i] != 0) r0 = i, r1 = k;
    if (r0 < 0) throw Error("build_perp: degenerate basis");
    Rat det = w1.x[r0] * w2.x[r1] - w1.x[r1] * w2.x[r0];
    qnum::Mat2 m;
    Int* slots[4] = {&m.a, &m.b, &m.c, &m.d};
    for (int col = 0; col < 2; ++col) {
        QuatElem img = o.alg().conj_by(unit, col == 0 ? w1 : w2);
        Rat s = (img.x[r0] * w2.x[r1] - img.x[r1] * w2.x[r0]) / det;
        Rat t = (w1.x[r0] * img.x[r1] - w1.x[r1] * img.x[r0]) / det;
        if (s.get_den() != 1 || t.get_den() != 1) throw Error("build_perp: non-integral action");
        *slots[0 + col] = Int(s.get_num());
        *slots[2 + col] = Int(t.get_num());
        QuatElem check = w1.scaled(s) + w2.scaled(t);
        if (!(check == img)) throw Error("build_perp: action verification failed");
    }
    if (m.det() != 1) throw Error("build_perp: action not orientation-preserving");

    Int cont = q.content();
    qnum::BQF qp{exact_div(q.a, cont), exact_div(q.b, cont), exact_div(q.c, cont)};
    qnum::Mat2 a = qnum::fundamental_automorph(qp);
    qnum::Mat2 p{1, 0, 0, 1};
    qnum::Mat2 ainv = a.inverse();
    qnum::Mat2 pneg = p;
    for (unsigned long k = 0; k <= 256; ++k) {
        for (const qnum::Mat2* cand : {&p, &pneg}) {
            if (m == *cand) return {w1, w2, q, +1, k, a};
            qnum::Mat2 negc{-cand->a, -cand->b, -cand->c, -cand->d};
            if (m == negc) return {w1, w2, q, -1, k, a};
        }
        p = p * a;
        pneg = pneg * ainv;
    }
    throw Error("build_perp: conjugation action not located in automorph group");
}

}  // namespace

std::vector<IntersectionRecord> intersections(const EichlerOrder& o, const Embedding& phi1,
                                              const Embedding& phi2) {
    PerpLattice L = build_perp(o, phi1);
    if (L.j == 0) throw Error("intersections: trivial stabilizer action");
    const Int d1 = phi1.D.value(), d2 = phi2.D.value();
    Int prod = d1 * d2;
    Int xmax = floor_sqrt(prod - 1);
    std::vector<IntersectionRecord> out;
    for (Int x = -xmax; x <= xmax; ++x) {
        if ((x - prod) % 2 != 0) continue;
        Int n = d1 * (x * x - prod);
        for (const auto& base : qnum::represent(L.q, n)) {
            // expand the {±automorph}-orbit into orbits of the actual stabilizer
            std::vector<std::pair<Int, Int>> reps;
            std::pair<Int, Int> v = base;
            unsigned long span = L.sigma > 0 ? L.j : 2 * L.j;
            for (unsigned long t = 0; t < span; ++t) {
                reps.push_back(v);
                if (L.sigma > 0) reps.push_back({-v.first, -v.second});
                v = act(L.a, v);
            }
            for (const auto& [s, t] : reps) {
                QuatElem w = L.w1.scaled(Rat(s)) + L.w2.scaled(Rat(t));
                QuatElem h = (phi1.g.scaled(Rat(x)) + w).scaled(Rat(1, d1));
                if (!o.contains(h)) continue;
                Embedding cand{&o, phi2.D, h};
                try {
                    cand = emb::make_embedding(o, h);
                } catch (const Error&) {
                    continue;  // lift is not an optimal embedding of disc D2
                }
                if (!emb::equivalent(cand, phi2)) continue;
                IntersectionRecord rec;
                rec.x = x;
                rec.sign = crossing_sign(phi1, cand);
                rec.level = intersection_level(phi1, cand);
                rec.witness = h;
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

Rat intersection_number(const EichlerOrder& o, const Embedding& phi1, const Embedding& phi2,
                        Kind kind, const Int& q) {
    if (kind == Kind::q_weighted && (q <= 1 || o.dm() % q != 0))
        throw Error("intersection_number: q must be a prime dividing disc * level");
    Rat total = 0;
    for (const auto& rec : intersections(o, phi1, phi2)) {
        switch (kind) {
            case Kind::unsigned_count:
                total += 1;
                break;
            case Kind::signed_count:
                total += rec.sign;
                break;
            case Kind::q_weighted: {
                Int l = rec.level;
                long v = 0;
                while (l % q == 0) {
                    l /= q;
                    ++v;
                }
                total += Rat(rec.sign * (1 + v));
                break;
            }
        }
    }
    return total;
}

Rat pair_sums(const EichlerOrder& o, const hecke::EmbSum& a, const hecke::EmbSum& b, Kind kind,
              const Int& q) {
    Rat total = 0;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            total += ta.coeff * tb.coeff * intersection_number(o, ta.rep, tb.rep, kind, q);
    return total;
}

}  // namespace qemb::geo
