#include "qemb/hecke.hpp"

#include <algorithm>

namespace qemb::hecke {

using emb::Embedding;
using quat::EichlerOrder;

namespace {

bool term_less(const EmbSum::Term& a, const EmbSum::Term& b) {
    if (a.rep.D.value() != b.rep.D.value()) return a.rep.D.value() < b.rep.D.value();
    Int ha = quat::height(a.rep.g), hb = quat::height(b.rep.g);
    if (ha != hb) return ha < hb;
    return quat::lex_less(a.rep.g, b.rep.g);
}

}  // namespace

void EmbSum::add(const Embedding& cls, const Rat& coeff) {
    if (coeff == 0) return;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (!(terms_[i].rep.D == cls.D)) continue;
        if (!emb::equivalent(terms_[i].rep, cls)) continue;
        terms_[i].coeff += coeff;
        if (terms_[i].coeff == 0) terms_.erase(terms_.begin() + i);
        return;
    }
    terms_.push_back(Term{cls, coeff});
    std::sort(terms_.begin(), terms_.end(), term_less);
}

bool EmbSum::operator==(const EmbSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    std::vector<bool> used(o.terms_.size(), false);
    for (const Term& t : terms_) {
        bool found = false;
        for (size_t j = 0; j < o.terms_.size(); ++j) {
            if (used[j] || o.terms_[j].coeff != t.coeff || !(o.terms_[j].rep.D == t.rep.D))
                continue;
            if (emb::equivalent(t.rep, o.terms_[j].rep)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

Int weight_w(const EichlerOrder& o, const Int& n, const Embedding& phi, const Embedding& sigma) {
    if (gcd(n, o.level()) != 1) throw quat::GcdViolation("weight_w: gcd(n, level) > 1");
    Int count = 0;
    for (const auto& pi : theta(o, n).reps) {
        Embedding c = emb::conjugate(phi, pi);
        if (c.D == sigma.D && emb::equivalent(c, sigma)) ++count;
    }
    return count;
}

EmbSum hecke_T(const EichlerOrder& o, const Int& n, const EmbSum& alpha) {
    EmbSum out;
    if (gcd(n, o.level()) != 1) return out;  // T_n = 0 off the coprime locus
    if (alpha.is_zero()) return out;
    auto th = theta(o, n);
    for (const auto& term : alpha.terms()) {
        Int m_src = qnum::unit_index_to_fundamental(term.rep.D.value());
        for (const auto& pi : th.reps) {
            Embedding c = emb::conjugate(term.rep, pi);
            Int m_dst = qnum::unit_index_to_fundamental(c.D.value());
            Rat ratio(m_src, m_dst);
            ratio.canonicalize();
            out.add(c, term.coeff * ratio);
        }
    }
    return out;
}

EmbSum naive_T(const EichlerOrder& o, const Int& n, const EmbSum& alpha) {
    if (gcd(n, o.level()) != 1) throw quat::GcdViolation("naive_T: gcd(n, level) > 1");
    EmbSum out;
    auto th = theta(o, n);
    for (const auto& term : alpha.terms())
        for (const auto& pi : th.reps) out.add(emb::conjugate(term.rep, pi), term.coeff);
    return out;
}

EmbSum atkin_lehner_W(const EichlerOrder& o, const Int& p, const EmbSum& alpha) {
    if (o.alg().disc() % p != 0) throw Error("atkin_lehner_W: p does not divide the discriminant");
    quat::QuatElem w = quat::normalizer_element(o, p);
    EmbSum out;
    for (const auto& term : alpha.terms()) out.add(emb::conjugate(term.rep, w), term.coeff);
    return out;
}

}  // namespace qemb::hecke
