#ifndef QEMB_HECKE_HPP
#define QEMB_HECKE_HPP

#include <vector>

#include "qemb/emb.hpp"

namespace qemb::hecke {

/* Formal Q-linear sum of embedding classes; representatives pairwise
   inequivalent, no zero coefficients, sorted by (D, element coordinates). */
class EmbSum {
  public:
    struct Term {
        emb::Embedding rep;
        Rat coeff;
    };

    EmbSum() = default;
    /* Merges cls into the term equivalent to it (if any), drops zeros. */
    void add(const emb::Embedding& cls, const Rat& coeff);
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const EmbSum& o) const;

  private:
    std::vector<Term> terms_;
};

/* Number of reps pi in theta(O, n) with the conjugate of phi equivalent to sigma. */
Int weight_w(const quat::EichlerOrder& o, const Int& n, const emb::Embedding& phi,
             const emb::Embedding& sigma);

/* T_n with exact unit-index ratio coefficients; T_n = 0 when gcd(n, level) > 1. */
EmbSum hecke_T(const quat::EichlerOrder& o, const Int& n, const EmbSum& alpha);

/* Sum of conjugate classes with integer multiplicities. */
EmbSum naive_T(const quat::EichlerOrder& o, const Int& n, const EmbSum& alpha);

/* Class-wise conjugation by the normalizer element of norm p, p | algebra disc. */
EmbSum atkin_lehner_W(const quat::EichlerOrder& o, const Int& p, const EmbSum& alpha);

}  // namespace qemb::hecke

#endif
