#ifndef QEMB_EMB_HPP
#define QEMB_EMB_HPP

#include "qemb/qnum.hpp"
#include "qemb/quat.hpp"

namespace qemb::emb {

struct BadTrace : Error {
    using Error::Error;
};
struct NotOptimal : Error {
    using Error::Error;
};

/* Optimal embedding of the real quadratic order of discriminant D, stored as
   g = image of sqrt(D): trd(g) = 0, nrd(g) = -D, (p_D + g)/2 in O. */
struct Embedding {
    const quat::EichlerOrder* order;
    qnum::Discriminant D;
    quat::QuatElem g;
};

/* Validates all Embedding invariants; D is taken to be -nrd(g). */
Embedding make_embedding(const quat::EichlerOrder& o, const quat::QuatElem& g);

/* Discriminant of the quadratic order {u + v*g : (u,v) rational} ∩ O. */
qnum::Discriminant assoc_discriminant(const quat::EichlerOrder& o, const quat::QuatElem& g);

/* Same lattice computation for trd(c) = 0, nrd(c) > 0: the (negative)
   discriminant of the imaginary quadratic order O ∩ Q(c). */
Int assoc_negative_discriminant(const quat::EichlerOrder& o, const quat::QuatElem& c);

/* Rescales g by a positive rational so the full associated order is hit. */
Embedding assoc_optimal(const quat::EichlerOrder& o, const quat::QuatElem& g);

/* assoc_optimal(O, pi g pi^-1); requires nrd(pi) != 0. */
Embedding conjugate(const Embedding& phi, const quat::QuatElem& pi);

/* True iff some r in O of reduced norm 1 conjugates phi to sigma. */
bool equivalent(const Embedding& phi, const Embedding& sigma);

}  // namespace qemb::emb

#endif
