#ifndef QEMB_QUAT_HPP
#define QEMB_QUAT_HPP

#include <array>
#include <vector>

#include "qemb/common.hpp"
#include "qemb/interval.hpp"
#include "qemb/linalg.hpp"

namespace qemb::quat {

struct QuatElem {
    std::array<Rat, 4> x{Rat(0), Rat(0), Rat(0), Rat(0)};  // 1, i, j, k coordinates
    bool operator==(const QuatElem& o) const = default;
    QuatElem operator+(const QuatElem& o) const;
    QuatElem operator-(const QuatElem& o) const;
    QuatElem operator-() const;
    QuatElem scaled(const Rat& s) const;
};

QuatElem quat_one();
QuatElem quat_scalar(const Rat& s);
Rat trd(const QuatElem& x);
QuatElem conj(const QuatElem& x);
/* (max abs numerator/denominator), for deterministic ordering only */
Int height(const QuatElem& x);
bool lex_less(const QuatElem& a, const QuatElem& b);

/* B = (a, b / Q): i^2 = a, j^2 = b, k = ij = -ji. Must be indefinite. */
class QuatAlgebra {
  public:
    QuatAlgebra(const Rat& a, const Rat& b);
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const std::vector<Int>& ramified() const { return ramified_; }
    const Int& disc() const { return disc_; }
    bool operator==(const QuatAlgebra& o) const { return a_ == o.a_ && b_ == o.b_; }

    QuatElem mul(const QuatElem& x, const QuatElem& y) const;
    Rat nrd(const QuatElem& x) const;
    QuatElem inv(const QuatElem& x) const;
    QuatElem conj_by(const QuatElem& g, const QuatElem& x) const;  // g x g^-1

  private:
    Rat a_, b_;
    std::vector<Int> ramified_;
    Int disc_;
};

/* Hilbert symbol (a, b)_p for nonzero rationals. */
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);
std::vector<Int> ramified_primes(const Rat& a, const Rat& b);

struct NotARing : Error {
    using Error::Error;
};
struct NotIntegral : Error {
    using Error::Error;
};
struct LevelMismatch : Error {
    using Error::Error;
};
struct GcdViolation : Error {
    using Error::Error;
};

class EichlerOrder {
  public:
    /* Validates ring closure, integrality and reduced discriminant = disc * level. */
    EichlerOrder(QuatAlgebra alg, std::array<QuatElem, 4> basis, Int level);

    const QuatAlgebra& alg() const { return alg_; }
    const std::array<QuatElem, 4>& basis() const { return basis_; }
    const Int& level() const { return level_; }
    Int dm() const { return alg_.disc() * level_; }

    linalg::Vec4 coords(const QuatElem& x) const;
    bool contains(const QuatElem& x) const;
    QuatElem from_coords(const linalg::Vec4& c) const;

  private:
    QuatAlgebra alg_;
    std::array<QuatElem, 4> basis_;
    Int level_;
    linalg::Mat4 basis_inv_;
};

struct CosetReps {
    Int n;
    std::vector<QuatElem> reps;
};

/* All x in O with nrd(x) = n and integer order-basis coordinates bounded by
   height_bound; sorted by (max coordinate, lexicographic coordinates). */
std::vector<QuatElem> enumerate_norm(const EichlerOrder& o, const Rat& n, long height_bound);

bool coset_equal(const EichlerOrder& o, const QuatElem& x, const QuatElem& y, const Rat& n);
QuatElem normalizer_element(const EichlerOrder& o, const Int& p);
/* sum of divisors of n coprime to disc */
Int sigma_prime(const Int& n, const Int& disc);
CosetReps theta(const EichlerOrder& o, const Int& n, long height_start = 8);

std::array<std::array<IReal, 2>, 2> real_embedding(const QuatAlgebra& alg, const QuatElem& x,
                                                   long prec);

}  // namespace qemb::quat

#endif
