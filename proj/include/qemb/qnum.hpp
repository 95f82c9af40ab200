#ifndef QEMB_QNUM_HPP
#define QEMB_QNUM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qemb/common.hpp"

namespace qemb::qnum {

/* Positive non-square integer congruent to 0 or 1 mod 4. */
class Discriminant {
  public:
    explicit Discriminant(Int value);
    const Int& value() const { return value_; }
    /* D mod 2, i.e. the parity p_D with (p_D + sqrt(D))/2 integral. */
    int parity() const { return mpz_odd_p(value_.get_mpz_t()) ? 1 : 0; }
    bool operator==(const Discriminant& o) const { return value_ == o.value_; }

  private:
    Int value_;
};

/* eps_D = (t + u sqrt(D))/2 with t^2 - D u^2 = 4, t,u > 0 minimal. */
struct QuadUnit {
    Int t;
    Int u;
    Int d;
};

struct BQF {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    Int content() const;
    bool primitive() const { return content() == 1; }
    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
    bool operator==(const BQF& o) const = default;
};

/* Column-action transform: (x,y) -> (a x + b y, c x + d y); forms act by f.M. */
struct Mat2 {
    Int a, b, c, d;
    Int det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const;
    /* valid for det = ±1 */
    Mat2 inverse() const;
    bool operator==(const Mat2& o) const = default;
};

BQF apply(const BQF& f, const Mat2& m);

int kronecker(const Int& a, const Int& n);
bool is_discriminant_shape(const Int& d);  // d ≡ 0,1 (mod 4)

QuadUnit fundamental_unit(const Discriminant& d);
/* Coefficients of eps_D^i = (T_i + U_i sqrt(D))/2. */
std::pair<Int, Int> unit_power(const QuadUnit& u, unsigned long i);
/* e_k^p(D): eps_{p^{2k} D} = eps_{p^{2k-2} D}^{e_k}. */
Int tower_exponent(const Discriminant& d, const Int& p, unsigned k);
/* All of e_1..e_k at once (cheaper than k separate calls). */
std::vector<Int> tower_exponents(const Discriminant& d, const Int& p, unsigned k);
/* m with eps_D = eps_{D_fund}^m, D = s^2 D_fund; computed through the unit tower. */
Int unit_index_to_fundamental(const Int& d);

unsigned long narrow_class_number(const Discriminant& d);
unsigned long prime_form_order(const Discriminant& d, const Int& p);
std::pair<Discriminant, unsigned> p_fundamental_part(const Discriminant& d, const Int& p);
/* (D_f, s) with d = s^2 D_f, D_f the discriminant of Q(sqrt(d)). */
std::pair<Int, Int> fundamental_discriminant(const Int& d);

BQF principal_form(const Discriminant& d);
BQF prime_form(const Discriminant& d, const Int& p);

bool is_reduced(const BQF& f);
BQF rho(const BQF& f);
BQF reduce(const BQF& f);
/* f.M = reduced result. */
std::pair<BQF, Mat2> reduce_with_transform(const BQF& f);
std::vector<BQF> reduced_cycle(const BQF& f);
bool narrowly_equivalent(const BQF& f, const BQF& g);
bool is_narrowly_principal(const BQF& f);
bool represents_one(const BQF& f);
BQF compose(const BQF& f, const BQF& g);

/* M with f.M = g under proper equivalence, if any. */
std::optional<Mat2> proper_equivalence_transform(const BQF& f, const BQF& g);
/* Automorph generating Aut+(f)/{±1} for primitive indefinite f. */
Mat2 fundamental_automorph(const BQF& f);
/* One (x,y) per orbit of {±1} x <fundamental automorph> on {f(x,y) = n}. */
std::vector<std::pair<Int, Int>> represent(const BQF& f, const Int& n);

std::vector<std::pair<Int, unsigned>> factorize(const Int& n);
std::vector<Int> divisors(const Int& n);
/* All x mod m with x^2 ≡ a (mod m), m ≥ 1. */
std::vector<Int> sqrt_mod(const Int& a, const Int& m);

}  // namespace qemb::qnum

#endif
