#ifndef QEMB_COMMON_HPP
#define QEMB_COMMON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qemb {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Parses "p/q" or "p"; throws on malformed input or q = 0. */
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& r);

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/* Exact quotient; throws if b does not divide a. */
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw Error("exact_div: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int floor_sqrt(const Int& n) {
    if (n < 0) throw Error("floor_sqrt: negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

}  // namespace qemb

#endif
