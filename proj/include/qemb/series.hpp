#ifndef QEMB_SERIES_HPP
#define QEMB_SERIES_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qemb/geo.hpp"

namespace qemb::series {

/* Truncated q-expansion with exact rational coefficients; indices absent from
   coeffs are zero. mask holds the n whose coefficient is asserted valid. */
struct QSeries {
    long N = 0;
    std::map<long, Rat> coeffs;
    std::set<long> mask;

    Rat at(long n) const;
    bool operator==(const QSeries& o) const = default;
};

/* Coefficient n = <a1, T_n a2>_kind; zero and unasserted when gcd(n, level)
   of the order exceeds 1. */
QSeries intersection_series(const quat::EichlerOrder& o, const hecke::EmbSum& a1,
                            const hecke::EmbSum& a2, geo::Kind kind, long n_max,
                            const Int& q = Int(0));

/* Text format: '#' comments, one "N <order>" header, then "n a_n" lines with
   a_n an integer or "p/q". Missing n up to N are zero. */
QSeries load_qexp(const std::string& path);
QSeries parse_qexp(const std::string& text, const std::string& origin);

enum class MatchStatus { ok, no_solution, underdetermined };

struct MatchResult {
    MatchStatus status;
    std::vector<Rat> coeffs;  // one per basis element when status == ok
};

/* Exact rational solve of target[n] = sum_i c_i basis_i[n] over n in mask. */
MatchResult match_series(const QSeries& target, const std::vector<QSeries>& basis,
                         const std::set<long>& mask);

/* Indices 1..n_max coprime to m (all of them when m <= 1). */
std::set<long> coprime_mask(long n_max, const Int& m);

}  // namespace qemb::series

#endif
