#ifndef QEMB_GEO_HPP
#define QEMB_GEO_HPP

#include <array>
#include <optional>
#include <vector>

#include "qemb/hecke.hpp"
#include "qemb/interval.hpp"

namespace qemb::geo {

/* Axis of iota(phi(eps_D)) in the upper half plane, oriented forward. */
struct Geodesic {
    emb::Embedding source;
    quat::QuatElem unit;  // phi(eps_D) = (T + U g)/2, hyperbolic
};

Geodesic make_geodesic(const emb::Embedding& phi);

/* Boundary endpoints as projective interval pairs (n : d); attracting then
   repelling. May fail at low precision when a coordinate straddles zero. */
struct ProjPt {
    IReal n, d;
};
std::optional<std::array<ProjPt, 2>> endpoints(const emb::Embedding& phi, long prec);

enum class Kind { unsigned_count, signed_count, q_weighted };

struct IntersectionRecord {
    Int x;          // linkage of the lifted pair
    int sign;       // topological crossing sign
    Int level;      // (x^2 - D1 D2)/level^2 is the optimal negative discriminant
    quat::QuatElem witness;  // element of the phi2-class realizing the lift
};

/* x = trd(g1 g2)/2; integer of parity D1 D2 for embeddings into one order. */
Rat linkage(const emb::Embedding& phi1, const emb::Embedding& phi2);

bool transversal(const emb::Embedding& phi1, const emb::Embedding& phi2);

/* +1 iff counterclockwise from the repelling endpoint of phi1, the attracting
   endpoint of phi2 precedes its repelling endpoint; requires transversality. */
int crossing_sign(const emb::Embedding& phi1, const emb::Embedding& phi2);

Int intersection_level(const emb::Embedding& phi1, const emb::Embedding& phi2);

/* All intersection points of the closed geodesics of [phi1], [phi2] on the
   quotient, one record per point. */
std::vector<IntersectionRecord> intersections(const quat::EichlerOrder& o,
                                              const emb::Embedding& phi1,
                                              const emb::Embedding& phi2);

Rat intersection_number(const quat::EichlerOrder& o, const emb::Embedding& phi1,
                        const emb::Embedding& phi2, Kind kind, const Int& q = Int(0));

/* Bilinear extension of intersection_number to formal sums. */
Rat pair_sums(const quat::EichlerOrder& o, const hecke::EmbSum& a, const hecke::EmbSum& b,
              Kind kind, const Int& q = Int(0));

}  // namespace qemb::geo

#endif
