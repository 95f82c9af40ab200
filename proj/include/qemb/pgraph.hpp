#ifndef QEMB_PGRAPH_HPP
#define QEMB_PGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "qemb/hecke.hpp"

namespace qemb::pgraph {

/* Levelled multigraph of the embedding classes reached from a base class by
   conjugation with elements of p-power norm. */
struct HeckeGraph {
    struct Vertex {
        emb::Embedding cls;
        unsigned level;
    };

    const quat::EichlerOrder* order;
    Int p;
    qnum::Discriminant D;  // p-fundamental base discriminant
    unsigned max_level;
    std::vector<Vertex> vertices;                       // BFS discovery order
    std::vector<std::pair<size_t, size_t>> edges;       // undirected; double edge twice
    std::optional<size_t> loop;                         // at most one, level 0
    bool loop_directed = false;                         // ramified one-vertex case
    std::optional<std::pair<size_t, size_t>> double_edge;
    bool truncated = false;

    std::vector<size_t> level_vertices(unsigned k) const;
    /* Multiplicity of the edge {a,b} (loops excluded). */
    unsigned edge_multiplicity(size_t a, size_t b) const;
    std::vector<size_t> neighbors(size_t v) const;
};

/* BFS over conjugation by theta(O, p); requires p coprime to disc*level and
   the discriminant of phi p-fundamental. */
HeckeGraph build_graph(const quat::EichlerOrder& o, const emb::Embedding& phi, const Int& p,
                       unsigned max_level);

struct ShapeReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/* Checks every clause of the shape theorem; violations are listed, not thrown. */
ShapeReport validate_shape(const HeckeGraph& g);

/* T_p of the class at vertex v, read off adjacency and tower exponents. */
hecke::EmbSum read_Tp(const HeckeGraph& g, size_t v);

std::string graph_to_dot(const HeckeGraph& g);

/* Box search for an optimal embedding of discriminant D; nullopt if none found
   within the height bound. */
std::optional<emb::Embedding> find_embedding(const quat::EichlerOrder& o,
                                             const qnum::Discriminant& D, long height_bound);

}  // namespace qemb::pgraph

#endif
