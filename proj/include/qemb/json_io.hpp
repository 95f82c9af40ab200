#ifndef QEMB_JSON_IO_HPP
#define QEMB_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qemb/hecke.hpp"
#include "qemb/pgraph.hpp"

namespace qemb::json_io {

using nlohmann::json;

/* Document schema: { "algebra": {"a": "7", "b": "5"},
                      "order": {"level": 1, "basis": [[4 rationals as strings] x4]} } */
json order_to_json(const quat::EichlerOrder& o);
quat::EichlerOrder order_from_json(const json& doc);
quat::EichlerOrder load_order(const std::string& path);

/* { "embedding": {"g": ["0","-1","0","0"], "D": 5} }; D optional on input,
   validated against -nrd(g) when present. */
json embedding_to_json(const emb::Embedding& phi);
emb::Embedding embedding_from_json(const quat::EichlerOrder& o, const json& doc);

/* List of {"g": [...], "D": n, "coeff": "p/q"} records. */
json embsum_to_json(const hecke::EmbSum& s);
hecke::EmbSum embsum_from_json(const quat::EichlerOrder& o, const json& doc);

/* { "vertices": [{"level", "g", "D"}], "edges": [[i,j]...],
     "loop": {"vertex", "directed"} | null, "double_edge": [i,j] | null } */
json graph_to_json(const pgraph::HeckeGraph& g);

}  // namespace qemb::json_io

#endif
