#include "qemb/json_io.hpp"

#include <fstream>

namespace qemb::json_io {

using emb::Embedding;
using hecke::EmbSum;
using quat::EichlerOrder;
using quat::QuatAlgebra;
using quat::QuatElem;

namespace {

json elem_to_json(const QuatElem& x) {
    json a = json::array();
    for (const Rat& c : x.x) a.push_back(format_rat(c));
    return a;
}

QuatElem elem_from_json(const json& a) {
    if (!a.is_array() || a.size() != 4) throw Error("json: element must be 4 rationals");
    QuatElem x;
    for (int i = 0; i < 4; ++i) x.x[i] = parse_rat(a[i].get<std::string>());
    return x;
}

}  // namespace

json order_to_json(const EichlerOrder& o) {
    json basis = json::array();
    for (const QuatElem& b : o.basis()) basis.push_back(elem_to_json(b));
    return json{{"algebra", {{"a", format_rat(o.alg().a())}, {"b", format_rat(o.alg().b())}}},
                {"order", {{"level", o.level().get_si()}, {"basis", basis}}}};
}

EichlerOrder order_from_json(const json& doc) {
    if (!doc.contains("algebra") || !doc.contains("order"))
        throw Error("json: expected algebra and order keys");
    const json& aj = doc["algebra"];
    QuatAlgebra alg(parse_rat(aj.at("a").get<std::string>()),
                    parse_rat(aj.at("b").get<std::string>()));
    const json& oj = doc["order"];
    const json& bj = oj.at("basis");
    if (!bj.is_array() || bj.size() != 4) throw Error("json: basis must have 4 elements");
    std::array<QuatElem, 4> basis;
    for (int i = 0; i < 4; ++i) basis[i] = elem_from_json(bj[i]);
    return EichlerOrder(alg, basis, Int(oj.at("level").get<long>()));
}

EichlerOrder load_order(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_order: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error("load_order: " + path + ": " + e.what());
    }
    return order_from_json(doc);
}

json embedding_to_json(const Embedding& phi) {
    return json{{"embedding", {{"g", elem_to_json(phi.g)}, {"D", phi.D.value().get_si()}}}};
}

Embedding embedding_from_json(const EichlerOrder& o, const json& doc) {
    const json& ej = doc.contains("embedding") ? doc["embedding"] : doc;
    Embedding phi = emb::make_embedding(o, elem_from_json(ej.at("g")));
    if (ej.contains("D") && phi.D.value() != Int(ej["D"].get<long>()))
        throw Error("json: declared D does not match -nrd(g)");
    return phi;
}

json embsum_to_json(const EmbSum& s) {
    json out = json::array();
    for (const auto& t : s.terms())
        out.push_back(json{{"g", elem_to_json(t.rep.g)},
                           {"D", t.rep.D.value().get_si()},
                           {"coeff", format_rat(t.coeff)}});
    return out;
}

EmbSum embsum_from_json(const EichlerOrder& o, const json& doc) {
    if (!doc.is_array()) throw Error("json: embedding sum must be a list");
    EmbSum s;
    for (const json& t : doc) {
        Embedding phi = emb::make_embedding(o, elem_from_json(t.at("g")));
        if (t.contains("D") && phi.D.value() != Int(t["D"].get<long>()))
            throw Error("json: declared D does not match -nrd(g)");
        s.add(phi, parse_rat(t.at("coeff").get<std::string>()));
    }
    return s;
}

json graph_to_json(const pgraph::HeckeGraph& g) {
    json verts = json::array();
    for (const auto& v : g.vertices)
        verts.push_back(json{{"level", v.level},
                             {"g", elem_to_json(v.cls.g)},
                             {"D", v.cls.D.value().get_si()}});
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
    json doc{{"p", g.p.get_si()},
             {"max_level", g.max_level},
             {"truncated", g.truncated},
             {"vertices", verts},
             {"edges", edges}};
    if (g.loop)
        doc["loop"] = json{{"vertex", *g.loop}, {"directed", g.loop_directed}};
    else
        doc["loop"] = nullptr;
    if (g.double_edge)
        doc["double_edge"] = json::array({g.double_edge->first, g.double_edge->second});
    else
        doc["double_edge"] = nullptr;
    return doc;
}

}  // namespace qemb::json_io
