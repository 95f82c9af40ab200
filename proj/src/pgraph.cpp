#include "qemb/pgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qemb::pgraph {

using emb::Embedding;
using quat::EichlerOrder;
using quat::QuatElem;

std::vector<size_t> HeckeGraph::level_vertices(unsigned k) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].level == k) out.push_back(i);
    return out;
}

unsigned HeckeGraph::edge_multiplicity(size_t a, size_t b) const {
    unsigned m = 0;
    for (const auto& e : edges)
        if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) ++m;
    return m;
}

std::vector<size_t> HeckeGraph::neighbors(size_t v) const {
    std::set<size_t> out;
    for (const auto& e : edges) {
        if (e.first == v) out.insert(e.second);
        if (e.second == v) out.insert(e.first);
    }
    if (loop && *loop == v) out.insert(v);
    return {out.begin(), out.end()};
}

namespace {

unsigned level_of(const Int& disc, const Int& d0, const Int& p) {
    Int cur = d0;
    unsigned k = 0;
    while (cur < disc) {
        cur *= p * p;
        ++k;
    }
    if (cur != disc) throw Error("level_of: discriminant not of the form p^2k * D");
    return k;
}

}  // namespace

HeckeGraph build_graph(const EichlerOrder& o, const Embedding& phi, const Int& p,
                       unsigned max_level) {
    if (o.dm() % p == 0) throw Error("build_graph: p divides disc * level");
    if (qnum::p_fundamental_part(phi.D, p).second != 0)
        throw Error("build_graph: discriminant is not p-fundamental");
    HeckeGraph g{&o, p, phi.D, max_level, {}, {}, std::nullopt, false, std::nullopt, false};
    g.vertices.push_back({phi, 0});

    auto th = theta(o, p);
    std::set<std::pair<size_t, size_t>> edge_set;
    const Int height_cap = Int(1) << 512;  // element growth guard; never hit in practice
    for (size_t cur = 0; cur < g.vertices.size(); ++cur) {
        if (g.vertices[cur].level >= max_level) continue;
        if (quat::height(g.vertices[cur].cls.g) > height_cap) {
            g.truncated = true;
            continue;
        }
        for (const auto& pi : th.reps) {
            Embedding c = emb::conjugate(g.vertices[cur].cls, pi);
            unsigned lvl = level_of(c.D.value(), g.D.value(), p);
            size_t idx = g.vertices.size();
            for (size_t j = 0; j < g.vertices.size(); ++j) {
                if (g.vertices[j].cls.D == c.D && emb::equivalent(g.vertices[j].cls, c)) {
                    idx = j;
                    break;
                }
            }
            if (idx == g.vertices.size()) g.vertices.push_back({c, lvl});
            if (idx == cur) {
                g.loop = cur;
            } else {
                edge_set.insert({std::min(cur, idx), std::max(cur, idx)});
            }
        }
    }
    g.edges.assign(edge_set.begin(), edge_set.end());

    int chi = qnum::kronecker(g.D.value(), p);
    auto l0 = g.level_vertices(0);
    if (chi == 0 && l0.size() == 1 && g.loop) g.loop_directed = true;
    if (chi == 1 && l0.size() == 2) {
        // two distinct passages between the two level-0 classes
        g.double_edge = std::make_pair(l0[0], l0[1]);
        g.edges.push_back({l0[0], l0[1]});
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

ShapeReport validate_shape(const HeckeGraph& g) {
    ShapeReport rep;
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
    const Int& p = g.p;
    const Int& d0 = g.D.value();
    int chi = qnum::kronecker(d0, p);

    // level/discriminant consistency
    Int want = d0;
    for (unsigned k = 0; k <= g.max_level; ++k, want *= p * p)
        for (size_t v : g.level_vertices(k))
            if (g.vertices[v].cls.D.value() != want)
                bad("vertex discriminant does not match its level");

    // connectivity
    if (!g.vertices.empty()) {
        std::vector<bool> seen(g.vertices.size(), false);
        std::vector<size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (size_t u : g.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = true;
                    stack.push_back(u);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) bad("graph not connected");
    }

    auto l0 = g.level_vertices(0);
    if (g.loop && g.vertices[*g.loop].level != 0) bad("loop above level 0");
    if (g.double_edge && (g.vertices[g.double_edge->first].level != 0 ||
                          g.vertices[g.double_edge->second].level != 0))
        bad("double edge above level 0");

    unsigned long pf_order = chi == -1 ? 0 : qnum::prime_form_order(g.D, p);
    if (chi == -1) {
        if (l0.size() != 1) bad("inert: expected a single level-0 vertex");
        if (g.loop) bad("inert: unexpected loop");
        if (g.double_edge) bad("inert: unexpected double edge");
    } else if (chi == 0) {
        if (pf_order == 1) {
            if (l0.size() != 1) bad("ramified principal: expected one level-0 vertex");
            if (!g.loop || !g.loop_directed) bad("ramified principal: expected a directed loop");
        } else {
            if (l0.size() != 2) bad("ramified non-principal: expected two level-0 vertices");
            if (g.loop) bad("ramified non-principal: unexpected loop");
            if (l0.size() == 2 && g.edge_multiplicity(l0[0], l0[1]) != 1)
                bad("ramified non-principal: expected a single connecting edge");
        }
    } else {
        if (l0.size() != pf_order) bad("split: level-0 count != prime form order");
        if (l0.size() == 1) {
            if (!g.loop || g.loop_directed) bad("split singleton: expected an undirected loop");
        } else if (l0.size() == 2) {
            if (!g.double_edge || g.edge_multiplicity(l0[0], l0[1]) != 2)
                bad("split pair: expected a double edge");
        } else {
            if (g.loop || g.double_edge) bad("split cycle: unexpected loop/double edge");
            for (size_t v : l0) {
                unsigned deg = 0;
                for (size_t u : l0)
                    if (u != v) deg += g.edge_multiplicity(v, u);
                if (deg != 2) bad("split cycle: level-0 vertex without two cycle edges");
            }
        }
    }

    // upward branching
    Int e1 = qnum::tower_exponent(g.D, p, 1);
    Int up0_expect = (p - chi) / e1;
    qnum::QuadUnit eps = qnum::fundamental_unit(g.D);
    Int u_e1 = qnum::unit_power(eps, e1.get_ui()).second;
    unsigned m = 0;
    for (Int t = u_e1; t % p == 0; t /= p) ++m;
    for (unsigned k = 0; k < g.max_level; ++k) {
        std::set<size_t> targets;
        for (size_t v : g.level_vertices(k)) {
            unsigned up = 0;
            for (size_t u : g.level_vertices(k + 1)) {
                unsigned mult = g.edge_multiplicity(v, u);
                up += mult;
                if (mult) {
                    if (targets.count(u)) bad("upward targets not distinct");
                    targets.insert(u);
                }
            }
            Int expect = k == 0 ? up0_expect : (k < m ? p : Int(1));
            if (Int(up) != expect) bad("wrong upward degree at level " + std::to_string(k));
        }
    }
    return rep;
}

hecke::EmbSum read_Tp(const HeckeGraph& g, size_t v) {
    if (v >= g.vertices.size()) throw Error("read_Tp: no such vertex");
    unsigned k = g.vertices[v].level;
    if (k >= g.max_level) throw Error("read_Tp: neighbors beyond computed levels");
    hecke::EmbSum out;
    for (size_t u : g.neighbors(v)) {
        unsigned ku = g.vertices[u].level;
        Rat coeff;
        if (ku == k + 1) {
            coeff = Rat(g.edge_multiplicity(v, u));
        } else if (ku == k) {
            if (u == v) {
                coeff = g.loop_directed ? Rat(1) : Rat(2);  // undirected loop: two passages
            } else {
                coeff = Rat(g.edge_multiplicity(v, u));
            }
        } else {
            coeff = Rat(qnum::tower_exponent(g.D, g.p, k));
        }
        out.add(g.vertices[u].cls, coeff);
    }
    return out;
}

std::string graph_to_dot(const HeckeGraph& g) {
    // stable names Lk_i: i = position within the level, in discovery order
    std::vector<std::string> name(g.vertices.size());
    std::ostringstream os;
    os << "digraph heckegraph {\n  rankdir=LR;\n";
    for (unsigned k = 0; k <= g.max_level; ++k) {
        auto lv = g.level_vertices(k);
        if (lv.empty()) continue;
        os << "  { rank=same;";
        for (size_t i = 0; i < lv.size(); ++i) {
            name[lv[i]] = "L" + std::to_string(k) + "_" + std::to_string(i);
            os << " " << name[lv[i]] << ";";
        }
        os << " }\n";
    }
    for (size_t i = 0; i < g.vertices.size(); ++i)
        os << "  " << name[i] << " [label=\"D=" << g.vertices[i].cls.D.value().get_str()
           << "\"];\n";
    for (const auto& e : g.edges)
        os << "  " << name[e.first] << " -> " << name[e.second] << " [dir=none];\n";
    if (g.loop)
        os << "  " << name[*g.loop] << " -> " << name[*g.loop]
           << (g.loop_directed ? ";\n" : " [dir=none];\n");
    os << "}\n";
    return os.str();
}

std::optional<Embedding> find_embedding(const EichlerOrder& o, const qnum::Discriminant& D,
                                        long height_bound) {
    // g = 2w - p_D with w in O, trd(w) = p_D, nrd(w) = (p_D^2 - D)/4
    int par = D.parity();
    Rat target = Rat(par * par - D.value()) / 4;
    for (long h = 4; h <= height_bound; h *= 2) {
        for (const auto& w : enumerate_norm(o, target, h)) {
            if (trd(w) != Rat(par)) continue;
            QuatElem gelem = w + w - quat::quat_scalar(Rat(par));
            try {
                return emb::make_embedding(o, gelem);
            } catch (const Error&) {
                continue;  // non-optimal or non-integral candidate
            }
        }
    }
    return std::nullopt;
}

}  // namespace qemb::pgraph
