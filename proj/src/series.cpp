#include "qemb/series.hpp"

#include <fstream>
#include <sstream>

namespace qemb::series {

using emb::Embedding;
using hecke::EmbSum;
using quat::EichlerOrder;

Rat QSeries::at(long n) const {
    auto it = coeffs.find(n);
    return it == coeffs.end() ? Rat(0) : it->second;
}

std::set<long> coprime_mask(long n_max, const Int& m) {
    std::set<long> out;
    for (long n = 1; n <= n_max; ++n)
        if (m <= 1 || gcd(Int(n), m) == 1) out.insert(n);
    return out;
}

QSeries intersection_series(const EichlerOrder& o, const EmbSum& a1, const EmbSum& a2,
                            geo::Kind kind, long n_max, const Int& q) {
    if (n_max < 1) throw Error("intersection_series: n_max must be positive");
    QSeries s;
    s.N = n_max;
    // the pairing of a1 with an embedding class is a class function: cache it
    std::vector<std::pair<Embedding, Rat>> cache;
    auto pair_with_a1 = [&](const Embedding& sigma) {
        for (const auto& [rep, val] : cache)
            if (rep.D == sigma.D && emb::equivalent(rep, sigma)) return val;
        Rat val = 0;
        for (const auto& t : a1.terms())
            val += t.coeff * geo::intersection_number(o, t.rep, sigma, kind, q);
        cache.emplace_back(sigma, val);
        return val;
    };
    for (long n = 1; n <= n_max; ++n) {
        if (gcd(Int(n), o.level()) != 1) continue;  // T_n = 0, unasserted
        s.mask.insert(n);
        Rat c = 0;
        hecke::EmbSum tn = hecke::hecke_T(o, Int(n), a2);
        for (const auto& t : tn.terms()) c += t.coeff * pair_with_a1(t.rep);
        if (c != 0) s.coeffs[n] = c;
    }
    return s;
}

QSeries parse_qexp(const std::string& text, const std::string& origin) {
    QSeries s;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    bool have_order = false, have_coeff = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto fail = [&](const std::string& what) {
            throw Error(origin + ":" + std::to_string(lineno) + ": " + what);
        };
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) fail("expected two fields");
        if (a == "N") {
            if (have_order) fail("duplicate order header");
            if (have_coeff) fail("order header after coefficients");
            try {
                s.N = std::stol(b);
            } catch (const std::exception&) {
                fail("malformed order");
            }
            if (s.N < 1) fail("order must be positive");
            have_order = true;
            continue;
        }
        long n = 0;
        try {
            n = std::stol(a);
        } catch (const std::exception&) {
            fail("malformed index");
        }
        if (!have_order) fail("coefficient before order header");
        if (n < 1 || n > s.N) fail("index out of range");
        if (s.coeffs.count(n)) fail("duplicate index");
        try {
            Rat c = parse_rat(b);
            if (c != 0) s.coeffs[n] = c;
            have_coeff = true;
        } catch (const Error&) {
            fail("malformed coefficient");
        }
    }
    if (!have_order) throw Error(origin + ": missing order header");
    for (long n = 1; n <= s.N; ++n) s.mask.insert(n);
    return s;
}

QSeries load_qexp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_qexp: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qexp(buf.str(), path);
}

MatchResult match_series(const QSeries& target, const std::vector<QSeries>& basis,
                         const std::set<long>& mask) {
    const size_t k = basis.size();
    for (const auto& b : basis)
        for (long n : mask)
            if (!b.mask.count(n)) throw Error("match_series: basis undefined on mask index");
    // augmented system rows [basis_0[n] ... basis_{k-1}[n] | target[n]]
    std::vector<std::vector<Rat>> rows;
    for (long n : mask) {
        if (!target.mask.count(n)) continue;  // target asserts nothing here
        std::vector<Rat> row(k + 1);
        for (size_t i = 0; i < k; ++i) row[i] = basis[i].at(n);
        row[k] = target.at(n);
        rows.push_back(std::move(row));
    }
    // Gaussian elimination over Q
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < k && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rat inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (size_t j = c; j <= k; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][k] != 0) return {MatchStatus::no_solution, {}};
    if (pivot_col.size() < k) return {MatchStatus::underdetermined, {}};
    std::vector<Rat> sol(k);
    for (size_t i = 0; i < k; ++i) sol[pivot_col[i]] = rows[i][k];
    return {MatchStatus::ok, std::move(sol)};
}

}  // namespace qemb::series
