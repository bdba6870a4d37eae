#pragma once
// JSON (de)serialization for problem files, modules, and tables.
//
// Scalars travel as strings ("a/b" over Q, decimal residues over F_p,
// coefficient lists "[c0,c1,...]" over extensions); bare JSON numbers are
// accepted on input. Matrices are row-major arrays of rows. Bidegrees are
// keyed "(i,j)".

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/geometry.hpp"

namespace koszul {

using nlohmann::json;

struct ParseError : std::runtime_error {
    std::string path;
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), path(where) {}
};

/******** field specs ********/

struct FieldSpec {
    enum class Kind { rationals, prime, extension } kind = Kind::rationals;
    int64_t p = 0;
    std::vector<int64_t> min_poly;

    static FieldSpec from_json(const json& j, const std::string& where = "field") {
        if (!j.is_object() || !j.contains("type"))
            throw ParseError(where, "expected an object with a \"type\"");
        std::string t = j.at("type").get<std::string>();
        FieldSpec f;
        if (t == "Q" || t == "rationals") {
            f.kind = Kind::rationals;
        } else if (t == "Fp" || t == "prime-field") {
            f.kind = Kind::prime;
            if (!j.contains("p")) throw ParseError(where + ".p", "missing prime");
            f.p = j.at("p").get<int64_t>();
            if (!is_prime_i64(f.p)) throw ParseError(where + ".p", "p not prime");
        } else if (t == "Fq" || t == "extension-field") {
            f.kind = Kind::extension;
            if (!j.contains("p") || !j.contains("min_poly"))
                throw ParseError(where, "extension field needs p and min_poly");
            f.p = j.at("p").get<int64_t>();
            if (!is_prime_i64(f.p)) throw ParseError(where + ".p", "p not prime");
            f.min_poly = j.at("min_poly").get<std::vector<int64_t>>();
        } else {
            throw ParseError(where + ".type", "unknown field type " + t);
        }
        return f;
    }
    json to_json() const {
        json j;
        switch (kind) {
            case Kind::rationals: j["type"] = "Q"; break;
            case Kind::prime:
                j["type"] = "Fp";
                j["p"] = p;
                break;
            case Kind::extension:
                j["type"] = "Fq";
                j["p"] = p;
                j["min_poly"] = min_poly;
                break;
        }
        return j;
    }
};

/******** bidegrees, windows ********/

inline std::string bidegree_key(Bidegree b) { return to_string(b); }

inline Bidegree parse_bidegree(const std::string& s, const std::string& where) {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw ParseError(where, "bad bidegree key " + s);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError(where, "bad bidegree key " + s);
    try {
        return {std::stoi(s.substr(1, comma - 1)), std::stoi(s.substr(comma + 1, s.size() - comma - 2))};
    } catch (const std::exception&) {
        throw ParseError(where, "bad bidegree key " + s);
    }
}

inline Window window_from_json(const json& j, const std::string& where = "window") {
    if (!j.is_object() || !j.contains("j_min") || !j.contains("j_max"))
        throw ParseError(where, "expected {\"j_min\":..., \"j_max\":...}");
    int lo = j.at("j_min").get<int>(), hi = j.at("j_max").get<int>();
    if (lo > hi) throw ParseError(where, "j_min > j_max");
    return Window(lo, hi);
}

inline json window_to_json(Window w) { return json{{"j_min", w.lo}, {"j_max", w.hi}}; }

/******** scalars and matrices ********/

template <class F>
typename F::Scalar scalar_from_json(const F& f, const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return f.from_int(j.get<long>());
        if (j.is_string()) return f.parse(j.get<std::string>());
        if (j.is_array()) {
            // coefficient list for extension fields
            std::string s = "[";
            for (size_t k = 0; k < j.size(); ++k) {
                if (k) s += ",";
                s += std::to_string(j[k].get<long>());
            }
            return f.parse(s + "]");
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where, "expected a scalar");
}

template <class F>
DMat<typename F::Scalar> matrix_from_json(const F& f, const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected a matrix (array of rows)");
    int rows = static_cast<int>(j.size());
    int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    DMat<typename F::Scalar> m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw ParseError(where, "ragged matrix");
        for (int c = 0; c < cols; ++c)
            m(r, c) = scalar_from_json(f, j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

template <class F>
json matrix_to_json(const F& f, const DMat<typename F::Scalar>& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(f.str(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

template <class F>
json sparse_to_json(const F& f, const SpMat<typename F::Scalar>& m) {
    return matrix_to_json(f, sp_to_dense(m, f.zero()));
}

/******** generator complexes ********/

template <class F>
GeneratorComplex<typename F::Scalar> complex_from_json(const F& f, const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("ranks")) throw ParseError(where, "expected {\"ranks\":..., \"diffs\":...}");
    GeneratorComplex<typename F::Scalar> X;
    for (auto& [k, v] : j.at("ranks").items()) {
        int deg = std::stoi(k);
        int r = v.get<int>();
        if (r < 0) throw ParseError(where + ".ranks", "negative rank");
        if (deg > 0) throw ParseError(where + ".ranks", "generator degrees must lie in [-n, 0]");
        X.ranks[deg] = r;
    }
    if (j.contains("diffs"))
        for (auto& [k, v] : j.at("diffs").items()) {
            int deg = std::stoi(k);
            X.diffs[deg] = matrix_from_json(f, v, where + ".diffs." + k);
        }
    try {
        X.check(f.zero());
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
    return X;
}

template <class F>
json complex_to_json(const F& f, const GeneratorComplex<typename F::Scalar>& X) {
    json ranks = json::object(), diffs = json::object();
    for (auto& [i, r] : X.ranks) ranks[std::to_string(i)] = r;
    for (auto& [i, m] : X.diffs) diffs[std::to_string(i)] = matrix_to_json(f, m);
    return json{{"ranks", ranks}, {"diffs", diffs}};
}

/******** setups ********/

template <class F>
SubbundleSetup<typename F::Scalar> setup_from_json(const F& f, const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("dim_E")) throw ParseError(where, "expected {\"dim_E\":..., \"F1\":..., \"F2\":...}");
    SubbundleSetup<typename F::Scalar> s;
    s.zero = f.zero();
    s.dim_E = j.at("dim_E").get<int>();
    if (s.dim_E < 0) throw ParseError(where + ".dim_E", "negative dimension");
    s.F1 = j.contains("F1") ? matrix_from_json(f, j.at("F1"), where + ".F1") : zeros(s.dim_E, 0, f.zero());
    s.F2 = j.contains("F2") ? matrix_from_json(f, j.at("F2"), where + ".F2") : zeros(s.dim_E, 0, f.zero());
    if (s.F1.rows() == 0 && s.F1.cols() == 0) s.F1 = zeros(s.dim_E, 0, f.zero());
    if (s.F2.rows() == 0 && s.F2.cols() == 0) s.F2 = zeros(s.dim_E, 0, f.zero());
    try {
        s.check();
    } catch (const std::exception& e) {
        throw ParseError(where, e.what());
    }
    return s;
}

/******** modules ********/

template <class F>
DgModule<typename F::Scalar> module_from_json(const F& f, const json& j,
                                              std::shared_ptr<const SymDgAlgebra<typename F::Scalar>> alg,
                                              const std::string& where) {
    using K = typename F::Scalar;
    DgModule<K> M;
    M.alg = alg;
    M.act.resize(alg->num_gens());
    if (!j.contains("dims")) throw ParseError(where, "module needs dims");
    for (auto& [k, v] : j.at("dims").items()) {
        Bidegree b = parse_bidegree(k, where + ".dims");
        int d = v.get<int>();
        if (d < 0) throw ParseError(where + ".dims", "negative dimension");
        if (d > 0) M.under.dims[b] = d;
    }
    if (j.contains("diff"))
        for (auto& [k, v] : j.at("diff").items()) {
            Bidegree b = parse_bidegree(k, where + ".diff");
            DMat<K> m = matrix_from_json(f, v, where + ".diff." + k);
            if (m.rows() != M.dim_at({b.i + 1, b.j}) || m.cols() != M.dim_at(b))
                throw ParseError(where + ".diff." + k, "block shape mismatch");
            M.under.set_diff(b, sp_from_dense(m));
        }
    std::map<std::string, int> by_label;
    for (int g = 0; g < alg->num_gens(); ++g) by_label[alg->gens[g].label] = g;
    if (j.contains("actions"))
        for (auto& [label, blocks] : j.at("actions").items()) {
            auto it = by_label.find(label);
            if (it == by_label.end()) throw ParseError(where + ".actions", "unknown generator " + label);
            for (auto& [k, v] : blocks.items()) {
                Bidegree b = parse_bidegree(k, where + ".actions." + label);
                DMat<K> m = matrix_from_json(f, v, where + ".actions." + label + "." + k);
                Bidegree tb = b + Bidegree{alg->gens[it->second].c, alg->gens[it->second].t};
                if (m.rows() != M.dim_at(tb) || m.cols() != M.dim_at(b))
                    throw ParseError(where + ".actions." + label + "." + k, "block shape mismatch");
                M.set_act(it->second, b, sp_from_dense(m));
            }
        }
    int lo = 0, hi = 0;
    bool first = true;
    for (auto& [b, d] : M.under.dims) {
        lo = first ? b.j : std::min(lo, b.j);
        hi = first ? b.j : std::max(hi, b.j);
        first = false;
    }
    M.jlo = lo;
    M.jhi = hi;
    M.sup_lo = lo;
    M.sup_hi = hi;
    auto bad = validate(M);
    if (!bad.empty()) throw ParseError(where, bad.front());
    return M;
}

template <class F>
json module_to_json(const F& f, const DgModule<typename F::Scalar>& M) {
    json dims = json::object(), diff = json::object(), actions = json::object();
    for (auto& [b, d] : M.under.dims) dims[bidegree_key(b)] = d;
    for (auto& [b, m] : M.under.diff) diff[bidegree_key(b)] = sparse_to_json(f, m);
    for (int g = 0; g < M.alg->num_gens(); ++g) {
        if (M.act[g].empty()) continue;
        json blocks = json::object();
        for (auto& [b, m] : M.act[g]) blocks[bidegree_key(b)] = sparse_to_json(f, m);
        actions[M.alg->gens[g].label] = std::move(blocks);
    }
    return json{{"dims", dims}, {"diff", diff}, {"actions", actions}};
}

/******** tables ********/

template <class K>
json table_to_json(const CohomologyTable<K>& t) {
    json out = json::array();
    for (auto& [b, d] : t.dims)
        if (d > 0) out.push_back(json{{"i", b.i}, {"j", b.j}, {"dim", d}});
    return out;
}

template <class K>
std::string table_to_csv(const CohomologyTable<K>& t) {
    std::string out = "i,j,dim\n";
    for (auto& [b, d] : t.dims)
        if (d > 0) out += std::to_string(b.i) + "," + std::to_string(b.j) + "," + std::to_string(d) + "\n";
    return out;
}

template <class K>
std::string table_to_text(const CohomologyTable<K>& t) {
    if (t.dims.empty()) return "(empty table)\n";
    std::string out;
    for (auto& [b, d] : t.dims)
        if (d > 0) out += "  H^{" + std::to_string(b.i) + "}_{" + std::to_string(b.j) + "} = " + std::to_string(d) + "\n";
    return out;
}

}  // namespace koszul
