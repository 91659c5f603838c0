#include "reslie/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace reslie {

using nlohmann::json;

namespace {

struct DocError {
    std::string where, what;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw DocError{where, what}; }

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

long long integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

FpVector vector_of(const json& j, const PrimeField& f, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) fail(where, "expected a list of " + std::to_string(n) + " integers");
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(integer(j[i], where + "/" + std::to_string(i)));
    return FpVector(f, v);
}

FpMatrix matrix_of_rows(const json& j, const PrimeField& f, std::size_t rows, std::size_t cols,
                        const std::string& where) {
    if (!j.is_array() || j.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
    std::vector<FpVector> rs;
    for (std::size_t i = 0; i < rows; ++i) rs.push_back(vector_of(j[i], f, cols, where + "/" + std::to_string(i)));
    return FpMatrix::from_rows(f, cols, rs);
}

std::size_t index_in(const std::string& s, std::size_t n, const std::string& where) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        fail(where, "bad basis index \"" + s + "\"");
    }
    if (pos != s.size() || v >= n) fail(where, "basis index \"" + s + "\" out of range");
    return v;
}

std::pair<std::size_t, std::size_t> pair_key(const std::string& key, std::size_t n, const std::string& where) {
    auto comma = key.find(',');
    if (comma == std::string::npos) fail(where, "bracket key must look like \"i,j\"");
    std::size_t i = index_in(key.substr(0, comma), n, where), j = index_in(key.substr(comma + 1), n, where);
    if (i == j) fail(where, "bracket of a basis element with itself");
    return {i, j};
}

// Fills a 2-cochain (bracket table) and basis values of a p-map from "brackets"/"pmap" blocks.
void read_tables(const json& j, const PrimeField& f, std::size_t n, const std::string& where, CeCochain& br,
                 std::vector<FpVector>& pm) {
    if (j.contains("brackets")) {
        const json& b = j.at("brackets");
        if (!b.is_object()) fail(where + "/brackets", "expected an object");
        for (auto it = b.begin(); it != b.end(); ++it) {
            const std::string w = where + "/brackets/" + it.key();
            auto [a, c] = pair_key(it.key(), n, w);
            br.set({a, c}, vector_of(it.value(), f, n, w));
        }
    }
    if (j.contains("pmap")) {
        const json& m = j.at("pmap");
        if (!m.is_object()) fail(where + "/pmap", "expected an object");
        for (auto it = m.begin(); it != m.end(); ++it) {
            const std::string w = where + "/pmap/" + it.key();
            pm[index_in(it.key(), n, w)] = vector_of(it.value(), f, n, w);
        }
    }
}

PMap read_algebra(const json& j, const std::string& where) {
    const long long p = integer(need(j, "p", where), where + "/p");
    if (p < 2 || p > 1000003 || !is_prime(static_cast<std::uint32_t>(p))) fail(where + "/p", "characteristic must be prime");
    PrimeField f(static_cast<std::uint32_t>(p));
    const long long dim = integer(need(j, "dim", where), where + "/dim");
    if (dim < 1 || dim > 64) fail(where + "/dim", "dimension must lie in 1..64");
    const std::size_t n = static_cast<std::size_t>(dim);
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const json& l = j.at("labels");
        if (!l.is_array() || l.size() != n) fail(where + "/labels", "expected " + std::to_string(n) + " labels");
        for (const auto& s : l) {
            if (!s.is_string()) fail(where + "/labels", "labels must be strings");
            labels.push_back(s.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    }
    CeCochain br(f, n, n, 2);
    std::vector<FpVector> pm(n, FpVector(f, n));
    read_tables(j, f, n, where, br, pm);
    LieAlgebra L(f, labels);
    for (std::size_t t = 0; t < br.tuples().size(); ++t) {
        const auto& tu = br.tuples().tuple(t);
        FpVector v = br.value(t);
        if (!v.is_zero()) L.set_bracket(tu[0], tu[1], v);
    }
    return PMap{L, pm};
}

json vec_json(const FpVector& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json algebra_json(const PMap& P) {
    const LieAlgebra& L = P.algebra;
    const std::size_t n = L.dim();
    json j;
    j["p"] = P.p();
    j["dim"] = n;
    j["labels"] = L.labels();
    json b = json::object();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = a + 1; c < n; ++c) {
            FpVector v = L.structure(a, c);
            if (!v.is_zero()) b[std::to_string(a) + "," + std::to_string(c)] = vec_json(v);
        }
    j["brackets"] = b;
    json m = json::object();
    for (std::size_t a = 0; a < n; ++a)
        if (!P.images[a].is_zero()) m[std::to_string(a)] = vec_json(P.images[a]);
    j["pmap"] = m;
    return j;
}

json matrix_json(const FpMatrix& A) {
    json rows = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) rows.push_back(vec_json(A.row(i)));
    return rows;
}

// Objects are indented; arrays of scalars stay on one line.
void pretty(const json& j, int indent, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' '), close(static_cast<std::size_t>(indent * depth), ' ');
    auto flat = [](const json& a) {
        for (const auto& e : a)
            if (e.is_structured()) return false;
        return true;
    };
    if (indent < 0 || !j.is_structured() || j.empty() || (j.is_array() && flat(j))) {
        out += j.dump();
        return;
    }
    out += j.is_object() ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (j.is_object()) out += json(it.key()).dump() + ": ";
        pretty(it.value(), indent, depth + 1, out);
    }
    out += "\n" + close + (j.is_object() ? "}" : "]");
}

std::string dump(const json& j, int indent) {
    std::string out;
    pretty(j, indent, 0, out);
    return out;
}

Error to_error(const DocError& e) { return make_error(ErrorCode::ParseError, "at " + (e.where.empty() ? "/" : e.where) + ": " + e.what); }

template <class T, class Fn>
Expected<T> parse_with(const std::string& text, Fn fn) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        const auto col = what.find("column ");
        const auto cut = col == std::string::npos ? std::string::npos : what.find(": ", col);
        if (cut != std::string::npos) what = what.substr(cut + 2);
        return make_error(ErrorCode::ParseError, locate(text, e.byte) + ": " + what);
    }
    try {
        return fn(j);
    } catch (const DocError& e) {
        return to_error(e);
    } catch (const std::invalid_argument& e) {
        return make_error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace

Expected<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return make_error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Expected<AlgebraDocument> parse_algebra_document(const std::string& text) {
    return parse_with<AlgebraDocument>(text, [](const json& j) {
        AlgebraDocument doc{read_algebra(j, ""), std::nullopt, std::nullopt};
        const PrimeField& f = doc.algebra.field();
        const std::size_t n = doc.algebra.dim();
        if (j.contains("module")) {
            const json& m = j.at("module");
            const long long md = integer(need(m, "dim", "/module"), "/module/dim");
            if (md < 1 || md > 256) fail("/module/dim", "module dimension must lie in 1..256");
            const json& act = need(m, "action", "/module");
            if (!act.is_array() || act.size() != n) fail("/module/action", "one action matrix per basis element");
            std::vector<FpMatrix> rho;
            for (std::size_t i = 0; i < n; ++i)
                rho.push_back(matrix_of_rows(act[i], f, md, md, "/module/action/" + std::to_string(i)));
            doc.module = LModule(doc.algebra.algebra, rho);
        }
        if (j.contains("morphism")) {
            const json& m = j.at("morphism");
            PMap target = read_algebra(need(m, "target", "/morphism"), "/morphism/target");
            if (target.field() != f) fail("/morphism/target/p", "target characteristic differs");
            FpMatrix A = matrix_of_rows(need(m, "matrix", "/morphism"), f, target.dim(), n, "/morphism/matrix");
            doc.morphism = Morphism{doc.algebra, target, A};
        }
        return doc;
    });
}

Expected<AlgebraDocument> load_algebra_document(const std::string& path) {
    auto text = read_file(path);
    if (!text) return text.error();
    auto doc = parse_algebra_document(*text);
    if (!doc) return make_error(doc.error().code, path + ": " + doc.error().message);
    return doc;
}

Expected<AlgebraDocument> load_validated(const std::string& path) {
    auto doc = load_algebra_document(path);
    if (!doc) return doc;
    auto check = [&](const PMap& P, const std::string& what) -> std::optional<Error> {
        auto jr = jacobi_check(P.algebra);
        if (!jr.ok)
            return make_error(ErrorCode::ParseError, path + ": " + what + " fails Jacobi on basis (" + std::to_string(jr.i) +
                                                         "," + std::to_string(jr.j) + "," + std::to_string(jr.k) + ")");
        auto pr = verify_pmap(P);
        if (!pr.ok)
            return make_error(ErrorCode::AdMismatch,
                              path + ": " + what + " p-map fails axiom " + std::to_string(pr.axiom) + " " + pr.detail);
        return std::nullopt;
    };
    if (auto e = check(doc->algebra, "algebra")) return *e;
    if (doc->morphism)
        if (auto e = check(doc->morphism->target, "morphism target")) return *e;
    return doc;
}

std::string serialize_algebra(const PMap& P, int indent) { return dump(algebra_json(P), indent); }

std::string serialize_document(const AlgebraDocument& doc, int indent) {
    json j = algebra_json(doc.algebra);
    if (doc.module) {
        json act = json::array();
        for (const auto& r : doc.module->actions()) act.push_back(matrix_json(r));
        j["module"] = {{"dim", doc.module->dim()}, {"action", act}};
    }
    if (doc.morphism) j["morphism"] = {{"target", algebra_json(doc.morphism->target)}, {"matrix", matrix_json(doc.morphism->matrix)}};
    return dump(j, indent);
}

Expected<TruncatedDeformation> parse_jet(const std::string& text, const PMap& base) {
    return parse_with<TruncatedDeformation>(text, [&](const json& j) {
        const PrimeField& f = base.field();
        const std::size_t n = base.dim();
        if (integer(need(j, "p", ""), "/p") != f.p()) fail("/p", "jet characteristic differs from the algebra");
        if (integer(need(j, "dim", ""), "/dim") != static_cast<long long>(n)) fail("/dim", "jet dimension differs");
        const json& terms = need(j, "terms", "");
        if (!terms.is_array()) fail("/terms", "expected a list");
        std::vector<std::optional<RC2>> by_degree;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string w = "/terms/" + std::to_string(t);
            const long long k = integer(need(terms[t], "degree", w), w + "/degree");
            if (k < 1 || k > 64) fail(w + "/degree", "degree must lie in 1..64");
            RC2 c = RC2::zero(f, n, n);
            read_tables(terms[t], f, n, w, c.phi, c.omega);
            if (by_degree.size() < static_cast<std::size_t>(k)) by_degree.resize(k);
            if (by_degree[k - 1]) fail(w + "/degree", "degree listed twice");
            by_degree[k - 1] = c;
        }
        TruncatedDeformation D = TruncatedDeformation::constant(base);
        for (auto& c : by_degree) D.append(c ? *c : RC2::zero(f, n, n));
        return D;
    });
}

Expected<TruncatedDeformation> load_jet(const std::string& path, const PMap& base) {
    auto text = read_file(path);
    if (!text) return text.error();
    auto D = parse_jet(*text, base);
    if (!D) return make_error(D.error().code, path + ": " + D.error().message);
    return D;
}

std::string serialize_jet(const TruncatedDeformation& D, int indent) {
    const std::size_t n = D.dim();
    json j;
    j["p"] = D.p();
    j["dim"] = n;
    json terms = json::array();
    for (std::size_t k = 1; k <= D.order(); ++k) {
        json t;
        t["degree"] = k;
        json b = json::object();
        const TupleIndex& T = D.m[k].tuples();
        for (std::size_t i = 0; i < T.size(); ++i) {
            FpVector v = D.m[k].value(i);
            if (!v.is_zero()) b[std::to_string(T.tuple(i)[0]) + "," + std::to_string(T.tuple(i)[1])] = vec_json(v);
        }
        t["brackets"] = b;
        json m = json::object();
        for (std::size_t a = 0; a < n; ++a)
            if (!D.omega[k][a].is_zero()) m[std::to_string(a)] = vec_json(D.omega[k][a]);
        t["pmap"] = m;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return dump(j, indent);
}

}  // namespace reslie
