#include "ordlat/io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ordlat/errors.hpp"

namespace ordlat {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw ValidationError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::size_t as_count(const Json& j, const char* what) {
    std::int64_t v = as_int(j, what);
    if (v < 0) throw ValidationError(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

const Json& as_array(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    return j;
}

Json element_json(const RingElement& x) {
    Json a = Json::array();
    for (std::uint64_t c : x.coeffs()) a.push_back(c);
    return a;
}

RingElement element_from(const CtxPtr& ctx, const Json& j) {
    as_array(j, "element");
    std::vector<std::int64_t> coeffs;
    coeffs.reserve(j.size());
    for (const Json& v : j) coeffs.push_back(as_int(v, "element coefficient"));
    return RingElement::from_coeffs(ctx, coeffs);
}

Json context_json(const CtxPtr& ctx) {
    Json j = Json::object();
    j["p"] = ctx->p();
    j["m"] = ctx->m();
    j["N"] = ctx->N();
    j["modulus"] = ctx->modulus();
    return j;
}

CtxPtr context_from(const Json& j) {
    std::int64_t p = as_int(field(j, "p"), "p");
    std::int64_t m = as_int(field(j, "m"), "m");
    std::int64_t N = as_int(field(j, "N"), "N");
    if (m <= 0 || N <= 0) throw ValidationError("context needs positive m and N");
    if (!j.contains("modulus")) return Context::make(p, static_cast<int>(m), static_cast<int>(N));
    std::vector<std::int64_t> modulus;
    for (const Json& v : as_array(j.at("modulus"), "modulus"))
        modulus.push_back(as_int(v, "modulus coefficient"));
    return Context::make(p, static_cast<int>(m), static_cast<int>(N), std::move(modulus));
}

Json digits_json(const WittDigits& d) {
    Json a = Json::array();
    for (const RingElement& digit : d.digits) a.push_back(element_json(digit));
    return a;
}

WittDigits digits_from(const CtxPtr& ctx, const Json& j) {
    as_array(j, "digit list");
    CtxPtr res = ctx->N() == 1 ? ctx : ctx->residue();
    std::vector<RingElement> digits;
    digits.reserve(j.size());
    for (const Json& row : j) {
        as_array(row, "digit");
        std::vector<std::int64_t> coeffs;
        for (const Json& v : row) {
            std::int64_t c = as_int(v, "digit entry");
            if (c < 0 || c >= ctx->p())
                throw ValidationError("digit entries must lie in [0, p)");
            coeffs.push_back(c);
        }
        digits.push_back(RingElement::from_coeffs(res, coeffs));
    }
    return make_digits(ctx, digits);
}

Json matrix_json(const Mat& a) {
    Json j = Json::object();
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    Json entries = Json::array();
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) entries.push_back(element_json(a.at(r, c)));
    j["entries"] = entries;
    return j;
}

Mat matrix_from(const CtxPtr& ctx, const Json& j) {
    std::size_t rows = as_count(field(j, "rows"), "rows");
    std::size_t cols = as_count(field(j, "cols"), "cols");
    const Json& entries = as_array(field(j, "entries"), "entries");
    if (entries.size() != rows * cols)
        throw ValidationError("matrix entry count does not match rows * cols");
    Mat out(ctx, rows, cols);
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = element_from(ctx, entries[k++]);
    return out;
}

// Action keys: basis labels when present and collision-free, generated
// "b<i>" names otherwise.
std::vector<std::string> action_keys(const OrderPtr& ord) {
    std::vector<std::string> keys = ord->labels();
    bool usable = !keys.empty();
    if (usable) {
        std::map<std::string, int> seen;
        for (const std::string& k : keys)
            if (++seen[k] > 1) usable = false;
    }
    if (!usable) {
        keys.clear();
        for (std::size_t i = 0; i < ord->dim(); ++i) keys.push_back("b" + std::to_string(i));
    }
    return keys;
}

Json order_json(const OrderPtr& ord) {
    const CtxPtr& ctx = ord->ctx();
    std::size_t d = ord->dim();
    Json j = Json::object();
    j["context"] = context_json(ctx);
    j["dimension"] = d;
    j["labels"] = ord->labels();
    Json sc = Json::array();
    for (std::size_t i = 0; i < d; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<RingElement> coords(d, RingElement::zero(ctx));
            for (const SparseTerm& t : ord->product(i, k)) coords[t.index] += t.coeff;
            Json cell = Json::array();
            for (const RingElement& c : coords) cell.push_back(element_json(c));
            row.push_back(cell);
        }
        sc.push_back(row);
    }
    j["structure_constants"] = sc;
    Json id = Json::array();
    for (const RingElement& c : ord->identity()) id.push_back(element_json(c));
    j["identity"] = id;
    return j;
}

OrderPtr order_from(const Json& j) {
    CtxPtr ctx = context_from(field(j, "context"));
    std::size_t d = as_count(field(j, "dimension"), "dimension");
    if (d == 0) throw ValidationError("order dimension must be positive");

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const Json& v : as_array(j.at("labels"), "labels")) {
            if (!v.is_string()) throw ValidationError("labels must be strings");
            labels.push_back(v.get<std::string>());
        }
        if (!labels.empty() && labels.size() != d)
            throw ValidationError("label count does not match the dimension");
    }

    const Json& sc = as_array(field(j, "structure_constants"), "structure_constants");
    if (sc.size() != d) throw ValidationError("structure_constants must have one row per basis element");
    std::vector<std::vector<std::vector<SparseTerm>>> products(
        d, std::vector<std::vector<SparseTerm>>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const Json& row = as_array(sc[i], "structure_constants row");
        if (row.size() != d)
            throw ValidationError("structure_constants rows must have one cell per basis element");
        for (std::size_t k = 0; k < d; ++k) {
            const Json& cell = as_array(row[k], "structure_constants cell");
            if (cell.size() != d)
                throw ValidationError("structure_constants cells must list all coordinates");
            for (std::size_t u = 0; u < d; ++u) {
                RingElement c = element_from(ctx, cell[u]);
                if (!c.is_zero()) products[i][k].push_back(SparseTerm{u, std::move(c)});
            }
        }
    }

    const Json& idj = as_array(field(j, "identity"), "identity");
    if (idj.size() != d) throw ValidationError("identity must list all coordinates");
    std::vector<RingElement> id;
    id.reserve(d);
    for (std::size_t u = 0; u < d; ++u) id.push_back(element_from(ctx, idj[u]));

    return Order::make(ctx, d, std::move(products), std::move(id), std::move(labels));
}

Json lattice_json(const Lattice& L) {
    Json j = Json::object();
    j["order"] = order_json(L.order());
    j["rank"] = L.rank();
    std::vector<std::string> keys = action_keys(L.order());
    Json action = Json::object();
    for (std::size_t i = 0; i < L.order()->dim(); ++i) action[keys[i]] = matrix_json(L.action(i));
    j["action"] = action;
    return j;
}

Lattice lattice_actions_from(const Json& j, OrderPtr ord) {
    std::size_t rank = as_count(field(j, "rank"), "rank");
    const Json& action = field(j, "action");
    if (!action.is_object()) throw ValidationError("action must map basis labels to matrices");
    std::vector<std::string> keys = action_keys(ord);
    std::vector<Mat> mats;
    mats.reserve(ord->dim());
    for (std::size_t i = 0; i < ord->dim(); ++i) {
        if (!action.contains(keys[i]))
            throw ValidationError("action is missing the matrix for basis element \"" + keys[i] +
                                  "\"");
        Mat a = matrix_from(ord->ctx(), action.at(keys[i]));
        if (a.rows() != rank || a.cols() != rank)
            throw ValidationError("action matrices must be rank x rank");
        mats.push_back(std::move(a));
    }
    if (action.size() != ord->dim())
        throw ValidationError("action has extra entries beyond the order basis");
    return Lattice::make(std::move(ord), std::move(mats));
}

Lattice lattice_from(const Json& j, const std::string& base_dir) {
    OrderPtr ord;
    if (j.contains("order")) {
        ord = order_from(j.at("order"));
    } else if (j.contains("order_ref")) {
        const Json& ref = j.at("order_ref");
        if (!ref.is_string()) throw ValidationError("order_ref must be a path string");
        std::filesystem::path p(ref.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        ord = load_order(p.string());
    } else {
        throw ValidationError("lattice needs \"order\" inline or an \"order_ref\" path");
    }
    return lattice_actions_from(j, std::move(ord));
}

Json polynomial_json(const PolyO& f) {
    Json j = Json::object();
    j["n"] = f.vars();
    Json terms = Json::array();
    for (const auto& [exps, coeff] : f.terms()) {
        Json t = Json::object();
        t["exponents"] = exps;
        t["coefficient"] = element_json(coeff);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

PolyO polynomial_from(const CtxPtr& ctx, const Json& j) {
    std::size_t n = as_count(field(j, "n"), "n");
    std::map<std::vector<int>, RingElement> terms;
    for (const Json& t : as_array(field(j, "terms"), "terms")) {
        std::vector<int> exps;
        for (const Json& e : as_array(field(t, "exponents"), "exponents")) {
            std::int64_t v = as_int(e, "exponent");
            if (v < 0) throw ValidationError("exponents must be nonnegative");
            exps.push_back(static_cast<int>(v));
        }
        RingElement coeff = element_from(ctx, field(t, "coefficient"));
        if (!terms.emplace(std::move(exps), std::move(coeff)).second)
            throw ValidationError("polynomial has a repeated exponent vector");
    }
    return PolyO::make(ctx, n, terms);
}

Json point_json(const WittPoint& x) {
    Json j = Json::object();
    j["n"] = x.vars;
    j["l"] = x.l;
    Json digits = Json::array();
    for (const WittDigits& d : x.coords) digits.push_back(digits_json(d));
    j["digits"] = digits;
    return j;
}

WittPoint point_from(const CtxPtr& ctx, const Json& j) {
    std::size_t n = as_count(field(j, "n"), "n");
    std::int64_t l = as_int(field(j, "l"), "l");
    const Json& digits = as_array(field(j, "digits"), "digits");
    if (digits.size() != n) throw ValidationError("point needs one digit list per variable");
    std::vector<WittDigits> coords;
    coords.reserve(n);
    for (const Json& d : digits) coords.push_back(digits_from(ctx, d));
    return make_point(ctx, static_cast<int>(l), coords);
}

} // namespace

std::string encode_context(const CtxPtr& ctx) { return dump(context_json(ctx)); }
CtxPtr decode_context(const std::string& text) { return context_from(parse(text)); }

std::string encode_element(const RingElement& x) { return dump(element_json(x)); }
RingElement decode_element(const CtxPtr& ctx, const std::string& text) {
    return element_from(ctx, parse(text));
}

std::string encode_digits(const WittDigits& d) { return dump(digits_json(d)); }
WittDigits decode_digits(const CtxPtr& ctx, const std::string& text) {
    return digits_from(ctx, parse(text));
}

std::string encode_matrix(const Mat& a) { return dump(matrix_json(a)); }
Mat decode_matrix(const CtxPtr& ctx, const std::string& text) {
    return matrix_from(ctx, parse(text));
}

std::string encode_order(const OrderPtr& ord) { return dump(order_json(ord)); }
OrderPtr decode_order(const std::string& text) { return order_from(parse(text)); }

std::string encode_lattice(const Lattice& L) { return dump(lattice_json(L)); }
Lattice decode_lattice(const std::string& text) { return lattice_from(parse(text), "."); }

Lattice decode_lattice_over(const OrderPtr& ord, const std::string& text) {
    Json j = parse(text);
    if (j.contains("order")) {
        OrderPtr inlined = order_from(j.at("order"));
        if (!ord->same_structure(*inlined))
            throw ValidationError("lattice file embeds a different order than the one supplied");
    }
    return lattice_actions_from(j, ord);
}

std::string encode_polynomial(const PolyO& f) { return dump(polynomial_json(f)); }
PolyO decode_polynomial(const CtxPtr& ctx, const std::string& text) {
    return polynomial_from(ctx, parse(text));
}

std::string encode_point(const WittPoint& x) { return dump(point_json(x)); }
WittPoint decode_point(const CtxPtr& ctx, const std::string& text) {
    return point_from(ctx, parse(text));
}

std::string encode_census(const CensusReport& report, int max_colength) {
    Json j = Json::object();
    j["context"] = context_json(report.working);
    j["precision"] = report.working->N();
    j["max_colength"] = max_colength;
    j["entry_count"] = report.entries.size();

    Json counts = Json::object();
    for (const auto& [colength, count] : report.counts_by_colength())
        counts[std::to_string(colength)] = count;
    j["counts_by_colength"] = counts;
    j["class_count"] = report.classes.size();
    j["rigid_class_count"] = report.rigid_class_count();

    Json classes = Json::array();
    for (const CensusClass& cls : report.classes) {
        Json c = Json::object();
        const SublatticeEntry& rep = report.entries[cls.representative];
        c["representative"] = matrix_json(rep.basis);
        c["representative_colength"] = rep.colength;
        c["size"] = cls.members.size();
        std::map<int, std::size_t> by_colength;
        for (std::size_t idx : cls.members) ++by_colength[report.entries[idx].colength];
        Json members = Json::object();
        for (const auto& [colength, count] : by_colength)
            members[std::to_string(colength)] = count;
        c["members_by_colength"] = members;
        c["end_rank"] = cls.end_rank;
        c["residue_end_dim"] = cls.residue_end_dim;
        c["rigid"] = cls.rigid;
        c["self_ext"] = cls.self_ext;
        classes.push_back(c);
    }
    j["classes"] = classes;
    return dump(j);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
    if (!out) throw Error("failed while writing file: " + path);
}

OrderPtr load_order(const std::string& path) {
    try {
        return decode_order(read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Lattice load_lattice(const std::string& path) {
    try {
        std::string base = std::filesystem::path(path).parent_path().string();
        if (base.empty()) base = ".";
        return lattice_from(parse(read_text_file(path)), base);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

PolyO load_polynomial(const CtxPtr& ctx, const std::string& path) {
    try {
        return decode_polynomial(ctx, read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

WittPoint load_point(const CtxPtr& ctx, const std::string& path) {
    try {
        return decode_point(ctx, read_text_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string content_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace ordlat
