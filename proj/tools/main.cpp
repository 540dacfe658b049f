// Command-line frontend for exact lattice computations over truncated Witt
// rings.  Every run prints a human-readable table to stdout and produces a
// structured JSON report (to --out when given, otherwise appended to stdout).
// The structured report never contains timings, so reruns with identical
// inputs and seed are byte-identical.
//
// Exit codes: 0 success, 2 malformed input, 3 precision exhausted even after
// one automatic retry at doubled precision, 4 size caps.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ordlat/io.hpp"

using namespace ordlat;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::int64_t p = 2;
    int m = 1;
    int precision = 8;
    std::uint64_t seed = 0;
    std::string out_path;

    // witt
    std::string witt_op;
    std::string a_text;
    std::string b_text;
    std::string x_text;
    int digits = 0;

    // rigid / census
    std::string order_file;
    std::string lattice_file;
    int max_colength = 2;
    int ext_hint = 0;
    bool has_ext_hint = false;

    // genval
    std::string poly_file;
    std::string point_spec;
    bool want_witness = false;
    int threshold = 0;
    bool has_threshold = false;

    // group
    std::string generators;
    std::string subgroup;
    std::string group_op;
};

struct Outcome {
    Json parameters = Json::object();
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<std::pair<std::string, std::string>> rows;
};

Json jparse(const std::string& text) { return Json::parse(text); }

Json ctx_json(const CtxPtr& ctx) { return jparse(encode_context(ctx)); }
Json elt_json(const RingElement& x) { return jparse(encode_element(x)); }
Json digits_json(const WittDigits& d) { return jparse(encode_digits(d)); }

Json capped_json(const CappedVal& v) {
    Json j = Json::object();
    j["value"] = v.value;
    j["exact"] = v.exact;
    return j;
}

std::string capped_human(const CappedVal& v) {
    if (v.exact) return std::to_string(v.value) + " (exact)";
    return ">= " + std::to_string(v.value) + " (precision-capped)";
}

std::string ext_human(const std::vector<int>& inv) {
    if (inv.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (i) s += " + ";
        s += "Z/p^" + std::to_string(inv[i]);
    }
    return s;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string ctx_human(const CtxPtr& ctx) {
    return "p=" + std::to_string(ctx->p()) + " m=" + std::to_string(ctx->m()) +
           " N=" + std::to_string(ctx->N());
}

Json file_input(const std::string& path, const std::string& text) {
    Json j = Json::object();
    j["path"] = path;
    j["digest"] = content_digest(text);
    return j;
}

void require_flag(const std::string& value, const std::string& name) {
    if (value.empty()) throw ValidationError("this operation needs " + name);
}

std::int64_t parse_int(const std::string& raw) {
    std::string s = raw;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("not an integer: \"" + raw + "\"");
    }
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// --point accepts either a path to a point file or an inline description:
// variables separated by ';', digits by ',', residue coefficients (for m>1)
// by ':'.  Example for n=2, l=2, m=1:  "1,0;0,1".
WittPoint resolve_point(const CtxPtr& ctx, const Options& o, Json& inputs) {
    require_flag(o.point_spec, "--point");
    std::error_code ec;
    if (std::filesystem::is_regular_file(o.point_spec, ec)) {
        std::string text = read_text_file(o.point_spec);
        inputs["point"] = file_input(o.point_spec, text);
        WittPoint x = decode_point(ctx, text);
        if (o.digits > 0 && o.digits != x.l)
            throw ValidationError("--digits disagrees with the digit length of the point file");
        return x;
    }
    Json echo = Json::object();
    echo["inline"] = o.point_spec;
    inputs["point"] = echo;
    CtxPtr rctx = ctx->residue();
    std::vector<WittDigits> coords;
    for (const std::string& var : split_on(o.point_spec, ';')) {
        std::vector<RingElement> digits;
        for (const std::string& digit : split_on(var, ',')) {
            std::vector<std::int64_t> coeffs;
            for (const std::string& c : split_on(digit, ':')) coeffs.push_back(parse_int(c));
            if (static_cast<int>(coeffs.size()) != ctx->m())
                throw ValidationError("each digit needs m residue coefficients");
            digits.push_back(RingElement::from_coeffs(rctx, coeffs));
        }
        coords.push_back(make_digits(ctx, digits));
    }
    int l = o.digits > 0 ? o.digits : (coords.empty() ? 0 : coords.front().length());
    return make_point(ctx, l, coords);
}

void double_precision(Json& ctxj) {
    if (!ctxj.is_object() || !ctxj.contains("N") || !ctxj.at("N").is_number_integer())
        throw ValidationError("context is missing an integer precision N");
    ctxj.at("N") = ctxj.at("N").get<long long>() * 2;
}

// Order and lattice files carry their own context.  At scale 2 (the retry
// path) the files are re-decoded with N doubled; if the stored coordinates do
// not determine the objects at the higher precision, the checked constructors
// reject them and the retry fails honestly.
std::pair<OrderPtr, Lattice> load_pair(const Options& o, int scale, Json& inputs) {
    std::string otext = read_text_file(o.order_file);
    std::string ltext = read_text_file(o.lattice_file);
    inputs["order"] = file_input(o.order_file, otext);
    inputs["lattice"] = file_input(o.lattice_file, ltext);
    if (scale == 1) {
        OrderPtr ord = decode_order(otext);
        Lattice L = decode_lattice_over(ord, ltext);
        return {std::move(ord), std::move(L)};
    }
    try {
        Json oj = Json::parse(otext);
        double_precision(oj.at("context"));
        Json lj = Json::parse(ltext);
        if (lj.contains("order")) double_precision(lj.at("order").at("context"));
        OrderPtr ord = decode_order(oj.dump());
        Lattice L = decode_lattice_over(ord, lj.dump());
        return {std::move(ord), std::move(L)};
    } catch (const std::exception& e) {
        throw PrecisionExhausted(
            std::string("the input files do not determine the objects at doubled precision: ") +
            e.what());
    }
}

int p_part_exponent(std::size_t n, std::int64_t p) {
    int k = 0;
    while (n % static_cast<std::size_t>(p) == 0) {
        n /= static_cast<std::size_t>(p);
        ++k;
    }
    return k;
}

void census_rows(Outcome& out, const CensusReport& rep, int max_colength) {
    out.rows.emplace_back("working precision", std::to_string(rep.working->N()));
    out.rows.emplace_back("sublattices", std::to_string(rep.entries.size()));
    auto counts = rep.counts_by_colength();
    for (int c = 0; c <= max_colength; ++c) {
        auto it = counts.find(c);
        std::size_t k = it == counts.end() ? 0 : it->second;
        out.rows.emplace_back("  colength " + std::to_string(c), std::to_string(k));
    }
    out.rows.emplace_back("isomorphism classes", std::to_string(rep.classes.size()));
    out.rows.emplace_back("rigid classes", std::to_string(rep.rigid_class_count()));
    for (std::size_t k = 0; k < rep.classes.size(); ++k) {
        const CensusClass& cls = rep.classes[k];
        std::string desc = "colength " + std::to_string(rep.entries[cls.representative].colength) +
                           ", size " + std::to_string(cls.members.size()) + ", end rank " +
                           std::to_string(cls.end_rank) + ", rigid " + yesno(cls.rigid) +
                           ", Ext^1 " + ext_human(cls.self_ext);
        out.rows.emplace_back("  class " + std::to_string(k), desc);
    }
}

Outcome run_witt(const Options& o, int scale) {
    CtxPtr ctx = Context::make(o.p, o.m, o.precision * scale);
    Outcome out;
    out.parameters["p"] = o.p;
    out.parameters["m"] = o.m;
    out.parameters["precision"] = o.precision;
    out.parameters["op"] = o.witt_op;
    out.results["context"] = ctx_json(ctx);
    out.rows.emplace_back("operation", o.witt_op);
    out.rows.emplace_back("context", ctx_human(ctx));

    if (o.witt_op == "add" || o.witt_op == "mul") {
        require_flag(o.a_text, "--a");
        require_flag(o.b_text, "--b");
        WittDigits a = decode_digits(ctx, o.a_text);
        WittDigits b = decode_digits(ctx, o.b_text);
        if (a.length() != b.length())
            throw ValidationError("the two digit vectors must have the same length");
        RingElement ra = from_witt_digits(a);
        RingElement rb = from_witt_digits(b);
        RingElement rc = o.witt_op == "add" ? ra + rb : ra * rb;
        WittDigits c = to_witt_digits(rc, a.length());
        out.results["a"] = digits_json(a);
        out.results["b"] = digits_json(b);
        Json res = Json::object();
        res["digits"] = digits_json(c);
        res["element"] = elt_json(rc);
        out.results["result"] = res;
        out.rows.emplace_back("a", digits_json(a).dump());
        out.rows.emplace_back("b", digits_json(b).dump());
        out.rows.emplace_back("result digits", digits_json(c).dump());
        out.rows.emplace_back("result element", elt_json(rc).dump());
    } else if (o.witt_op == "teich") {
        require_flag(o.x_text, "--x");
        RingElement xr = decode_element(ctx->residue(), o.x_text);
        RingElement t = teichmuller(ctx, xr);
        int l = o.digits > 0 ? o.digits : ctx->N();
        WittDigits d = to_witt_digits(t, l);
        out.results["x"] = elt_json(xr);
        Json res = Json::object();
        res["element"] = elt_json(t);
        res["digits"] = digits_json(d);
        out.results["result"] = res;
        out.rows.emplace_back("residue element", elt_json(xr).dump());
        out.rows.emplace_back("Teichmuller lift", elt_json(t).dump());
        out.rows.emplace_back("digits", digits_json(d).dump());
    } else if (o.witt_op == "to-digits") {
        require_flag(o.x_text, "--x");
        RingElement x = decode_element(ctx, o.x_text);
        int l = o.digits > 0 ? o.digits : ctx->N();
        WittDigits d = to_witt_digits(x, l);
        out.results["x"] = elt_json(x);
        Json res = Json::object();
        res["digits"] = digits_json(d);
        out.results["result"] = res;
        out.rows.emplace_back("element", elt_json(x).dump());
        out.rows.emplace_back("digits", digits_json(d).dump());
    } else { // from-digits
        require_flag(o.a_text, "--a");
        WittDigits d = decode_digits(ctx, o.a_text);
        RingElement x = from_witt_digits(d);
        out.results["a"] = digits_json(d);
        Json res = Json::object();
        res["element"] = elt_json(x);
        out.results["result"] = res;
        out.rows.emplace_back("digits", digits_json(d).dump());
        out.rows.emplace_back("canonical lift", elt_json(x).dump());
    }
    return out;
}

Outcome run_rigid(const Options& o, int scale) {
    Outcome out;
    if (o.has_ext_hint) out.parameters["ext_hint"] = o.ext_hint;
    auto [ord, L] = load_pair(o, scale, out.inputs);
    RigidityReport rep = end_reduction(L);
    std::optional<int> hint = o.has_ext_hint ? std::optional<int>(o.ext_hint) : std::nullopt;
    std::vector<int> ext = ext1_invariants(L, L, hint);

    out.results["context"] = ctx_json(L.order()->ctx());
    out.results["rank"] = L.rank();
    out.results["end_rank"] = rep.end_rank;
    out.results["residue_end_dim"] = rep.residue_end_dim;
    out.results["surjective"] = rep.surjective;
    out.results["rigid"] = rep.surjective;
    out.results["ext1"] = ext;

    out.rows.emplace_back("context", ctx_human(L.order()->ctx()));
    out.rows.emplace_back("order dimension", std::to_string(ord->dim()));
    out.rows.emplace_back("lattice rank", std::to_string(L.rank()));
    out.rows.emplace_back("End rank", std::to_string(rep.end_rank));
    out.rows.emplace_back("residue End dim", std::to_string(rep.residue_end_dim));
    out.rows.emplace_back("reduction surjective", yesno(rep.surjective));
    out.rows.emplace_back("rigid", yesno(rep.surjective));
    out.rows.emplace_back("Ext^1(L, L)", ext_human(ext));
    return out;
}

Outcome run_census(const Options& o, int scale) {
    Outcome out;
    out.parameters["max_colength"] = o.max_colength;
    if (o.has_ext_hint) out.parameters["ext_hint"] = o.ext_hint;
    out.parameters["seed"] = o.seed;
    auto [ord, L] = load_pair(o, scale, out.inputs);
    std::optional<int> hint = o.has_ext_hint ? std::optional<int>(o.ext_hint) : std::nullopt;
    CensusReport rep = census_rigid(L, o.max_colength, hint, o.seed);

    out.results["census"] = jparse(encode_census(rep, o.max_colength));
    out.rows.emplace_back("context", ctx_human(L.order()->ctx()));
    out.rows.emplace_back("lattice rank", std::to_string(L.rank()));
    census_rows(out, rep, o.max_colength);
    return out;
}

Outcome run_genval(const Options& o, int scale) {
    CtxPtr ctx = Context::make(o.p, o.m, o.precision * scale);
    Outcome out;
    out.parameters["p"] = o.p;
    out.parameters["m"] = o.m;
    out.parameters["precision"] = o.precision;
    if (o.digits > 0) out.parameters["digits"] = o.digits;
    out.parameters["witness"] = o.want_witness;
    if (o.has_threshold) out.parameters["threshold"] = o.threshold;
    out.parameters["seed"] = o.seed;

    std::string ptext = read_text_file(o.poly_file);
    out.inputs["polynomial"] = file_input(o.poly_file, ptext);
    PolyO f = decode_polynomial(ctx, ptext);
    WittPoint x = resolve_point(ctx, o, out.inputs);

    CappedVal v = generic_valuation(f, x);
    out.results["context"] = ctx_json(ctx);
    out.results["variables"] = f.vars();
    out.results["digit_length"] = x.l;
    out.results["generic_valuation"] = capped_json(v);

    out.rows.emplace_back("context", ctx_human(ctx));
    out.rows.emplace_back("variables", std::to_string(f.vars()));
    out.rows.emplace_back("digit length", std::to_string(x.l));
    out.rows.emplace_back("generic valuation", capped_human(v));

    if (o.want_witness) {
        Witness w = witness_lift(f, x, o.seed);
        Json wj = Json::object();
        wj["extension_degree"] = w.extension_degree;
        wj["field"] = ctx_json(w.field);
        Json z = Json::array();
        for (const RingElement& e : w.z) z.push_back(elt_json(e));
        wj["z"] = z;
        wj["value"] = capped_json(w.value);
        out.results["witness"] = wj;
        out.rows.emplace_back("witness degree", std::to_string(w.extension_degree));
        out.rows.emplace_back("witness value", capped_human(w.value));
    }
    if (o.has_threshold) {
        bool member = variety_membership(f, x, o.threshold);
        Json mj = Json::object();
        mj["threshold"] = o.threshold;
        mj["member"] = member;
        out.results["membership"] = mj;
        out.rows.emplace_back("valuation >= " + std::to_string(o.threshold), yesno(member));
    }
    return out;
}

Outcome run_group(const Options& o, int scale) {
    CtxPtr ctx = Context::make(o.p, o.m, o.precision * scale);
    Outcome out;
    out.parameters["p"] = o.p;
    out.parameters["m"] = o.m;
    out.parameters["precision"] = o.precision;
    out.parameters["generators"] = o.generators;
    out.parameters["subgroup"] = o.subgroup;
    out.parameters["op"] = o.group_op;

    GroupData G = make_group(parse_generators(o.generators));
    std::vector<std::size_t> H = subgroup_elements(G, parse_generators(o.subgroup));
    int hint = o.has_ext_hint ? o.ext_hint : std::max(1, p_part_exponent(G.order(), o.p));

    out.results["context"] = ctx_json(ctx);
    out.results["group_order"] = G.order();
    out.results["subgroup_order"] = H.size();
    out.rows.emplace_back("operation", o.group_op);
    out.rows.emplace_back("context", ctx_human(ctx));
    out.rows.emplace_back("group order", std::to_string(G.order()));
    out.rows.emplace_back("subgroup order", std::to_string(H.size()));

    if (o.group_op == "endrank") {
        Lattice L = permutation_lattice(G, H, ctx);
        DoubleCosetPartition dc = double_cosets(G, H);
        Json sizes = Json::array();
        for (const auto& c : dc.cosets) sizes.push_back(c.size());
        out.results["rank"] = L.rank();
        out.results["end_rank"] = end_rank(L);
        out.results["double_cosets"] = dc.count();
        out.results["double_coset_sizes"] = sizes;
        out.rows.emplace_back("lattice rank", std::to_string(L.rank()));
        out.rows.emplace_back("End rank", std::to_string(end_rank(L)));
        out.rows.emplace_back("double cosets", std::to_string(dc.count()));
    } else if (o.group_op == "rigid") {
        Lattice L = permutation_lattice(G, H, ctx);
        RigidityReport rep = end_reduction(L);
        std::vector<int> ext = ext1_invariants(L, L, hint);
        out.results["rank"] = L.rank();
        out.results["end_rank"] = rep.end_rank;
        out.results["residue_end_dim"] = rep.residue_end_dim;
        out.results["surjective"] = rep.surjective;
        out.results["rigid"] = rep.surjective;
        out.results["ext1"] = ext;
        out.rows.emplace_back("lattice rank", std::to_string(L.rank()));
        out.rows.emplace_back("End rank", std::to_string(rep.end_rank));
        out.rows.emplace_back("residue End dim", std::to_string(rep.residue_end_dim));
        out.rows.emplace_back("rigid", yesno(rep.surjective));
        out.rows.emplace_back("Ext^1(L, L)", ext_human(ext));
    } else if (o.group_op == "hh1") {
        OrderPtr lam = group_order(G, ctx);
        EnvelopingOrder env = enveloping_order(lam);
        bool vanishes = is_rigid(env.diagonal);
        out.results["algebra_dimension"] = lam->dim();
        out.results["enveloping_dimension"] = env.env->dim();
        out.results["hh1_vanishes"] = vanishes;
        out.rows.emplace_back("algebra dimension", std::to_string(lam->dim()));
        out.rows.emplace_back("enveloping dimension", std::to_string(env.env->dim()));
        out.rows.emplace_back("outer derivations vanish", yesno(vanishes));
    } else { // census
        out.parameters["max_colength"] = o.max_colength;
        out.parameters["seed"] = o.seed;
        Lattice L = permutation_lattice(G, H, ctx);
        CensusReport rep = census_rigid(L, o.max_colength, hint, o.seed);
        out.results["rank"] = L.rank();
        out.results["census"] = jparse(encode_census(rep, o.max_colength));
        out.rows.emplace_back("lattice rank", std::to_string(L.rank()));
        census_rows(out, rep, o.max_colength);
    }
    if (o.group_op == "rigid" || o.group_op == "census") out.parameters["ext_hint"] = hint;
    return out;
}

void print_rows(const std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [key, value] : rows) {
        std::cout << "  " << key;
        for (std::size_t i = key.size(); i < 24; ++i) std::cout << ' ';
        std::cout << ' ' << value << "\n";
    }
}

int execute(const std::string& command, const Options& o,
            const std::function<Outcome(int)>& compute) {
    auto t0 = std::chrono::steady_clock::now();
    int retries = 0;
    Outcome out;
    try {
        try {
            out = compute(1);
        } catch (const PrecisionExhausted& e) {
            std::cout << "note: precision exhausted (" << e.what()
                      << "); retrying once at doubled precision\n";
            retries = 1;
            out = compute(2);
        } catch (const StabilizationFailure& e) {
            std::cout << "note: stabilization failed (" << e.what()
                      << "); retrying once at doubled precision\n";
            retries = 1;
            out = compute(2);
        }
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: precision exhausted even after one retry: " << e.what() << "\n";
        return 3;
    } catch (const StabilizationFailure& e) {
        std::cerr << "error: stabilization failed even after one retry: " << e.what() << "\n";
        return 3;
    } catch (const GroupTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }

    auto elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);

    std::cout << command << "\n";
    print_rows(out.rows);
    if (retries)
        std::cout << "  precision retries       " << retries << "\n";
    std::cout << "  elapsed                 " << elapsed.count() / 1000.0 << " ms\n";

    Json report = Json::object();
    report["command"] = command;
    report["parameters"] = out.parameters;
    report["inputs"] = out.inputs;
    report["precision_retries"] = retries;
    report["results"] = out.results;
    std::string payload = report.dump(2) + "\n";
    if (!o.out_path.empty()) {
        write_text_file(o.out_path, payload);
        std::cout << "  report                  " << o.out_path << "\n";
    } else {
        std::cout << payload;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"exact computations with lattices over truncated Witt rings"};
    app.require_subcommand(1);
    app.add_option("--p", o.p, "prime of the working ring")->capture_default_str();
    app.add_option("--m", o.m, "residue field degree over the prime field")->capture_default_str();
    app.add_option("--precision", o.precision, "working precision N")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for randomized searches")->capture_default_str();
    app.add_option("--out", o.out_path, "write the structured JSON report to this file");

    CLI::App* witt = app.add_subcommand("witt", "digit arithmetic in Witt coordinates");
    witt->fallthrough();
    witt->add_option("--op", o.witt_op, "add | mul | teich | to-digits | from-digits")
        ->required()
        ->check(CLI::IsMember({"add", "mul", "teich", "to-digits", "from-digits"}));
    witt->add_option("--a", o.a_text, "first digit vector, JSON, e.g. [[1],[0]]");
    witt->add_option("--b", o.b_text, "second digit vector, JSON");
    witt->add_option("--x", o.x_text, "ring or residue element, JSON coefficient array");
    witt->add_option("--digits", o.digits, "digit count for results (default: N)");

    CLI::App* rigid = app.add_subcommand("rigid", "endomorphism reduction and self-extensions");
    rigid->fallthrough();
    rigid->add_option("order", o.order_file, "order file")->required();
    rigid->add_option("lattice", o.lattice_file, "lattice file")->required();
    CLI::Option* rigid_hint =
        rigid->add_option("--ext-hint", o.ext_hint, "known exponent bound for Ext^1");

    CLI::App* census = app.add_subcommand("census", "sublattice census with rigidity classes");
    census->fallthrough();
    census->add_option("order", o.order_file, "order file")->required();
    census->add_option("lattice", o.lattice_file, "lattice file")->required();
    census->add_option("--max-colength", o.max_colength, "index exponent bound")
        ->capture_default_str();
    CLI::Option* census_hint =
        census->add_option("--ext-hint", o.ext_hint, "known exponent bound for Ext^1");

    CLI::App* genval = app.add_subcommand("genval", "generic valuations at truncated Witt points");
    genval->fallthrough();
    genval->add_option("polynomial", o.poly_file, "polynomial file")->required();
    genval->add_option("--point", o.point_spec, "point file or inline digits, e.g. \"1,0;0,1\"")
        ->required();
    genval->add_option("--digits", o.digits, "digit length l of the point");
    genval->add_flag("--witness", o.want_witness, "search a lift direction achieving the value");
    CLI::Option* thr =
        genval->add_option("--threshold", o.threshold, "decide membership of {valuation >= r}");

    CLI::App* group = app.add_subcommand("group", "permutation groups and their lattices");
    group->fallthrough();
    group->add_option("--group", o.generators, "generators in cycle notation")->required();
    group->add_option("--subgroup", o.subgroup, "subgroup generators (default: trivial)");
    group->add_option("--op", o.group_op, "rigid | endrank | hh1 | census")
        ->required()
        ->check(CLI::IsMember({"rigid", "endrank", "hh1", "census"}));
    group->add_option("--max-colength", o.max_colength, "index exponent bound for census")
        ->capture_default_str();
    CLI::Option* group_hint =
        group->add_option("--ext-hint", o.ext_hint, "override the exponent bound for Ext^1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    o.has_ext_hint =
        rigid_hint->count() > 0 || census_hint->count() > 0 || group_hint->count() > 0;
    o.has_threshold = thr->count() > 0;

    if (app.got_subcommand(witt))
        return execute("witt", o, [&](int s) { return run_witt(o, s); });
    if (app.got_subcommand(rigid))
        return execute("rigid", o, [&](int s) { return run_rigid(o, s); });
    if (app.got_subcommand(census))
        return execute("census", o, [&](int s) { return run_census(o, s); });
    if (app.got_subcommand(genval))
        return execute("genval", o, [&](int s) { return run_genval(o, s); });
    return execute("group", o, [&](int s) { return run_group(o, s); });
}
