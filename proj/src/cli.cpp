#include "ffell/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace ffell {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- parsing

struct Val {
    int line = 0, col = 0;
    bool is_num = false, is_list = false;
    long long num = 0;
    std::string ident;
    std::vector<Val> items;
};

struct LineLexer {
    const std::string& s;
    int line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw CurveFileError(msg, line, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size() || s[pos] == '#';
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of line");
        return s[pos];
    }
    Val value() {
        Val v;
        char c = peek();
        v.line = line;
        v.col = static_cast<int>(pos) + 1;
        if (c == '[') {
            ++pos;
            v.is_list = true;
            if (peek() == ']') {
                ++pos;
                return v;
            }
            for (;;) {
                v.items.push_back(value());
                char d = peek();
                ++pos;
                if (d == ']') return v;
                if (d != ',') fail("expected ',' or ']'");
            }
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            v.is_num = true;
            bool neg = c == '-';
            if (neg) ++pos;
            if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') fail("expected a digit");
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
                v.num = v.num * 10 + (s[pos++] - '0');
            if (neg) v.num = -v.num;
            return v;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            while (pos < s.size() &&
                   ((s[pos] >= 'a' && s[pos] <= 'z') || (s[pos] >= 'A' && s[pos] <= 'Z') ||
                    (s[pos] >= '0' && s[pos] <= '9') || s[pos] == '_'))
                v.ident.push_back(s[pos++]);
            return v;
        }
        fail("unexpected character");
    }
};

Elem decode_elem(const Val& v, long long p, int m) {
    if (m == 1) {
        if (!v.is_num) throw CurveFileError("expected an integer field element", v.line, v.col);
        if (v.num < 0 || v.num >= p)
            throw CurveFileError("field element out of range [0, p)", v.line, v.col);
        return static_cast<Elem>(v.num);
    }
    if (!v.is_list)
        throw CurveFileError("expected a base-p digit list for an extension field element",
                             v.line, v.col);
    if (static_cast<int>(v.items.size()) > m)
        throw CurveFileError("digit list longer than the extension degree", v.line, v.col);
    Elem e = 0, pw = 1;
    for (const Val& d : v.items) {
        if (!d.is_num || d.num < 0 || d.num >= p)
            throw CurveFileError("digit out of range [0, p)", d.line, d.col);
        e += static_cast<Elem>(d.num) * pw;
        pw *= static_cast<Elem>(p);
    }
    return e;
}

Poly decode_poly(const Val& v, const Field* F, long long p, int m) {
    if (!v.is_list) throw CurveFileError("expected a coefficient list", v.line, v.col);
    std::vector<Elem> cf;
    cf.reserve(v.items.size());
    for (const Val& it : v.items) cf.push_back(decode_elem(it, p, m));
    return Poly(F, std::move(cf));
}

}  // namespace

CurveSpec parse_curve_file(const std::string& text) {
    std::map<std::string, Val> kv;
    std::istringstream in(text);
    std::string lnstr;
    int lineno = 0;
    while (std::getline(in, lnstr)) {
        ++lineno;
        if (!lnstr.empty() && lnstr.back() == '\r') lnstr.pop_back();
        LineLexer lex{lnstr, lineno};
        if (lex.done()) continue;
        std::string key;
        while (lex.pos < lnstr.size() &&
               ((lnstr[lex.pos] >= 'a' && lnstr[lex.pos] <= 'z') || lnstr[lex.pos] == '_'))
            key.push_back(lnstr[lex.pos++]);
        int keycol = static_cast<int>(lex.pos - key.size()) + 1;
        if (key.empty()) lex.fail("expected a key");
        if (lex.peek() != '=') lex.fail("expected '=' after key '" + key + "'");
        ++lex.pos;
        Val v = lex.value();
        if (!lex.done()) lex.fail("trailing characters after value");
        static const char* known[] = {"p", "m", "model", "h", "f", "c", "genus", "infinity"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw CurveFileError("unknown key '" + key + "'", lineno, keycol);
        if (kv.count(key)) throw CurveFileError("duplicate key '" + key + "'", lineno, keycol);
        kv.emplace(key, std::move(v));
    }

    auto need = [&](const std::string& k) -> const Val& {
        auto it = kv.find(k);
        if (it == kv.end()) throw CurveFileError("missing key '" + k + "'", lineno + 1, 1);
        return it->second;
    };
    auto num_of = [&](const std::string& k, long long lo, long long hi) {
        const Val& v = need(k);
        if (!v.is_num || v.num < lo || v.num > hi)
            throw CurveFileError("key '" + k + "' needs an integer in [" + std::to_string(lo) +
                                     ", " + std::to_string(hi) + "]",
                                 v.line, v.col);
        return v.num;
    };

    long long p = num_of("p", 2, 1000);
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) {
            const Val& v = need("p");
            throw CurveFileError("p must be prime", v.line, v.col);
        }
    int m = kv.count("m") ? static_cast<int>(num_of("m", 1, 10)) : 1;

    CurveSpec spec;
    spec.field = Field::prime_field(static_cast<std::uint64_t>(p));
    if (m > 1) spec.field = Field::canonical_extension(spec.field, m);
    const Field* F = spec.field.get();

    std::string model = "hyperelliptic";
    if (kv.count("model")) {
        const Val& v = kv.at("model");
        if (v.ident != "hyperelliptic" && v.ident != "plane")
            throw CurveFileError("model must be 'hyperelliptic' or 'plane'", v.line, v.col);
        model = v.ident;
    }
    spec.genus = static_cast<int>(num_of("genus", 0, 16));
    if (model == "hyperelliptic") {
        spec.kind = CurveKind::Hyperelliptic;
        spec.h = kv.count("h") ? decode_poly(kv.at("h"), F, p, m) : Poly::zero(F);
        spec.f = decode_poly(need("f"), F, p, m);
        if (kv.count("c")) {
            const Val& v = kv.at("c");
            throw CurveFileError("key 'c' only applies to plane models", v.line, v.col);
        }
    } else {
        spec.kind = CurveKind::Plane;
        const Val& cv = need("c");
        if (!cv.is_list) throw CurveFileError("key 'c' needs a list of lists", cv.line, cv.col);
        for (const Val& it : cv.items) spec.cy.push_back(decode_poly(it, F, p, m));
        for (const char* k : {"h", "f"})
            if (kv.count(k)) {
                const Val& v = kv.at(k);
                throw CurveFileError(std::string("key '") + k +
                                         "' only applies to hyperelliptic models",
                                     v.line, v.col);
            }
    }
    if (kv.count("infinity")) {
        const Val& v = kv.at("infinity");
        if (v.ident != "default")
            throw CurveFileError("only infinity=default is supported", v.line, v.col);
    }
    spec.infinity.is_default = true;
    return spec;
}

namespace {

std::string elem_str(const Field* F, Elem e) {
    if (F->deg() == 1) return std::to_string(e);
    std::string out = "[";
    Elem p = static_cast<Elem>(F->p());
    for (int i = 0; i < F->deg(); ++i) {
        if (i) out += ",";
        out += std::to_string(e % p);
        e /= p;
    }
    return out + "]";
}

std::string poly_list_str(const Poly& a) {
    std::string out = "[";
    for (int i = 0; i <= a.degree(); ++i) {
        if (i) out += ",";
        out += elem_str(a.F, a.coeff(i));
    }
    return out + "]";
}

std::string aelem_str(const AElem& u) { return poly_list_str(u.a) + ";" + poly_list_str(u.b); }

}  // namespace

std::string write_curve_file(const CurveSpec& spec) {
    std::ostringstream out;
    out << "p=" << spec.field->p() << "\n";
    out << "m=" << spec.field->deg() << "\n";
    out << "model=" << (spec.kind == CurveKind::Hyperelliptic ? "hyperelliptic" : "plane")
        << "\n";
    if (spec.kind == CurveKind::Hyperelliptic) {
        out << "h=" << poly_list_str(spec.h) << "\n";
        out << "f=" << poly_list_str(spec.f) << "\n";
    } else {
        out << "c=[";
        for (std::size_t i = 0; i < spec.cy.size(); ++i)
            out << (i ? "," : "") << poly_list_str(spec.cy[i]);
        out << "]\n";
    }
    out << "genus=" << spec.genus << "\n";
    out << "infinity=default\n";
    return out.str();
}

std::string curve_hash(const CurveSpec& spec) {
    std::string s = write_curve_file(spec);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// ---------------------------------------------------------------- cache

namespace fs = std::filesystem;

fs::path cache_dir() {
    if (const char* env = std::getenv("FFELL_CACHE_DIR")) return fs::path(env);
    const char* home = std::getenv("HOME");
    return fs::path(home ? home : ".") / ".cache" / "ffell";
}

std::optional<json> cache_load(const std::string& hash) {
    std::ifstream in(cache_dir() / (hash + ".json"));
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("schema") || j["schema"] != 1 ||
        j.value("curve_hash", "") != hash)
        return std::nullopt;
    return j;
}

void cache_store(const std::string& hash, const json& j) {
    std::error_code ec;
    fs::create_directories(cache_dir(), ec);
    if (ec) return;  // caching is best-effort
    fs::path final = cache_dir() / (hash + ".json");
    fs::path tmp = cache_dir() / (hash + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp, final, ec);
    if (ec) fs::remove(tmp, ec);
}

// ------------------------------------------------------- report assembly

std::string dec(long long v) { return std::to_string(v); }

// everything the cache stores and the lpoly/ell/kernel/census subcommands need
json base_report(const Curve& c, const std::string& hash, bool use_cache) {
    if (use_cache)
        if (auto hit = cache_load(hash)) {
            hit->erase("created");
            return *hit;
        }
    json j;
    j["schema"] = 1;
    j["curve_hash"] = hash;
    LPoly L = l_polynomial(c);
    json lp = json::array();
    for (long long a : L.a) lp.push_back(dec(a));
    j["lpoly"] = lp;
    j["h"] = dec(class_number(L));
    if (c.delta() % 2 == 1 && c.supports_class_ops()) {
        KernelInfo K = norm_kernel(c);
        EllSummary s = ell_summary(c, L, K, nullptr);
        j["ell"] = dec(s.ell);
        j["ell2"] = dec(s.ell2);
        j["r"] = dec(s.r);
        json kd = json::array();
        for (long long d : s.kernel_divisors) kd.push_back(dec(d));
        j["kernel"] = kd;
    } else {
        j["ell"] = nullptr;
        j["ell2"] = nullptr;
        j["r"] = nullptr;
        j["kernel"] = nullptr;
    }
    auto now = std::chrono::system_clock::now().time_since_epoch();
    json stored = j;
    stored["created"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    if (use_cache) cache_store(hash, stored);
    return j;
}

LPoly lpoly_from_json(const Curve& c, const json& j) {
    std::vector<long long> a;
    for (const auto& s : j.at("lpoly")) a.push_back(std::stoll(s.get<std::string>()));
    return LPoly{static_cast<long long>(c.F()->q()), std::move(a)};
}

void require_ell_fields(const Curve& c, const json& j) {
    if (!j.at("ell").is_null()) return;
    if (c.delta() % 2 == 0)
        throw DeltaParityError("delta is even: the group has no elliptic points");
    throw std::runtime_error("kernel enumeration needs an imaginary hyperelliptic model");
}

struct Ctx {
    std::string curve_path;
    bool json_out = false;
    bool no_cache = false;
    int deg_bound = 3;
    std::string s_arg, t_arg;
    std::vector<std::string> scan_q;
    int scan_genus = 1;
    std::string predicate;
    std::ostream* out = nullptr;
};

Curve load_curve(const Ctx& ctx, std::string* hash) {
    if (ctx.curve_path.empty()) throw std::runtime_error("--curve is required");
    std::ifstream in(ctx.curve_path);
    if (!in) throw std::runtime_error("cannot open curve file: " + ctx.curve_path);
    std::stringstream ss;
    ss << in.rdbuf();
    CurveSpec spec = parse_curve_file(ss.str());
    if (hash) *hash = curve_hash(spec);
    return Curve::validate(spec);
}

void emit(const Ctx& ctx, const json& j, const std::string& table) {
    if (ctx.json_out)
        *ctx.out << j.dump(2) << "\n";
    else
        *ctx.out << table;
}

int cmd_lpoly(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    json j = base_report(c, hash, !ctx.no_cache);
    LPoly L = lpoly_from_json(c, j);
    std::ostringstream t;
    t << c.describe() << "\n";
    t << "L(u) = " << L.to_string() << "\n";
    t << "h = L(1) = " << j["h"].get<std::string>() << "\n";
    t << "functional equation: " << (check_functional_equation(L) ? "ok" : "violated") << "\n";
    t << "RH: max relative deviation of |alpha| from sqrt(q) = " << rh_relative_deviation(L)
      << "\n";
    emit(ctx, j, t.str());
    return 0;
}

std::string ell_table(const Curve& c, const json& j) {
    std::ostringstream t;
    t << c.describe() << "\n";
    t << "ell = " << j["ell"].get<std::string>() << "\n";
    t << "ell2 = " << j["ell2"].get<std::string>() << "\n";
    t << "r = " << j["r"].get<std::string>() << "\n";
    t << "kernel = [";
    for (std::size_t i = 0; i < j["kernel"].size(); ++i)
        t << (i ? "," : "") << j["kernel"][i].get<std::string>();
    t << "]\n";
    return t.str();
}

int cmd_ell(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    json j = base_report(c, hash, !ctx.no_cache);
    require_ell_fields(c, j);
    emit(ctx, j, ell_table(c, j));
    return 0;
}

int cmd_kernel(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    json j = base_report(c, hash, !ctx.no_cache);
    require_ell_fields(c, j);
    std::ostringstream t;
    t << c.describe() << "\n";
    t << "norm-map kernel of order " << j["ell"].get<std::string>() << ", structure [";
    for (std::size_t i = 0; i < j["kernel"].size(); ++i)
        t << (i ? "," : "") << j["kernel"][i].get<std::string>();
    t << "]\n";
    emit(ctx, j, t.str());
    return 0;
}

int cmd_points(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    json j = base_report(c, hash, !ctx.no_cache);
    require_ell_fields(c, j);
    KernelInfo K = norm_kernel(c);
    OrbitTable T = enumerate_points(c, ctx.deg_bound, K);
    json orbits = json::array();
    std::ostringstream t;
    t << c.describe() << "\n";
    t << "deg-bound " << ctx.deg_bound << ": covered " << T.covered.size() << "/"
      << T.kernel_order << " kernel classes\n";
    for (std::size_t i = 0; i < T.covered.size(); ++i) {
        const EllipticPoint& pt = T.reps[i];
        json o;
        o["class"] = dec(static_cast<long long>(T.covered[i]));
        o["self_conjugate"] = static_cast<bool>(T.self_conjugate[i]);
        o["s"] = aelem_str(pt.s);
        o["t"] = aelem_str(pt.t);
        o["tprime"] = aelem_str(pt.tp);
        orbits.push_back(o);
        t << "  class " << T.covered[i] << (T.self_conjugate[i] ? "  self-conjugate" : "")
          << "  s=" << aelem_str(pt.s) << "  t=" << aelem_str(pt.t)
          << "  t'=" << aelem_str(pt.tp) << "\n";
    }
    j["orbits"] = orbits;
    if (!T.full_coverage) {
        emit(ctx, j, t.str());
        throw std::runtime_error("orbit classes do not cover the norm kernel at this bound");
    }
    emit(ctx, j, t.str());
    return 0;
}

AElem parse_aelem_arg(const FuncRing& A, const std::string& s, const char* name) {
    std::string pa = s, pb;
    if (auto pos = s.find(';'); pos != std::string::npos) {
        pa = s.substr(0, pos);
        pb = s.substr(pos + 1);
    }
    const Field* F = A.R.get();
    long long p = static_cast<long long>(F->p());
    int m = F->deg();
    auto one = [&](const std::string& txt) {
        if (txt.empty()) return Poly::zero(F);
        LineLexer lex{txt, 1};
        Val v = lex.value();
        if (!lex.done()) lex.fail("trailing characters");
        return decode_poly(v, F, p, m);
    };
    try {
        return AElem{one(pa), one(pb)};
    } catch (const CurveFileError& e) {
        throw std::runtime_error(std::string("bad ") + name + " argument: " + e.what());
    }
}

int cmd_stabilizer(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    c.require_class_ops();
    FuncRing A = ring_A(c), tilde = ring_tilde(c);
    AElem s = parse_aelem_arg(A, ctx.s_arg, "--s");
    AElem t = parse_aelem_arg(A, ctx.t_arg, "--t");
    auto tp = is_elliptic_pair(tilde, A, s, t);
    if (!tp) throw std::runtime_error("(s, t) is not an elliptic pair: t does not divide N(eps+s)");
    EllipticPoint pt{s, t, *tp};
    StabilizerMatrix M = stabilizer_generator(tilde, A, pt);
    long long ord = stabilizer_order(A, M);
    auto span = stabilizer_span(A, M);
    MinimalPoly mp = minimal_poly(tilde, A, pt);
    parity_check(tilde, A, pt);
    bool fixes = moebius_fixes(tilde, A, M, pt);
    json j;
    j["schema"] = 1;
    j["curve_hash"] = hash;
    j["s"] = aelem_str(s);
    j["t"] = aelem_str(t);
    j["tprime"] = aelem_str(pt.tp);
    j["m0"] = {aelem_str(M.a), aelem_str(M.b), aelem_str(M.c), aelem_str(M.d)};
    j["order"] = dec(ord);
    j["span"] = dec(static_cast<long long>(span.size()));
    j["fixes_omega"] = fixes;
    std::ostringstream tt;
    tt << c.describe() << "\n";
    tt << "elliptic point: s=" << aelem_str(s) << " t=" << aelem_str(t)
       << " t'=" << aelem_str(pt.tp) << "\n";
    tt << "M0 = [[" << aelem_str(M.a) << ", " << aelem_str(M.b) << "], [" << aelem_str(M.c)
       << ", " << aelem_str(M.d) << "]]\n";
    tt << "det(M0) = eps^(q+1); fixes omega: " << (fixes ? "yes" : "no") << "\n";
    tt << "order of M0 = " << ord << "\n";
    tt << "span size = " << span.size() << " (q^2 - 1 = " << c.F()->q() * c.F()->q() - 1
       << ")\n";
    tt << "minimal polynomial: x^2 + (" << aelem_str(mp.sigma_num) << ")/t x + ("
       << aelem_str(mp.tau_num) << ")/t, t = " << aelem_str(mp.den) << "\n";
    tt << "parity: nu(t) even, all primes of tA of even degree\n";
    emit(ctx, j, tt.str());
    return 0;
}

int cmd_census(const Ctx& ctx) {
    std::string hash;
    Curve c = load_curve(ctx, &hash);
    json j = base_report(c, hash, !ctx.no_cache);
    require_ell_fields(c, j);
    VertexCensus v = vertex_census(c);
    std::string fp = free_product_summary(c);
    json cj;
    cj["gl2_count"] = dec(v.gl2_count);
    cj["gl2_order"] = dec(v.gl2_order);
    cj["torus_count"] = dec(v.torus_count);
    cj["torus_order"] = dec(v.torus_order);
    cj["free_product"] = fp;
    j["census"] = cj;
    std::ostringstream t;
    t << c.describe() << "\n";
    t << v.gl2_count << " isolated vertices of type GL_2(F_q), stabilizer order "
      << v.gl2_order << "\n";
    t << v.torus_count << " isolated vertices of type F_{q^2}^*, stabilizer order "
      << v.torus_order << "\n";
    t << fp;
    emit(ctx, j, t.str());
    return 0;
}

FieldPtr field_of_order(long long q) {
    long long p = 0;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    int m = 0;
    long long t = q;
    while (t > 1) {
        if (t % p != 0) throw std::runtime_error("scan q must be a prime power");
        t /= p;
        ++m;
    }
    FieldPtr F = Field::prime_field(static_cast<std::uint64_t>(p));
    if (m > 1) F = Field::canonical_extension(F, m);
    return F;
}

int cmd_scan(const Ctx& ctx) {
    if (ctx.predicate.empty()) throw std::runtime_error("--predicate is required");
    json scans = json::array();
    std::ostringstream t;
    for (const std::string& qs : ctx.scan_q) {
        FieldPtr F = field_of_order(std::stoll(qs));
        ScanReport rep = scan(F, ctx.scan_genus, ctx.predicate);
        json sj;
        sj["q"] = dec(static_cast<long long>(F->q()));
        sj["genus"] = dec(ctx.scan_genus);
        sj["predicate"] = rep.predicate;
        sj["candidates"] = dec(rep.candidates);
        json ms = json::array();
        for (const ScanMatch& m : rep.matches) {
            json mj;
            mj["h"] = poly_list_str(m.h);
            mj["f"] = poly_list_str(m.f);
            json lp = json::array();
            for (long long a : m.L.a) lp.push_back(dec(a));
            mj["lpoly"] = lp;
            mj["ell"] = dec(m.summary.ell);
            mj["ell2"] = dec(m.summary.ell2);
            mj["r"] = dec(m.summary.r);
            json kd = json::array();
            for (long long d : m.summary.kernel_divisors) kd.push_back(dec(d));
            mj["kernel"] = kd;
            json cd = json::array();
            for (long long d : m.cl0_divisors) cd.push_back(dec(d));
            mj["cl0"] = cd;
            ms.push_back(mj);
        }
        sj["matches"] = ms;
        scans.push_back(sj);
        t << rep.text;
    }
    json j;
    j["schema"] = 1;
    j["scan"] = scans;
    emit(ctx, j, t.str());
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"elliptic-point invariants of Drinfeld modular groups GL2(A)"};
    app.require_subcommand(1);
    Ctx ctx;
    ctx.out = &out;

    auto add_curve_opts = [&](CLI::App* sub) {
        sub->add_option("--curve", ctx.curve_path, "curve specification file")->required();
        sub->add_flag("--json", ctx.json_out, "machine-readable JSON output");
        sub->add_flag("--no-cache", ctx.no_cache, "do not consult or write the result cache");
    };

    CLI::App* lpoly = app.add_subcommand("lpoly", "L-polynomial, class number, RH report");
    add_curve_opts(lpoly);
    CLI::App* ell = app.add_subcommand("ell", "elliptic point counts ell, ell2, r");
    add_curve_opts(ell);
    CLI::App* kernel = app.add_subcommand("kernel", "norm-map kernel structure");
    add_curve_opts(kernel);
    CLI::App* points = app.add_subcommand("points", "explicit elliptic points (s, t, t')");
    add_curve_opts(points);
    points->add_option("--deg-bound", ctx.deg_bound, "component degree bound for (s, t)")
        ->default_val(3);
    CLI::App* stab = app.add_subcommand("stabilizer", "stabilizer generator M0 and its checks");
    add_curve_opts(stab);
    stab->add_option("--s", ctx.s_arg, "s component, e.g. '[0,1]' or '[0,1];[1]'")->required();
    stab->add_option("--t", ctx.t_arg, "t component")->required();
    CLI::App* census = app.add_subcommand("census", "isolated-vertex census and free product");
    add_curve_opts(census);
    CLI::App* scan_cmd = app.add_subcommand("scan", "family sweep with a predicate");
    scan_cmd->add_option("--scan-q", ctx.scan_q, "field sizes to scan")->required()->delimiter(',');
    scan_cmd->add_option("--scan-genus", ctx.scan_genus, "genus of the family")->default_val(1);
    scan_cmd->add_option("--predicate", ctx.predicate,
                         "ell=N | ell-eq-ell2 | cl-exp-2")->required();
    scan_cmd->add_flag("--json", ctx.json_out, "machine-readable JSON output");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (lpoly->parsed()) return cmd_lpoly(ctx);
        if (ell->parsed()) return cmd_ell(ctx);
        if (kernel->parsed()) return cmd_kernel(ctx);
        if (points->parsed()) return cmd_points(ctx);
        if (stab->parsed()) return cmd_stabilizer(ctx);
        if (census->parsed()) return cmd_census(ctx);
        if (scan_cmd->parsed()) return cmd_scan(ctx);
    } catch (const DeltaParityError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_run(args, std::cout, std::cerr);
}

}  // namespace ffell
