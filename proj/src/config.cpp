#include "bulkedge/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace bulkedge {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

json parse_value(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (!v.is_discarded()) return v;
    return json(text);
}

}  // namespace

json parse_cfg_text(const std::string& text) {
    json root = json::object();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "line " + std::to_string(lineno);
        // strip comments outside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw SchemaError(where, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw SchemaError(where, "empty key");
        if (val.empty()) throw SchemaError(key, "missing value");
        json* node = &root;
        std::string path;
        std::istringstream parts(key);
        std::string part;
        std::vector<std::string> segs;
        while (std::getline(parts, part, '.')) {
            if (part.empty()) throw SchemaError(key, "empty path segment");
            segs.push_back(part);
        }
        for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
            path += (path.empty() ? "" : ".") + segs[i];
            json& next = (*node)[segs[i]];
            if (next.is_null()) next = json::object();
            if (!next.is_object()) throw SchemaError(path, "is both a value and a section");
            node = &next;
        }
        if (node->contains(segs.back())) throw SchemaError(key, "duplicate key");
        (*node)[segs.back()] = parse_value(val);
    }
    return root;
}

json read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError("config", "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".json") {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw SchemaError("config", "malformed JSON in " + path);
        return j;
    }
    return parse_cfg_text(text);
}

namespace {

// Typed accessors that consume fields and report dotted paths.
class Reader {
public:
    Reader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
        if (!j_.is_object()) throw SchemaError(prefix_.empty() ? "config" : prefix_, "expected a section");
    }

    std::string path(const std::string& k) const { return prefix_.empty() ? k : prefix_ + "." + k; }
    bool has(const std::string& k) const { return j_.contains(k); }

    const json* get(const std::string& k) {
        seen_.insert(k);
        auto it = j_.find(k);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const std::string& k, double def) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_number()) throw SchemaError(path(k), "expected a number");
        double x = v->get<double>();
        if (!std::isfinite(x)) throw SchemaError(path(k), "must be finite");
        return x;
    }

    long integer(const std::string& k, long def) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_number_integer()) throw SchemaError(path(k), "expected an integer");
        return v->get<long>();
    }

    bool boolean(const std::string& k, bool def) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_boolean()) throw SchemaError(path(k), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const std::string& k, const std::string& def, std::initializer_list<const char*> allowed = {}) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_string()) throw SchemaError(path(k), "expected a string");
        std::string s = v->get<std::string>();
        if (allowed.size()) {
            bool ok = false;
            std::string list;
            for (const char* a : allowed) {
                ok = ok || s == a;
                list += std::string(list.empty() ? "" : ", ") + a;
            }
            if (!ok) throw SchemaError(path(k), "'" + s + "' is not one of {" + list + "}");
        }
        return s;
    }

    std::vector<long> int_list(const std::string& k, std::vector<long> def, std::size_t len) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_array() || v->size() != len) throw SchemaError(path(k), "expected a list of " + std::to_string(len) + " integers");
        std::vector<long> r;
        for (const auto& e : *v) {
            if (!e.is_number_integer()) throw SchemaError(path(k), "expected a list of " + std::to_string(len) + " integers");
            r.push_back(e.get<long>());
        }
        return r;
    }

    std::vector<double> num_list(const std::string& k, std::vector<double> def, std::size_t len) {
        auto v = get(k);
        if (!v) return def;
        if (!v->is_array() || v->size() != len) throw SchemaError(path(k), "expected a list of " + std::to_string(len) + " numbers");
        std::vector<double> r;
        for (const auto& e : *v) {
            if (!e.is_number()) throw SchemaError(path(k), "expected a list of " + std::to_string(len) + " numbers");
            r.push_back(e.get<double>());
        }
        return r;
    }

    Reader section(const std::string& k) {
        static const json empty = json::object();
        auto v = get(k);
        return Reader(v ? *v : empty, path(k));
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw SchemaError(path(it.key()), "unknown field");
    }

private:
    const json& j_;
    std::string prefix_;
    std::set<std::string> seen_;
};

Parity parity_from(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    return Parity::None;
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : (p == Parity::Odd ? "odd" : "none"); }

const char* edge_name(EdgeMethod m) {
    switch (m) {
        case EdgeMethod::Auto: return "auto";
        case EdgeMethod::Conductance: return "conductance";
        case EdgeMethod::Kramers: return "kramers";
        case EdgeMethod::None: return "none";
    }
    return "?";
}

void require(bool ok, const std::string& field, const std::string& msg) {
    if (!ok) throw SchemaError(field, msg);
}

}  // namespace

ExperimentConfig validate_config(const json& raw) {
    ExperimentConfig c;
    Reader top(raw, "");
    c.name = top.string("name", "experiment");
    std::string mode = top.string("mode", "", {"complex", "real"});
    long seed = top.integer("seed", 1);
    require(seed >= 0, "seed", "must be non-negative");
    c.seed = std::uint64_t(seed);

    {
        Reader m = top.section("model");
        c.model = m.string("name", "haldane", {"haldane", "kane_mele", "atomic"});
        c.params.t = m.number("t", 1.0);
        c.params.t2 = m.number("t2", 0.1);
        c.params.phi = m.number("phi", std::numbers::pi / 2);
        c.params.M = m.number("M", c.model == "atomic" ? 0.5 : 0.0);
        c.params.r = m.number("r", c.model == "kane_mele" ? 0.3 : 0.0);
        c.params.mu = m.number("mu", 0.0);
        require(c.model == "kane_mele" || c.params.r == 0.0, "model.r", "Rashba coupling only applies to kane_mele");
        m.finish();
    }
    if (mode.empty()) mode = c.model == "kane_mele" ? "real" : "complex";
    c.mode = mode == "real" ? Field::Real : Field::Complex;
    require(c.model != "kane_mele" || c.mode == Field::Real, "mode", "kane_mele carries an odd time reversal; use mode = real");
    require(c.model == "kane_mele" || c.mode == Field::Complex, "mode", c.model + " has no real structure here; use mode = complex");

    {
        Reader g = top.section("geometry");
        c.L = g.int_list("L", {24, 24}, 2);
        for (long v : c.L) require(v >= 6 && v % 2 == 0, g.path("L"), "sizes must be even and at least 6");
        c.ribbon = g.int_list("ribbon", {64, 24}, 2);
        for (long v : c.ribbon) require(v >= 6 && v % 2 == 0, g.path("ribbon"), "sizes must be even and at least 6");
        c.depth = g.integer("depth", c.ribbon[1] / 2 - 1);
        require(c.depth >= 1 && c.depth < c.ribbon[1] - 1, g.path("depth"), "must lie strictly inside the ribbon");
        g.finish();
    }
    {
        Reader d = top.section("disorder");
        std::string kind = d.string("kind", "none", {"none", "iid", "quasiperiodic"});
        c.disorder.d = 2;
        c.disorder.seed = c.seed;
        c.disorder.W = d.number("W", 0.0);
        c.disorder.lambda = d.number("lambda", 0.0);
        c.disorder.samples = int(d.integer("samples", 1));
        require(c.disorder.W >= 0.0, d.path("W"), "must be non-negative");
        require(c.disorder.samples >= 1 && c.disorder.samples <= 1000, d.path("samples"), "must be in 1..1000");
        if (kind == "none") {
            c.disorder.kind = DisorderKind::Point;
            require(c.disorder.W == 0.0 && c.disorder.lambda == 0.0, d.path("kind"), "strength given without a disorder kind");
            require(c.disorder.samples == 1, d.path("samples"), "a clean model has one sample");
        } else {
            c.disorder.kind = kind == "iid" ? DisorderKind::Iid : DisorderKind::Quasiperiodic;
            c.disorder.period = {int(c.L[0]), int(c.L[1])};
            c.disorder.orbitals = 2;
        }
        d.finish();
    }
    {
        Reader s = top.section("symmetry");
        if (s.has("trs")) {
            c.declared_trs = parity_from(s.string("trs", "none", {"none", "even", "odd"}));
            c.declared_trs_set = true;
            Parity expect = c.model == "kane_mele" ? Parity::Odd : Parity::None;
            require(c.declared_trs == expect, s.path("trs"),
                    std::string("model ") + c.model + " has time reversal '" + parity_name(expect) + "'");
        }
        s.finish();
    }
    {
        Reader iv = top.section("invariants");
        c.bulk = iv.boolean("bulk", true);
        std::string e = iv.string("edge", "auto", {"auto", "conductance", "kramers", "none"});
        c.edge = e == "conductance" ? EdgeMethod::Conductance
                 : e == "kramers"   ? EdgeMethod::Kramers
                 : e == "none"      ? EdgeMethod::None
                                    : EdgeMethod::Auto;
        if (c.edge == EdgeMethod::Auto) c.edge = c.mode == Field::Real ? EdgeMethod::Kramers : EdgeMethod::Conductance;
        require(!(c.edge == EdgeMethod::Kramers && c.mode == Field::Complex), iv.path("edge"), "Kramers counting needs mode = real");
        require(!(c.edge == EdgeMethod::Conductance && c.mode == Field::Real), iv.path("edge"),
                "the conductance does not detect the Z2 class; use edge_conductance = true to report it");
        c.edge_conductance_extra = iv.boolean("edge_conductance", false);
        c.oracle = iv.boolean("oracle", true);
        c.gap_min = iv.number("gap_min", 1e-3);
        require(c.gap_min > 0.0, iv.path("gap_min"), "must be positive");
        auto w = iv.num_list("window", {-0.3, 0.3}, 2);
        c.window.a = w[0];
        c.window.b = w[1];
        require(c.window.a < c.params.mu && c.params.mu < c.window.b, iv.path("window"), "must contain model.mu");
        c.window.depth = c.depth;
        c.margin = iv.integer("margin", 12);
        require(c.margin >= 0 && 2 * c.margin < c.ribbon[0], iv.path("margin"), "must leave a non-empty window along the edge");
        c.edge_rows = iv.integer("edge_rows", -1);
        require(c.edge_rows == -1 || (c.edge_rows >= 1 && c.edge_rows <= c.depth + 1), iv.path("edge_rows"),
                "must be -1 or between 1 and depth + 1");
        c.flow_steps = int(iv.integer("flow_steps", 48));
        require(c.flow_steps >= 4, iv.path("flow_steps"), "at least 4");
        c.flow_window = iv.number("flow_window", 0.6);
        require(c.flow_window > 0.0, iv.path("flow_window"), "must be positive");
        iv.finish();
    }
    {
        Reader o = top.section("output");
        c.out_dir = o.string("dir", ".");
        o.finish();
    }
    top.finish();

    json n;
    n["name"] = c.name;
    n["mode"] = mode;
    n["seed"] = c.seed;
    n["model"] = {{"name", c.model}, {"t", c.params.t}, {"t2", c.params.t2}, {"phi", c.params.phi},
                  {"M", c.params.M}, {"r", c.params.r}, {"mu", c.params.mu}};
    n["geometry"] = {{"L", c.L}, {"ribbon", c.ribbon}, {"depth", c.depth}};
    n["disorder"] = {{"kind", c.disorder.kind == DisorderKind::Point ? "none" : to_string(c.disorder.kind)},
                     {"W", c.disorder.W}, {"lambda", c.disorder.lambda}, {"samples", c.disorder.samples}};
    n["symmetry"] = {{"trs", parity_name(c.model == "kane_mele" ? Parity::Odd : Parity::None)}};
    n["invariants"] = {{"bulk", c.bulk}, {"edge", edge_name(c.edge)}, {"edge_conductance", c.edge_conductance_extra},
                       {"oracle", c.oracle}, {"gap_min", c.gap_min}, {"window", {c.window.a, c.window.b}},
                       {"margin", c.margin}, {"edge_rows", c.edge_rows}, {"flow_steps", c.flow_steps},
                       {"flow_window", c.flow_window}};
    c.normalized = n;
    // output location does not change results and stays out of the hash
    c.hash = fnv1a64(n.dump());
    return c;
}

ExperimentConfig load_config(const std::string& path) { return validate_config(read_config_file(path)); }

}  // namespace bulkedge
