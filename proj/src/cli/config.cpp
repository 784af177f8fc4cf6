#include "fellgeom/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fellgeom::cli {

ConfigError::ConfigError(const std::string& source, int line, const std::string& path, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + (path.empty() ? "" : path + ": ") + message),
      line_(line),
      path_(path) {}

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag()) + "i";
    if (z.real() == 0.0) return im;
    return format_double(z.real()) + (z.imag() < 0.0 ? "" : "+") + im;
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last || first == last) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw) {
        if (c != ' ') s += c;
    }
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i') return {parse_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
}

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& msg) const {
        const int line = n.IsDefined() && n.Mark().line >= 0 ? n.Mark().line + 1 : 1;
        throw ConfigError(source_, line, path, msg);
    }

    void keys(const YAML::Node& n, const std::string& path, const std::set<std::string>& allowed) const {
        if (!n.IsMap()) fail(n, path, "expected a mapping");
        for (const auto& kv : n) {
            const std::string k = kv.first.as<std::string>();
            if (!allowed.count(k)) fail(kv.first, path.empty() ? k : path + "." + k, "unknown key '" + k + "'");
        }
    }

    YAML::Node require(const YAML::Node& n, const std::string& key, const std::string& path) const {
        if (!n.IsMap() || !n[key]) fail(n, path, "missing required key '" + key + "'");
        return n[key];
    }

    std::string str(const YAML::Node& n, const std::string& path) const {
        if (!n.IsScalar()) fail(n, path, "expected a scalar");
        return n.as<std::string>();
    }

    std::string choice(const YAML::Node& n, const std::string& path, const std::set<std::string>& options) const {
        const std::string v = str(n, path);
        if (!options.count(v)) {
            std::string list;
            for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
            fail(n, path, "'" + v + "' is not one of " + list);
        }
        return v;
    }

    int integer(const YAML::Node& n, const std::string& path) const {
        const std::string s = str(n, path);
        int v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail(n, path, "expected an integer, got '" + s + "'");
        return v;
    }

    double real(const YAML::Node& n, const std::string& path) const {
        try {
            return parse_double(str(n, path));
        } catch (const std::invalid_argument& e) {
            fail(n, path, e.what());
        }
    }

    Complex complex(const YAML::Node& n, const std::string& path) const {
        try {
            return parse_complex(str(n, path));
        } catch (const std::invalid_argument& e) {
            fail(n, path, e.what());
        }
    }

    bool boolean(const YAML::Node& n, const std::string& path) const {
        const std::string s = str(n, path);
        if (s == "true") return true;
        if (s == "false") return false;
        fail(n, path, "expected true or false");
    }

    int sign(const YAML::Node& n, const std::string& path) const {
        const int v = integer(n, path);
        if (v != 1 && v != -1) fail(n, path, "sign must be 1 or -1");
        return v;
    }

    YAML::Node seq(const YAML::Node& n, const std::string& path) const {
        if (!n.IsSequence()) fail(n, path, "expected a sequence");
        return n;
    }

    template <class T, class F>
    std::vector<T> list(const YAML::Node& n, const std::string& path, F item) const {
        std::vector<T> out;
        std::size_t k = 0;
        for (const auto& e : seq(n, path)) out.push_back(item(e, path + "[" + std::to_string(k++) + "]"));
        return out;
    }

    std::vector<std::vector<Complex>> matrix(const YAML::Node& n, const std::string& path) const {
        auto rows = list<std::vector<Complex>>(n, path, [&](const YAML::Node& row, const std::string& p) {
            return list<Complex>(row, p, [&](const YAML::Node& x, const std::string& q) { return complex(x, q); });
        });
        for (const auto& r : rows) {
            if (r.size() != rows.front().size()) fail(n, path, "matrix rows have different lengths");
        }
        return rows;
    }

    PairList pairs(const YAML::Node& n, const std::string& path) const {
        return list<std::pair<std::string, std::string>>(n, path, [&](const YAML::Node& e, const std::string& p) {
            if (!e.IsSequence() || e.size() != 2) fail(e, p, "expected a pair [a, b]");
            return std::make_pair(str(e[0], p + "[0]"), str(e[1], p + "[1]"));
        });
    }

private:
    std::string source_;
};

void check_pairs(const Reader& rd, const YAML::Node& n, const std::string& path, const PairList& pairs,
                 const std::set<std::string>& ids) {
    std::set<std::string> seen;
    for (const auto& [a, b] : pairs) {
        for (const std::string& x : {a, b}) {
            if (!ids.count(x)) rd.fail(n, path, "unknown object '" + x + "'");
        }
        if (seen.count(a) || (a != b && seen.count(b))) rd.fail(n, path, "object paired twice (not an involution)");
        seen.insert(a);
        seen.insert(b);
    }
}

}  // namespace

GeometryConfig parse_config(const std::string& text, const std::string& source) {
    Reader rd(source);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(source, e.mark.line >= 0 ? e.mark.line + 1 : 1, "", e.msg);
    }
    GeometryConfig c;
    if (!root.IsMap()) rd.fail(root, "", "missing required key 'name'");
    rd.keys(root, "", {"name", "description", "signature", "bundle", "embedding", "default_sector", "loops", "objects",
                       "pairing", "real_structure", "grading", "algebra", "faithful", "representation", "states", "dirac",
                       "configuration_space", "corruption"});
    c.name = rd.str(rd.require(root, "name", ""), "name");
    const YAML::Node objects = rd.require(root, "objects", "");
    if (root["description"]) c.description = rd.str(root["description"], "description");
    if (root["signature"]) c.signature = rd.choice(root["signature"], "signature", {"euclidean", "lorentzian"});
    if (root["bundle"]) c.bundle = rd.choice(root["bundle"], "bundle", {"plain", "product"});
    if (root["embedding"]) c.embedding = rd.choice(root["embedding"], "embedding", {"diagonal", "column"});
    if (root["default_sector"]) c.default_sector = rd.str(root["default_sector"], "default_sector");
    if (root["loops"]) c.loops = rd.choice(root["loops"], "loops", {"orbits", "objects", "whole"});
    if (root["faithful"]) c.faithful = rd.boolean(root["faithful"], "faithful");

    std::set<std::string> ids;
    c.objects = rd.list<ObjectConfig>(objects, "objects", [&](const YAML::Node& n, const std::string& p) {
        rd.keys(n, p, {"id", "fiber", "factor", "signs", "sector", "chirality", "particle", "labels", "basis_sectors"});
        ObjectConfig o;
        o.id = rd.str(rd.require(n, "id", p), p + ".id");
        if (o.id.empty()) rd.fail(n, p + ".id", "object id must not be empty");
        if (!ids.insert(o.id).second) rd.fail(n["id"], p + ".id", "duplicate object id '" + o.id + "'");
        o.fiber = rd.integer(rd.require(n, "fiber", p), p + ".fiber");
        if (o.fiber < 1) rd.fail(n["fiber"], p + ".fiber", "fiber dimension must be at least 1");
        if (n["factor"]) o.factor = rd.choice(n["factor"], p + ".factor", {"full", "scalar"});
        if (n["signs"]) {
            o.signs = rd.list<int>(n["signs"], p + ".signs", [&](const YAML::Node& x, const std::string& q) { return rd.sign(x, q); });
        }
        if (n["sector"]) o.sector = rd.str(n["sector"], p + ".sector");
        if (n["chirality"]) o.chirality = rd.choice(n["chirality"], p + ".chirality", {"left", "right", "none"});
        if (n["particle"]) o.particle = rd.boolean(n["particle"], p + ".particle");
        auto strings = [&](const YAML::Node& x, const std::string& q) { return rd.str(x, q); };
        if (n["labels"]) o.labels = rd.list<std::string>(n["labels"], p + ".labels", strings);
        if (n["basis_sectors"]) o.basis_sectors = rd.list<std::string>(n["basis_sectors"], p + ".basis_sectors", strings);
        return o;
    });
    if (c.objects.empty()) rd.fail(objects, "objects", "at least one object is required");

    if (root["pairing"]) {
        c.pairing = rd.pairs(root["pairing"], "pairing");
        check_pairs(rd, root["pairing"], "pairing", c.pairing, ids);
    }
    if (c.bundle == "product") {
        if (!root["pairing"]) rd.fail(root, "", "missing required key 'pairing' (product bundle)");
        for (std::size_t k = 0; k < c.objects.size(); ++k) {
            const auto& o = c.objects[k];
            const std::string p = "objects[" + std::to_string(k) + "]";
            if (o.factor.empty()) rd.fail(objects[k], p, "product bundle objects need a factor (full or scalar)");
            if (o.factor == "scalar" && o.signs.empty()) rd.fail(objects[k], p, "scalar factor needs signs");
        }
    }

    if (const YAML::Node n = root["real_structure"]) {
        rd.keys(n, "real_structure", {"kind", "swaps", "sign_j2", "sign_dj"});
        c.real_structure.kind = rd.choice(rd.require(n, "kind", "real_structure"), "real_structure.kind",
                                          {"none", "product", "conjugation", "permutation"});
        if (n["swaps"]) {
            c.real_structure.swaps = rd.list<std::pair<int, int>>(n["swaps"], "real_structure.swaps", [&](const YAML::Node& e, const std::string& p) {
                if (!e.IsSequence() || e.size() != 2) rd.fail(e, p, "expected a pair [i, j]");
                return std::make_pair(rd.integer(e[0], p + "[0]"), rd.integer(e[1], p + "[1]"));
            });
            std::set<int> seen;
            for (const auto& [a, b] : c.real_structure.swaps) {
                if (a < 0 || b < 0) rd.fail(n["swaps"], "real_structure.swaps", "negative basis index");
                if (seen.count(a) || (a != b && seen.count(b))) {
                    rd.fail(n["swaps"], "real_structure.swaps", "permutation is not involutive");
                }
                seen.insert(a);
                seen.insert(b);
            }
        }
        if (n["sign_j2"]) c.real_structure.sign_j2 = rd.sign(n["sign_j2"], "real_structure.sign_j2");
        if (n["sign_dj"]) c.real_structure.sign_dj = rd.sign(n["sign_dj"], "real_structure.sign_dj");
        if (c.real_structure.kind == "product" && c.bundle != "product") {
            rd.fail(n, "real_structure.kind", "'product' needs bundle: product");
        }
    }

    if (const YAML::Node n = root["grading"]) {
        if (n.IsScalar()) {
            c.grading.kind = rd.choice(n, "grading", {"none", "signature"});
        } else {
            c.grading.kind = "signs";
            c.grading.signs = rd.list<int>(n, "grading", [&](const YAML::Node& x, const std::string& q) { return rd.sign(x, q); });
        }
    }

    if (const YAML::Node n = root["algebra"]) {
        c.algebra = rd.list<SummandConfig>(n, "algebra", [&](const YAML::Node& e, const std::string& p) {
            rd.keys(e, p, {"size", "label"});
            SummandConfig s;
            s.size = rd.integer(rd.require(e, "size", p), p + ".size");
            if (s.size < 1) rd.fail(e["size"], p + ".size", "summand size must be at least 1");
            if (e["label"]) s.label = rd.str(e["label"], p + ".label");
            return s;
        });
    }
    if (const YAML::Node n = root["representation"]) {
        if (c.algebra.empty()) rd.fail(n, "representation", "representation needs an algebra");
        c.representation = rd.list<PlacementConfig>(n, "representation", [&](const YAML::Node& e, const std::string& p) {
            rd.keys(e, p, {"summand", "object", "copies", "conjugate"});
            PlacementConfig pl;
            pl.summand = rd.integer(rd.require(e, "summand", p), p + ".summand");
            if (pl.summand < 0 || pl.summand >= static_cast<int>(c.algebra.size())) {
                rd.fail(e["summand"], p + ".summand", "no such summand");
            }
            if (e["object"]) {
                pl.object = rd.str(e["object"], p + ".object");
                if (!ids.count(pl.object)) rd.fail(e["object"], p + ".object", "unknown object '" + pl.object + "'");
                if (c.bundle != "product") rd.fail(e["object"], p + ".object", "object placements need bundle: product");
            }
            if (e["copies"]) {
                pl.copies = rd.list<std::vector<int>>(e["copies"], p + ".copies", [&](const YAML::Node& r, const std::string& q) {
                    return rd.list<int>(r, q, [&](const YAML::Node& x, const std::string& s) { return rd.integer(x, s); });
                });
            }
            if (pl.object.empty() == pl.copies.empty()) rd.fail(e, p, "give exactly one of object or copies");
            if (e["conjugate"]) pl.conjugate = rd.boolean(e["conjugate"], p + ".conjugate");
            return pl;
        });
    }

    if (const YAML::Node n = root["states"]) {
        c.states = rd.list<StateConfig>(n, "states", [&](const YAML::Node& e, const std::string& p) {
            rd.keys(e, p, {"basis", "vector", "diagonal", "mixed"});
            if (e.size() != 1) rd.fail(e, p, "a state has exactly one of basis, vector, diagonal, mixed");
            StateConfig s;
            if (e["basis"]) {
                s.kind = "basis";
                s.index = rd.integer(e["basis"], p + ".basis");
            } else if (e["vector"]) {
                s.kind = "vector";
                s.vector = rd.list<Complex>(e["vector"], p + ".vector", [&](const YAML::Node& x, const std::string& q) { return rd.complex(x, q); });
            } else if (e["diagonal"]) {
                s.kind = "diagonal";
                s.diagonal = rd.list<double>(e["diagonal"], p + ".diagonal", [&](const YAML::Node& x, const std::string& q) { return rd.real(x, q); });
            } else {
                if (!rd.boolean(e["mixed"], p + ".mixed")) rd.fail(e, p, "mixed must be true");
                s.kind = "mixed";
            }
            return s;
        });
    }

    if (const YAML::Node n = root["dirac"]) {
        rd.keys(n, "dirac", {"kind", "pattern", "first_order", "odd", "blocks", "matrix"});
        DiracConfig& d = c.dirac;
        d.kind = rd.choice(rd.require(n, "kind", "dirac"), "dirac.kind", {"none", "mass_pattern", "pattern", "section", "matrix"});
        if (n["pattern"]) {
            d.pattern = rd.pairs(n["pattern"], "dirac.pattern");
            check_pairs(rd, n["pattern"], "dirac.pattern", d.pattern, ids);
        }
        if (n["first_order"]) d.first_order = rd.boolean(n["first_order"], "dirac.first_order");
        if (n["odd"]) d.odd = rd.boolean(n["odd"], "dirac.odd");
        if (n["blocks"]) {
            d.blocks = rd.list<SectionBlockConfig>(n["blocks"], "dirac.blocks", [&](const YAML::Node& e, const std::string& p) {
                rd.keys(e, p, {"from", "to", "value"});
                SectionBlockConfig b;
                b.from = rd.str(rd.require(e, "from", p), p + ".from");
                b.to = rd.str(rd.require(e, "to", p), p + ".to");
                for (const std::string& x : {b.from, b.to}) {
                    if (!ids.count(x)) rd.fail(e, p, "unknown object '" + x + "'");
                }
                b.value = rd.matrix(rd.require(e, "value", p), p + ".value");
                return b;
            });
        }
        if (n["matrix"]) d.matrix = rd.matrix(n["matrix"], "dirac.matrix");
        if (d.kind == "pattern" && !n["pattern"]) rd.fail(n, "dirac", "missing required key 'pattern'");
        if (d.kind == "section" && !n["blocks"]) rd.fail(n, "dirac", "missing required key 'blocks'");
        if (d.kind == "matrix" && !n["matrix"]) rd.fail(n, "dirac", "missing required key 'matrix'");
    }

    if (const YAML::Node n = root["configuration_space"]) {
        rd.keys(n, "configuration_space", {"pattern", "field"});
        c.configuration_space.present = true;
        if (n["pattern"]) {
            c.configuration_space.pattern = rd.pairs(n["pattern"], "configuration_space.pattern");
            check_pairs(rd, n["pattern"], "configuration_space.pattern", c.configuration_space.pattern, ids);
        }
        if (n["field"]) c.configuration_space.field = rd.choice(n["field"], "configuration_space.field", {"real", "complex"});
    }

    if (const YAML::Node n = root["corruption"]) {
        rd.keys(n, "corruption", {"kind", "factor"});
        c.corruption.kind = rd.choice(rd.require(n, "kind", "corruption"), "corruption.kind",
                                      {"none", "transpose_involution", "scaled_involution", "scaled_product", "flip_dj_sign"});
        if (n["factor"]) c.corruption.factor = rd.real(n["factor"], "corruption.factor");
    }
    return c;
}

namespace {

void emit_pairs(YAML::Emitter& out, const PairList& pairs) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& [a, b] : pairs) out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
    out << YAML::EndSeq;
}

void emit_matrix(YAML::Emitter& out, const std::vector<std::vector<Complex>>& m) {
    out << YAML::BeginSeq;
    for (const auto& row : m) {
        out << YAML::Flow << YAML::BeginSeq;
        for (Complex z : row) out << format_complex(z);
        out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
}

template <class T>
void emit_flow(YAML::Emitter& out, const std::vector<T>& v) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& x : v) out << x;
    out << YAML::EndSeq;
}

}  // namespace

std::string emit_config(const GeometryConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << c.name;
    if (!c.description.empty()) out << YAML::Key << "description" << YAML::Value << c.description;
    out << YAML::Key << "signature" << YAML::Value << c.signature;
    out << YAML::Key << "bundle" << YAML::Value << c.bundle;
    out << YAML::Key << "embedding" << YAML::Value << c.embedding;
    out << YAML::Key << "default_sector" << YAML::Value << c.default_sector;
    out << YAML::Key << "loops" << YAML::Value << c.loops;
    out << YAML::Key << "faithful" << YAML::Value << (c.faithful ? "true" : "false");

    out << YAML::Key << "objects" << YAML::Value << YAML::BeginSeq;
    for (const auto& o : c.objects) {
        out << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << o.id;
        out << YAML::Key << "fiber" << YAML::Value << o.fiber;
        if (!o.factor.empty()) out << YAML::Key << "factor" << YAML::Value << o.factor;
        if (!o.signs.empty()) {
            out << YAML::Key << "signs" << YAML::Value;
            emit_flow(out, o.signs);
        }
        if (!o.sector.empty()) out << YAML::Key << "sector" << YAML::Value << o.sector;
        out << YAML::Key << "chirality" << YAML::Value << o.chirality;
        out << YAML::Key << "particle" << YAML::Value << (o.particle ? "true" : "false");
        if (!o.labels.empty()) {
            out << YAML::Key << "labels" << YAML::Value;
            emit_flow(out, o.labels);
        }
        if (!o.basis_sectors.empty()) {
            out << YAML::Key << "basis_sectors" << YAML::Value;
            emit_flow(out, o.basis_sectors);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    if (!c.pairing.empty()) {
        out << YAML::Key << "pairing" << YAML::Value;
        emit_pairs(out, c.pairing);
    }

    out << YAML::Key << "real_structure" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << c.real_structure.kind;
    if (!c.real_structure.swaps.empty()) {
        out << YAML::Key << "swaps" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& [a, b] : c.real_structure.swaps) out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
        out << YAML::EndSeq;
    }
    out << YAML::Key << "sign_j2" << YAML::Value << c.real_structure.sign_j2;
    out << YAML::Key << "sign_dj" << YAML::Value << c.real_structure.sign_dj;
    out << YAML::EndMap;

    out << YAML::Key << "grading" << YAML::Value;
    if (c.grading.kind == "signs") {
        emit_flow(out, c.grading.signs);
    } else {
        out << c.grading.kind;
    }

    if (!c.algebra.empty()) {
        out << YAML::Key << "algebra" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : c.algebra) {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "size" << YAML::Value << s.size;
            if (!s.label.empty()) out << YAML::Key << "label" << YAML::Value << s.label;
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    if (!c.representation.empty()) {
        out << YAML::Key << "representation" << YAML::Value << YAML::BeginSeq;
        for (const auto& p : c.representation) {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "summand" << YAML::Value << p.summand;
            if (!p.object.empty()) out << YAML::Key << "object" << YAML::Value << p.object;
            if (!p.copies.empty()) {
                out << YAML::Key << "copies" << YAML::Value << YAML::Flow << YAML::BeginSeq;
                for (const auto& copy : p.copies) emit_flow(out, copy);
                out << YAML::EndSeq;
            }
            out << YAML::Key << "conjugate" << YAML::Value << (p.conjugate ? "true" : "false");
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    if (!c.states.empty()) {
        out << YAML::Key << "states" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : c.states) {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << s.kind << YAML::Value;
            if (s.kind == "basis") {
                out << s.index;
            } else if (s.kind == "vector") {
                out << YAML::Flow << YAML::BeginSeq;
                for (Complex z : s.vector) out << format_complex(z);
                out << YAML::EndSeq;
            } else if (s.kind == "diagonal") {
                out << YAML::Flow << YAML::BeginSeq;
                for (double x : s.diagonal) out << format_double(x);
                out << YAML::EndSeq;
            } else {
                out << "true";
            }
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    out << YAML::Key << "dirac" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << c.dirac.kind;
    if (!c.dirac.pattern.empty() || c.dirac.kind == "pattern") {
        out << YAML::Key << "pattern" << YAML::Value;
        emit_pairs(out, c.dirac.pattern);
    }
    out << YAML::Key << "first_order" << YAML::Value << (c.dirac.first_order ? "true" : "false");
    out << YAML::Key << "odd" << YAML::Value << (c.dirac.odd ? "true" : "false");
    if (!c.dirac.blocks.empty()) {
        out << YAML::Key << "blocks" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : c.dirac.blocks) {
            out << YAML::BeginMap << YAML::Key << "from" << YAML::Value << b.from << YAML::Key << "to" << YAML::Value << b.to;
            out << YAML::Key << "value" << YAML::Value;
            emit_matrix(out, b.value);
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    if (!c.dirac.matrix.empty()) {
        out << YAML::Key << "matrix" << YAML::Value;
        emit_matrix(out, c.dirac.matrix);
    }
    out << YAML::EndMap;

    if (c.configuration_space.present) {
        out << YAML::Key << "configuration_space" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "pattern" << YAML::Value;
        emit_pairs(out, c.configuration_space.pattern);
        out << YAML::Key << "field" << YAML::Value << c.configuration_space.field;
        out << YAML::EndMap;
    }
    if (c.corruption.kind != "none") {
        out << YAML::Key << "corruption" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "kind" << YAML::Value << c.corruption.kind;
        out << YAML::Key << "factor" << YAML::Value << format_double(c.corruption.factor);
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string resolve_config_path(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path)) return name_or_path;
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("FELLGEOM_CONFIG_DIR")) dirs.emplace_back(env);
#ifdef FELLGEOM_CONFIG_DIR
    dirs.emplace_back(FELLGEOM_CONFIG_DIR);
#endif
    for (const auto& d : dirs) {
        for (const std::string& candidate : {name_or_path, name_or_path + ".yaml"}) {
            const fs::path p = fs::path(d) / candidate;
            if (fs::exists(p) && fs::is_regular_file(p)) return p.string();
        }
    }
    throw std::invalid_argument("no config file or bundled config named '" + name_or_path + "'");
}

GeometryConfig load_config(const std::string& name_or_path) {
    const std::string path = resolve_config_path(name_or_path);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace fellgeom::cli
