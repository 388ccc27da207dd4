#include "folia/sceneio.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace folia {

namespace {

struct TomlValue {
    enum class Kind { String, Number, Array } kind = Kind::String;
    std::string str;
    double num = 0.0;
    std::vector<TomlValue> items;
    int line = 0;
};

struct TomlDoc {
    // flattened "table.key" -> value
    std::map<std::string, TomlValue> entries;
};

bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct TomlParser {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg) { throw SceneIoError(line, msg); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }

    void skip_inline_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    void skip_ws_comments() {
        for (;;) {
            skip_inline_ws();
            if (peek() == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (peek() == '\n' || peek() == '\r') {
                advance();
            } else {
                return;
            }
        }
    }

    void end_of_line() {
        skip_inline_ws();
        if (peek() == '#')
            while (pos < text.size() && text[pos] != '\n') ++pos;
        if (pos < text.size() && text[pos] != '\n' && text[pos] != '\r')
            fail("unexpected trailing content");
    }

    std::string bare_key() {
        size_t start = pos;
        while (pos < text.size() && is_bare_key_char(text[pos])) ++pos;
        if (pos == start) fail("expected a key");
        return text.substr(start, pos - start);
    }

    std::string quoted_string() {
        if (peek() != '"') fail("expected '\"'");
        advance();
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            if (text[pos] == '\n') fail("unterminated string");
            if (text[pos] == '\\') {
                advance();
                switch (peek()) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail("unsupported escape in string");
                }
                advance();
            } else {
                out += text[pos];
                advance();
            }
        }
        if (peek() != '"') fail("unterminated string");
        advance();
        return out;
    }

    TomlValue value() {
        skip_inline_ws();
        TomlValue v;
        v.line = line;
        char c = peek();
        if (c == '"') {
            v.kind = TomlValue::Kind::String;
            v.str = quoted_string();
            return v;
        }
        if (c == '[') {
            advance();
            v.kind = TomlValue::Kind::Array;
            skip_ws_comments();
            if (peek() == ']') {
                advance();
                return v;
            }
            for (;;) {
                v.items.push_back(value());
                skip_ws_comments();
                if (peek() == ',') {
                    advance();
                    skip_ws_comments();
                    if (peek() == ']') break;  // trailing comma
                    continue;
                }
                break;
            }
            if (peek() != ']') fail("expected ']' in array");
            advance();
            return v;
        }
        // number
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '+' ||
                text[pos] == '-' || text[pos] == '.'))
            ++pos;
        if (pos == start) fail("expected a value");
        std::string tok = text.substr(start, pos - start);
        char* end = nullptr;
        v.kind = TomlValue::Kind::Number;
        v.num = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) fail("malformed number '" + tok + "'");
        return v;
    }

    TomlDoc parse() {
        TomlDoc doc;
        std::string table;
        for (;;) {
            skip_ws_comments();
            if (pos >= text.size()) return doc;
            if (peek() == '[') {
                advance();
                std::string name = bare_key();
                while (peek() == '.') {
                    advance();
                    name += "." + bare_key();
                }
                if (peek() != ']') fail("expected ']' after table name");
                advance();
                end_of_line();
                table = name;
                continue;
            }
            std::string key = bare_key();
            skip_inline_ws();
            if (peek() != '=') fail("expected '=' after key '" + key + "'");
            advance();
            TomlValue v = value();
            end_of_line();
            std::string full = table.empty() ? key : table + "." + key;
            if (doc.entries.count(full)) throw SceneIoError(v.line, "duplicate key '" + full + "'");
            doc.entries.emplace(std::move(full), std::move(v));
        }
    }
};

const TomlValue& expect(const TomlDoc& doc, const std::string& key) {
    auto it = doc.entries.find(key);
    if (it == doc.entries.end()) throw SceneIoError(0, "missing required key '" + key + "'");
    return it->second;
}

std::vector<std::string> string_array(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::Array) throw SceneIoError(v.line, "'" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : v.items) {
        if (item.kind != TomlValue::Kind::String)
            throw SceneIoError(item.line, "'" + key + "' must contain strings");
        out.push_back(item.str);
    }
    return out;
}

std::vector<double> number_array(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::Array) throw SceneIoError(v.line, "'" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& item : v.items) {
        if (item.kind != TomlValue::Kind::Number)
            throw SceneIoError(item.line, "'" + key + "' must contain numbers");
        out.push_back(item.num);
    }
    return out;
}

ExprPtr parse_or_rethrow(const std::string& text, const std::array<std::string, 4>& coords,
                         const std::vector<std::string>& params, int line,
                         const std::string& key) {
    try {
        return parse(text, coords, params);
    } catch (const ParseError& err) {
        throw SceneIoError(line, "in '" + key + "': " + err.what());
    }
}

}  // namespace

SceneFile parse_scene_text(const std::string& text) {
    TomlParser parser{text};
    TomlDoc doc = parser.parse();

    static const std::set<std::string> known_fixed = {
        "name",          "chart.coords",   "chart.jspec", "chart.metric", "chart.form",
        "chart.jcomp",   "distribution.v", "potential.phi", "region.min", "region.max",
        "region.keep",   "tolerances.algebraic", "tolerances.derived",
    };
    for (const auto& [key, v] : doc.entries) {
        if (known_fixed.count(key)) continue;
        if (key.rfind("chart.params.", 0) == 0 && key.size() > 13) continue;
        throw SceneIoError(v.line, "unknown key '" + key + "'");
    }

    SceneFile out;
    Scene& s = out.scene;
    if (auto it = doc.entries.find("name"); it != doc.entries.end()) {
        if (it->second.kind != TomlValue::Kind::String)
            throw SceneIoError(it->second.line, "'name' must be a string");
        s.name = it->second.str;
    } else {
        s.name = "scene";
    }

    // chart
    const TomlValue& coords_v = expect(doc, "chart.coords");
    std::vector<std::string> coords = string_array(coords_v, "chart.coords");
    if (coords.size() != 4) throw SceneIoError(coords_v.line, "'chart.coords' needs 4 names");
    for (int i = 0; i < 4; ++i) {
        if (coords[i].empty() || std::isdigit(static_cast<unsigned char>(coords[i][0])))
            throw SceneIoError(coords_v.line, "invalid coordinate name '" + coords[i] + "'");
        s.chart.coords[i] = coords[i];
        for (int j = 0; j < i; ++j)
            if (coords[i] == coords[j])
                throw SceneIoError(coords_v.line, "repeated coordinate name '" + coords[i] + "'");
    }

    for (const auto& [key, v] : doc.entries) {
        if (key.rfind("chart.params.", 0) != 0) continue;
        if (v.kind != TomlValue::Kind::Number)
            throw SceneIoError(v.line, "parameter '" + key + "' must be a number");
        s.chart.params[key.substr(13)] = v.num;
    }
    std::vector<std::string> pnames = s.chart.param_names();

    const TomlValue& jspec_v = expect(doc, "chart.jspec");
    if (jspec_v.kind != TomlValue::Kind::String)
        throw SceneIoError(jspec_v.line, "'chart.jspec' must be a string");
    if (jspec_v.str == "standard")
        s.chart.jspec = JSpecKind::Standard;
    else if (jspec_v.str == "explicit")
        s.chart.jspec = JSpecKind::Explicit;
    else if (jspec_v.str == "from_form")
        s.chart.jspec = JSpecKind::FromForm;
    else
        throw SceneIoError(jspec_v.line,
                           "'chart.jspec' must be standard, explicit or from_form");

    const TomlValue& metric_v = expect(doc, "chart.metric");
    std::vector<std::string> metric = string_array(metric_v, "chart.metric");
    if (metric.size() != kSymSize)
        throw SceneIoError(metric_v.line, "'chart.metric' needs 10 upper-triangle components");
    for (size_t i = 0; i < metric.size(); ++i)
        s.chart.metric[i] =
            parse_or_rethrow(metric[i], s.chart.coords, pnames, metric_v.line, "chart.metric");

    if (auto it = doc.entries.find("chart.form"); it != doc.entries.end()) {
        if (s.chart.jspec != JSpecKind::FromForm)
            throw SceneIoError(it->second.line, "'chart.form' requires jspec = \"from_form\"");
        std::vector<std::string> form = string_array(it->second, "chart.form");
        if (form.size() != 6)
            throw SceneIoError(it->second.line, "'chart.form' needs 6 components (pairs 01..23)");
        for (size_t i = 0; i < 6; ++i)
            s.chart.form[i] =
                parse_or_rethrow(form[i], s.chart.coords, pnames, it->second.line, "chart.form");
    } else if (s.chart.jspec == JSpecKind::FromForm) {
        throw SceneIoError(jspec_v.line, "jspec = \"from_form\" requires 'chart.form'");
    }

    if (auto it = doc.entries.find("chart.jcomp"); it != doc.entries.end()) {
        if (s.chart.jspec != JSpecKind::Explicit)
            throw SceneIoError(it->second.line, "'chart.jcomp' requires jspec = \"explicit\"");
        std::vector<std::string> jc = string_array(it->second, "chart.jcomp");
        if (jc.size() != 16)
            throw SceneIoError(it->second.line, "'chart.jcomp' needs 16 components (row-major)");
        for (size_t i = 0; i < 16; ++i)
            s.chart.jcomp[i] =
                parse_or_rethrow(jc[i], s.chart.coords, pnames, it->second.line, "chart.jcomp");
    } else if (s.chart.jspec == JSpecKind::Explicit) {
        throw SceneIoError(jspec_v.line, "jspec = \"explicit\" requires 'chart.jcomp'");
    }

    // distribution
    const TomlValue& dist_v = expect(doc, "distribution.v");
    std::vector<std::string> dv = string_array(dist_v, "distribution.v");
    if (dv.size() != 4) throw SceneIoError(dist_v.line, "'distribution.v' needs 4 components");
    for (int i = 0; i < 4; ++i)
        s.dist.v[i] = parse_or_rethrow(dv[i], s.chart.coords, pnames, dist_v.line, "distribution.v");

    // potential (optional)
    if (auto it = doc.entries.find("potential.phi"); it != doc.entries.end()) {
        if (it->second.kind != TomlValue::Kind::String)
            throw SceneIoError(it->second.line, "'potential.phi' must be a string");
        s.potential = parse_or_rethrow(it->second.str, s.chart.coords, pnames, it->second.line,
                                       "potential.phi");
    }

    // region
    const TomlValue& min_v = expect(doc, "region.min");
    const TomlValue& max_v = expect(doc, "region.max");
    std::vector<double> lo = number_array(min_v, "region.min");
    std::vector<double> hi = number_array(max_v, "region.max");
    if (lo.size() != 4 || hi.size() != 4)
        throw SceneIoError(min_v.line, "'region.min'/'region.max' need 4 numbers");
    for (int i = 0; i < 4; ++i) {
        if (!(lo[i] < hi[i]))
            throw SceneIoError(min_v.line, "empty region: min must be strictly below max");
        s.region.lo[i] = lo[i];
        s.region.hi[i] = hi[i];
    }
    if (auto it = doc.entries.find("region.keep"); it != doc.entries.end()) {
        for (const std::string& k : string_array(it->second, "region.keep"))
            s.region.keep.push_back(
                parse_or_rethrow(k, s.chart.coords, pnames, it->second.line, "region.keep"));
    }

    // tolerances
    if (auto it = doc.entries.find("tolerances.algebraic"); it != doc.entries.end()) {
        if (it->second.kind != TomlValue::Kind::Number || it->second.num <= 0.0)
            throw SceneIoError(it->second.line, "'tolerances.algebraic' must be a positive number");
        out.tol_algebraic = it->second.num;
    }
    if (auto it = doc.entries.find("tolerances.derived"); it != doc.entries.end()) {
        if (it->second.kind != TomlValue::Kind::Number || it->second.num <= 0.0)
            throw SceneIoError(it->second.line, "'tolerances.derived' must be a positive number");
        out.tol_derived = it->second.num;
    }
    return out;
}

SceneFile load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read scene file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_text(buf.str());
}

namespace {

void write_expr_array(std::ostream& out, const std::string& key,
                      const ExprPtr* exprs, size_t n,
                      const std::array<std::string, 4>& coords) {
    out << key << " = [";
    for (size_t i = 0; i < n; ++i) {
        if (i) out << ", ";
        out << '"' << render(exprs[i], coords) << '"';
    }
    out << "]\n";
}

void write_number(std::ostream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

}  // namespace

std::string scene_to_toml(const Scene& s) {
    std::ostringstream out;
    out << "name = \"" << s.name << "\"\n\n[chart]\ncoords = [";
    for (int i = 0; i < 4; ++i) out << (i ? ", " : "") << '"' << s.chart.coords[i] << '"';
    out << "]\n";
    switch (s.chart.jspec) {
        case JSpecKind::Standard: out << "jspec = \"standard\"\n"; break;
        case JSpecKind::Explicit: out << "jspec = \"explicit\"\n"; break;
        case JSpecKind::FromForm: out << "jspec = \"from_form\"\n"; break;
    }
    write_expr_array(out, "metric", s.chart.metric.data(), s.chart.metric.size(), s.chart.coords);
    if (s.chart.jspec == JSpecKind::FromForm)
        write_expr_array(out, "form", s.chart.form.data(), s.chart.form.size(), s.chart.coords);
    if (s.chart.jspec == JSpecKind::Explicit)
        write_expr_array(out, "jcomp", s.chart.jcomp.data(), s.chart.jcomp.size(), s.chart.coords);
    if (!s.chart.params.empty()) {
        out << "\n[chart.params]\n";
        for (const auto& [k, v] : s.chart.params) {
            out << k << " = ";
            write_number(out, v);
            out << "\n";
        }
    }
    out << "\n[distribution]\n";
    write_expr_array(out, "v", s.dist.v.data(), s.dist.v.size(), s.chart.coords);
    if (s.potential) {
        out << "\n[potential]\nphi = \"" << render(s.potential, s.chart.coords) << "\"\n";
    }
    out << "\n[region]\nmin = [";
    for (int i = 0; i < 4; ++i) {
        if (i) out << ", ";
        write_number(out, s.region.lo[i]);
    }
    out << "]\nmax = [";
    for (int i = 0; i < 4; ++i) {
        if (i) out << ", ";
        write_number(out, s.region.hi[i]);
    }
    out << "]\n";
    if (!s.region.keep.empty())
        write_expr_array(out, "keep", s.region.keep.data(), s.region.keep.size(), s.chart.coords);
    return out.str();
}

}  // namespace folia
