#include "folia/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace folia {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    // make sure it stays a JSON number with a float shape
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("in") == std::string::npos)
        s += ".0";
    return s;
}

void escape_string(const std::string& s, std::ostream& out) {
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            case '\r': out << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

void dump_rec(const Json& j, std::ostream& out, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ",\n";
                first = false;
                out << pad_in;
                escape_string(it.key(), out);
                out << ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out << "\n" << pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out << ",\n";
                first = false;
                out << pad_in;
                dump_rec(el, out, indent, depth + 1);
            }
            out << "\n" << pad << "]";
            return;
        }
        case Json::value_t::string:
            escape_string(j.get<std::string>(), out);
            return;
        case Json::value_t::boolean:
            out << (j.get<bool>() ? "true" : "false");
            return;
        case Json::value_t::number_integer:
            out << j.get<long long>();
            return;
        case Json::value_t::number_unsigned:
            out << j.get<unsigned long long>();
            return;
        case Json::value_t::number_float:
            out << format_double(j.get<double>());
            return;
        default:
            out << "null";
            return;
    }
}

}  // namespace

std::string dump_stable(const Json& j, int indent) {
    std::ostringstream out;
    dump_rec(j, out, indent, 0);
    out << "\n";
    return out.str();
}

std::string csv_samples(const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    out << "point_x1,point_x2,point_x3,point_x4,check_id,residual\n";
    for (const auto& r : rows) {
        for (int i = 0; i < 4; ++i) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", r.p[i]);
            out << buf << ",";
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", r.residual);
        out << r.check << "," << buf << "\n";
    }
    return out.str();
}

std::string summary_text(const Json& report) {
    std::ostringstream out;
    out << "scene " << report.at("scene").at("name").get<std::string>() << "  seed "
        << report.at("samples").at("seed").get<unsigned long long>() << "  points "
        << report.at("samples").at("evaluated").get<long long>() << "\n";
    for (const auto& c : report.at("checks")) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", c.at("max").get<double>());
        out << "  [" << c.at("verdict").get<std::string>() << "] " << c.at("id").get<std::string>()
            << "  max " << buf << "  (" << c.at("anchor").get<std::string>() << ")\n";
    }
    for (const auto& a : report.at("audits")) {
        out << "  [" << (a.at("counterexample").get<bool>() ? "counterexample" : "consistent")
            << "] audit " << a.at("id").get<std::string>() << "  ("
            << a.at("anchor").get<std::string>() << ")\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace folia
