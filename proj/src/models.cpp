#include "folia/models.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace folia {

namespace {

const std::array<std::string, 4> kC2Coords = {"x1", "y1", "x2", "y2"};
const std::array<std::string, 4> kCalabiCoords = {"x", "y", "z", "t"};

ExprPtr P(const std::string& text, const std::array<std::string, 4>& coords,
          const Params& params = {}) {
    std::vector<std::string> names;
    for (const auto& [k, v] : params) names.push_back(k);
    return parse(text, coords, names);
}

/// Metric from the 10 upper-triangle component strings in sym_index order:
/// 11,12,13,14,22,23,24,33,34,44.
void set_metric(Chart& c, const std::array<std::string, kSymSize>& comps) {
    std::vector<std::string> names;
    for (const auto& [k, v] : c.params) names.push_back(k);
    for (int i = 0; i < kSymSize; ++i) c.metric[i] = parse(comps[i], c.coords, names);
}

Chart flat_chart() {
    Chart c;
    c.coords = kC2Coords;
    set_metric(c, {"1", "0", "0", "0", "1", "0", "0", "1", "0", "1"});
    c.jspec = JSpecKind::Standard;
    return c;
}

Region box(double lo, double hi) {
    Region r;
    for (int i = 0; i < 4; ++i) {
        r.lo[i] = lo;
        r.hi[i] = hi;
    }
    return r;
}

}  // namespace

Scene flat_c2() {
    Scene s;
    s.name = "flat_c2";
    s.chart = flat_chart();
    for (int i = 0; i < 4; ++i) s.dist.v[i] = P(i == 0 ? "1" : "0", kC2Coords);
    s.potential = P("(x1^2 + y1^2 + x2^2 + y2^2)/2", kC2Coords);
    s.region = box(-2.0, 2.0);
    return s;
}

Scene punctured_c2_radial() {
    Scene s;
    s.name = "punctured_c2_radial";
    s.chart = flat_chart();
    const char* euler[4] = {"x1", "y1", "x2", "y2"};
    for (int i = 0; i < 4; ++i) s.dist.v[i] = P(euler[i], kC2Coords);
    s.potential = P("(x1^2 + y1^2 + x2^2 + y2^2)/2", kC2Coords);
    s.region = box(-2.0, 2.0);
    // keep 0.5 < r < 2
    s.region.keep.push_back(P("x1^2 + y1^2 + x2^2 + y2^2 - 0.25", kC2Coords));
    s.region.keep.push_back(P("4 - (x1^2 + y1^2 + x2^2 + y2^2)", kC2Coords));
    return s;
}

Scene product_surfaces(double k1, double k2) {
    Scene s;
    std::ostringstream nm;
    nm << "product_surfaces(" << k1 << "," << k2 << ")";
    s.name = nm.str();
    Chart c;
    c.coords = kC2Coords;
    c.params = {{"k1", k1}, {"k2", k2}};
    // isothermal metric of constant curvature k on each factor
    set_metric(c, {"1/(1 + (k1/4)*(x1^2 + y1^2))^2", "0", "0", "0",
                   "1/(1 + (k1/4)*(x1^2 + y1^2))^2", "0", "0",
                   "1/(1 + (k2/4)*(x2^2 + y2^2))^2", "0",
                   "1/(1 + (k2/4)*(x2^2 + y2^2))^2"});
    c.jspec = JSpecKind::Standard;
    s.chart = c;
    for (int i = 0; i < 4; ++i) s.dist.v[i] = P(i == 0 ? "1" : "0", kC2Coords, c.params);
    s.region = box(-0.5, 0.5);
    return s;
}

Scene calabi_type(double C, SigmaKind sigma) {
    if (C == 0.0) throw std::invalid_argument("calabi_type: C must be nonzero");
    Scene s;
    std::ostringstream nm;
    nm << "calabi_type(" << C << "," << (sigma == SigmaKind::Flat ? "flat" : "sphere") << ")";
    s.name = nm.str();
    Chart c;
    c.coords = kCalabiCoords;
    c.params = {{"C", C}};
    c.jspec = JSpecKind::FromForm;
    std::vector<std::string> pn = {"C"};
    auto F = [&](const std::string& t) { return parse(t, kCalabiCoords, pn); };
    if (sigma == SigmaKind::Flat) {
        // g = z(dx^2+dy^2) + dz^2/(Cz) + Cz(dt + x dy)^2
        set_metric(c, {"z", "0", "0", "0",
                       "z + C*z*x^2", "0", "C*z*x",
                       "1/(C*z)", "0",
                       "C*z"});
        // Omega = z dx^dy + dz^(dt + x dy)
        c.form = {F("z"), F("0"), F("0"), F("-x"), F("0"), F("1")};
    } else {
        // g_Sigma = dx^2 + sin(x)^2 dy^2, alpha = (1 - cos(x)) dy
        set_metric(c, {"z", "0", "0", "0",
                       "z*sin(x)^2 + C*z*(1 - cos(x))^2", "0", "C*z*(1 - cos(x))",
                       "1/(C*z)", "0",
                       "C*z"});
        c.form = {F("z*sin(x)"), F("0"), F("0"), F("-(1 - cos(x))"), F("0"), F("1")};
    }
    s.chart = c;
    for (int i = 0; i < 4; ++i) s.dist.v[i] = F(i == 2 ? "1" : "0");
    s.potential = F("z/C");
    if (sigma == SigmaKind::Flat) {
        s.region = box(-1.0, 1.0);
    } else {
        s.region = box(0.0, 1.0);
        s.region.lo[0] = 0.5;
        s.region.hi[0] = 1.2;  // polar cap, away from both poles
    }
    s.region.lo[2] = 0.5;
    s.region.hi[2] = 2.0;
    return s;
}

Scene skewed_flat(double amplitude) {
    Scene s;
    std::ostringstream nm;
    nm << "skewed_flat(" << amplitude << ")";
    s.name = nm.str();
    s.chart = flat_chart();
    s.chart.params = {{"a", amplitude}};
    std::vector<std::string> pn = {"a"};
    const char* comps[4] = {"cos(a*x2)", "0", "sin(a*x2)", "0"};
    for (int i = 0; i < 4; ++i) s.dist.v[i] = parse(comps[i], kC2Coords, pn);
    s.region = box(-2.0, 2.0);
    return s;
}

Scene perturbed(const Scene& base, double amplitude, unsigned seed) {
    Scene s = base;
    std::ostringstream nm;
    nm << "perturbed(" << base.name << "," << amplitude << "," << seed << ")";
    s.name = nm.str();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int k = 0; k < kSymSize; ++k) {
        // (1 + amplitude * sin(c . x + phase)) as an AST
        ExprPtr phase = Expr::make_number(coeff(rng) * 3.0);
        ExprPtr lin = phase;
        for (int i = 0; i < 4; ++i) {
            ExprPtr term = Expr::make_binary(Expr::Kind::Mul,
                                             Expr::make_number(coeff(rng)),
                                             Expr::make_coord(i));
            lin = Expr::make_binary(Expr::Kind::Add, lin, term);
        }
        ExprPtr bump = Expr::make_binary(
            Expr::Kind::Mul, Expr::make_number(amplitude),
            Expr::make_unary(Expr::Kind::Sin, lin));
        ExprPtr factor = Expr::make_binary(Expr::Kind::Add, Expr::make_number(1.0), bump);
        s.chart.metric[k] =
            Expr::make_binary(Expr::Kind::Mul, s.chart.metric[k], factor);
    }
    return s;
}

namespace {

std::vector<std::string> split_args(const std::string& inside) {
    std::vector<std::string> args;
    std::string cur;
    int depth = 0;
    for (char ch : inside) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            args.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) args.push_back(cur);
    return args;
}

double to_num(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("bad numeric argument: " + s);
    return v;
}

}  // namespace

Scene builtin_scene(const std::string& name) {
    std::string head = name;
    std::vector<std::string> args;
    auto open = name.find('(');
    if (open != std::string::npos) {
        if (name.back() != ')')
            throw std::invalid_argument("builtin scene: unbalanced parentheses in " + name);
        head = name.substr(0, open);
        args = split_args(name.substr(open + 1, name.size() - open - 2));
    }
    if (head == "flat_c2") return flat_c2();
    if (head == "punctured_c2_radial") return punctured_c2_radial();
    if (head == "product_surfaces") {
        if (args.size() != 2)
            throw std::invalid_argument("product_surfaces expects (k1,k2)");
        return product_surfaces(to_num(args[0]), to_num(args[1]));
    }
    if (head == "calabi_type") {
        if (args.empty() || args.size() > 2)
            throw std::invalid_argument("calabi_type expects (C[,flat|sphere])");
        SigmaKind sk = SigmaKind::Flat;
        if (args.size() == 2) {
            if (args[1] == "flat")
                sk = SigmaKind::Flat;
            else if (args[1] == "sphere")
                sk = SigmaKind::SpherePatch;
            else
                throw std::invalid_argument("calabi_type: sigma must be flat or sphere");
        }
        return calabi_type(to_num(args[0]), sk);
    }
    if (head == "skewed_flat") {
        if (args.size() != 1) throw std::invalid_argument("skewed_flat expects (amplitude)");
        return skewed_flat(to_num(args[0]));
    }
    if (head == "perturbed") {
        if (args.size() != 3)
            throw std::invalid_argument("perturbed expects (base,amplitude,seed)");
        return perturbed(builtin_scene(args[0]), to_num(args[1]),
                         static_cast<unsigned>(to_num(args[2])));
    }
    throw std::invalid_argument("unknown builtin scene: " + head);
}

std::vector<std::string> builtin_names() {
    return {"flat_c2",
            "punctured_c2_radial",
            "product_surfaces(k1,k2)",
            "calabi_type(C,flat|sphere)",
            "skewed_flat(amplitude)",
            "perturbed(base,amplitude,seed)"};
}

}  // namespace folia
