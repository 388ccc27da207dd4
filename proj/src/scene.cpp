#include "folia/scene.hpp"

#include <stdexcept>

namespace folia {

namespace {

double radical_inverse(unsigned long long i, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (i) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

constexpr unsigned kBases[4] = {2, 3, 5, 7};

}  // namespace

std::vector<Vec4d> sample_plan(const Scene& scene, int count, unsigned seed) {
    std::vector<Vec4d> pts;
    pts.reserve(count);
    unsigned long long idx = 1ull + static_cast<unsigned long long>(seed) * 1000003ull;
    long long budget = 1000ll * count + 1000;
    while (static_cast<int>(pts.size()) < count && budget-- > 0) {
        Vec4d p;
        for (int i = 0; i < 4; ++i) {
            double u = radical_inverse(idx, kBases[i]);
            p[i] = scene.region.lo[i] + u * (scene.region.hi[i] - scene.region.lo[i]);
        }
        ++idx;
        bool ok = true;
        for (const auto& k : scene.region.keep) {
            if (eval_value(k, p, scene.chart.params) <= 0.0) {
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(p);
    }
    if (static_cast<int>(pts.size()) < count)
        throw std::runtime_error("sample_plan: region rejects nearly all points");
    return pts;
}

namespace {

void digest_str(unsigned long long& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;  // FNV-1a
    }
    h ^= 0xff;
    h *= 1099511628211ull;
}

void digest_expr(unsigned long long& h, const ExprPtr& e,
                 const std::array<std::string, 4>& coords) {
    digest_str(h, e ? render(e, coords) : std::string("<none>"));
}

}  // namespace

unsigned long long scene_digest(const Scene& scene) {
    unsigned long long h = 1469598103934665603ull;
    const auto& c = scene.chart;
    for (const auto& name : c.coords) digest_str(h, name);
    for (const auto& [k, v] : c.params) {
        digest_str(h, k);
        digest_str(h, std::to_string(v));
    }
    for (const auto& e : c.metric) digest_expr(h, e, c.coords);
    digest_str(h, std::to_string(static_cast<int>(c.jspec)));
    if (c.jspec == JSpecKind::Explicit)
        for (const auto& e : c.jcomp) digest_expr(h, e, c.coords);
    if (c.jspec == JSpecKind::FromForm)
        for (const auto& e : c.form) digest_expr(h, e, c.coords);
    for (const auto& e : scene.dist.v) digest_expr(h, e, c.coords);
    digest_expr(h, scene.potential, c.coords);
    for (int i = 0; i < 4; ++i) {
        digest_str(h, std::to_string(scene.region.lo[i]));
        digest_str(h, std::to_string(scene.region.hi[i]));
    }
    for (const auto& e : scene.region.keep) digest_expr(h, e, c.coords);
    return h;
}

}  // namespace folia
