#pragma once

#include "folia/scene.hpp"

namespace folia {

enum class SigmaKind { Flat, SpherePatch };

Scene flat_c2();
Scene punctured_c2_radial();
Scene product_surfaces(double k1, double k2);
Scene calabi_type(double C, SigmaKind sigma = SigmaKind::Flat);
Scene skewed_flat(double amplitude);

/// Metric components multiplied by independent smooth bumps
/// (1 + amplitude * sin(linear phase)); destroys the Kahler property in
/// general, so only calculus-level checks make sense on the result.
Scene perturbed(const Scene& base, double amplitude, unsigned seed);

/// Resolve a builtin scene name, optionally with arguments, e.g.
/// "flat_c2", "product_surfaces(1,0)", "calabi_type(1,flat)",
/// "calabi_type(1,sphere)", "skewed_flat(0.5)", "perturbed(flat_c2,1e-3,7)".
/// Throws std::invalid_argument for unknown names or bad arguments.
Scene builtin_scene(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace folia
