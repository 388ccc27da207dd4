#pragma once

#include <optional>

#include "folia/scene.hpp"

namespace folia {

struct SceneIoError : std::runtime_error {
    int line;
    SceneIoError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct SceneFile {
    Scene scene;
    std::optional<double> tol_algebraic;
    std::optional<double> tol_derived;
};

/// Parses the TOML subset used for scene files. Unknown keys, duplicate
/// keys and malformed expressions are rejected with a line diagnostic.
SceneFile parse_scene_text(const std::string& text);
SceneFile load_scene(const std::string& path);

/// Serialization; load(serialize(s)) reproduces the scene.
std::string scene_to_toml(const Scene& scene);

}  // namespace folia
