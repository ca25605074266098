#pragma once

// Built-in example surfaces.
//
// Each builtin is stored as the exact document text that serialize_surface
// produces, so the CLI can resolve --surface either to one of these names or
// to a file path, and tests can rely on byte-stable round trips.
//
//   punctured_torus  one puncture, genus 1   (2 triangles, 3 edges)
//   sphere_3         three punctures, genus 0 (2 triangles, 3 edges)
//   sphere_4         four punctures, genus 0  (4 triangles, 6 edges)
//   genus2_1         one puncture, genus 2    (6 triangles, 9 edges)

#include <string>
#include <vector>

#include "psih/surface.hpp"

namespace psih {

// Names in the order above.
[[nodiscard]] const std::vector<std::string>& builtin_surface_names();

[[nodiscard]] bool is_builtin_surface(const std::string& name);

// Errors: io "unknown_surface" when the name is not a builtin.
[[nodiscard]] const std::string& builtin_surface_document(const std::string& name);

[[nodiscard]] Triangulation builtin_surface(const std::string& name);

}  // namespace psih
