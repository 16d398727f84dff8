#pragma once

#include <string>

#include "autosgd/problems.hpp"

namespace autosgd {

/// Writes a generated instance to a flat binary file: a header carrying
/// name/n/d/seed followed by named row-major float64 matrices (sparse data
/// stored dense). Intended for sharing exact instances across
/// implementations; see README for the layout.
void export_instance(const ProblemInstance& inst, const std::string& path);

/// Rebuilds an instance from an exported file. The reconstructed objective
/// evaluates identically to the original.
ProblemInstance import_instance(const std::string& path);

}  // namespace autosgd
