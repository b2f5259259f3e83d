#ifndef CYCLESIM_WEIGHTS_IO_H
#define CYCLESIM_WEIGHTS_IO_H

#include <filesystem>
#include <string_view>

#include "cyclesim/oracle.h"

namespace cyclesim {

/// n lines of n comma-separated integers. Diagnostics carry 1-based line and column.
WeightMatrix parse_weights_csv(std::string_view text);

/// {"n": <int>, "weights": [[...], ...]}
WeightMatrix parse_weights_json(std::string_view text);

/// Reads a weight file, choosing JSON when the first non-blank character is '{'.
WeightMatrix load_weights(const std::filesystem::path &path);

}  // namespace cyclesim

#endif
