#pragma once

#include <string>

#include "uphocore/coloring.hpp"
#include "uphocore/poset.hpp"

namespace upho {

/// Canonical JSON rendering of a poset: fields depth, ranks, covers, and
/// optionally edge_colors ("u-v" -> atom id) and labels. Byte-for-byte
/// reproducible; read(write(P)) == P exactly.
std::string poset_to_json(const TruncatedPoset& P);
TruncatedPoset poset_from_json(const std::string& text);

/// Deterministic DOT rendering with same-rank clusters; colored mode styles
/// edges by atom id and labels them with atom names.
std::string emit_dot(const TruncatedPoset& P, bool colored);

std::string report_to_json(const RealizationReport& rep);
std::string report_summary(const RealizationReport& rep, double wall_seconds);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace upho
