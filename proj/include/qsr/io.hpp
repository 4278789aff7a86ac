#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "qsr/representation.hpp"

namespace qsr {

/// Parses the line-oriented quiver setup-file format:
///   vertex <id> dim=<nonneg int> alpha=<rational p or p/q>
///   edge <tail-id> -> <head-id>
/// '#' starts a comment. Vertex declaration order fixes vertex indices and
/// edge declaration order fixes edge indices. Throws ParseError with the
/// offending line number.
QuiverSetup parse_quiver_file(std::string_view text);

/// Canonical rendering of a setup file; parse o serialize is
/// the identity on its output.
std::string serialize_quiver_file(const QuiverSetup& setup);

/// Representation file schema:
///   { "dims": {vertex: int}, "edges": [{"tail": id, "head": id,
///     "matrix": [[[re,im],...],...]}] }
/// Matrices are row-major with shape v_head x v_tail; the edge order must
/// match the quiver's edge order. Entries must be finite.
Representation representation_from_json(const nlohmann::json& doc, const Quiver& quiver,
                                        const DimensionVector& dims);

nlohmann::json representation_to_json(const Representation& rep);

/// Round to 12 significant digits, the fixed float formatting of the
/// machine-readable command output.
double round12(double x);

} // namespace qsr
