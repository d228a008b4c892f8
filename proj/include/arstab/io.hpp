#pragma once

// JSON wire formats.
//
//   element      nested little-endian coefficient lists down the tower; a
//                prime-field element is its residue.
//   field        {"p": p, "tower": [modulus, ...]} bottom-up, each modulus a
//                low-to-high list of base elements (monic, leading 1 included).
//   tensor       {"field": field, "dims": [...], "coeffs": [element, ...]}
//                row-major, leg 0 slowest.
//   matrix       list of rows, each a list of elements.
//   spec         {"kind": "mult", "top": field, "base_depth": k, "d": d}
//                {"kind": "unit", "field": field, "size": r, "order": d}
//                {"kind": "tensor", "tensor": tensor}
//   rank decomposition      {"schema", "target": spec, "terms": [[vector, ...], ...]}
//   restriction certificate {"schema", "source": spec, "target": spec, "maps": [matrix, ...]}

#include <json.hpp>
#include <string>
#include <variant>

#include "arstab/certificates.hpp"

namespace arstab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kRankDecompositionSchema = "arstab.rank-decomposition/1";
inline constexpr const char* kRestrictionSchema = "arstab.restriction-certificate/1";

Json to_json(const FieldElement& x);
FieldElement element_from_json(const Field& field, const Json& j);

Json to_json(const Field& f);
Field field_from_json(const Json& j);

Json to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Field& field, const Json& j);

Json to_json(const LinearMap& m);
LinearMap linear_map_from_json(const Field& field, const Json& j, std::size_t rows_hint);

Json spec_to_json(const TensorSpec& s);
TensorSpec spec_from_json(const Json& j);

Json to_json(const RankDecomposition& d);
RankDecomposition rank_decomposition_from_json(const Json& j);

Json to_json(const RestrictionCertificate& c);
RestrictionCertificate restriction_from_json(const Json& j);

using Certificate = std::variant<RankDecomposition, RestrictionCertificate>;
/// Dispatches on "schema". Malformed input throws ParseError.
Certificate certificate_from_json(const Json& j);
/// Exact verification of either certificate kind.
bool verify_certificate(const Certificate& c);

/// Parses text, mapping JSON syntax errors to ParseError.
Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace arstab
