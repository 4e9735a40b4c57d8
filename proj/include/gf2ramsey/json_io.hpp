#pragma once

#include <string>

#include "json.hpp"

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/cnf.hpp"
#include "gf2ramsey/copies.hpp"
#include "gf2ramsey/forms.hpp"

namespace gf2r {

using Json = nlohmann::json;

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

/// {"kind": "symplectic", "k": ...}, {"kind": "bounded", "k": ..., "m": ...} or {"gram": [[...]]}.
Json space_to_json(const BilinearSpace& space);
BilinearSpace space_from_json(const Json& j);

/// Shorthand "symplectic:K", "bounded:K,M", "zero:N", or a JSON object.
BilinearSpace parse_space_spec(const std::string& spec);
std::string space_spec(const BilinearSpace& space);

/// List of [source, image] bit-string pairs over the domain basis.
Json isometry_to_json(const Isometry& g);
Isometry isometry_from_json(const BilinearSpace& space, const Json& j);

Json coloring_to_json(const ColorAssignment& c);
ColorAssignment coloring_from_json(const Json& j);

/// "iso:D,R", "orbit:D,M,P,Q" or "family:D:BITS[,BITS...]" (C1 basis).
CopyPattern parse_pattern(const std::string& spec, const BilinearSpace& space);
std::string pattern_spec(const CopyPattern& p);

/// Verdict, witness and statistics; wall-clock time sits under "timing".
Json arrow_result_to_json(const ArrowResult& r);

/// Variable map of an encoding: one entry per copy variable plus the auxiliary range.
Json cnf_manifest(const CnfEncoding& enc);

}  // namespace gf2r
