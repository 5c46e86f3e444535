#pragma once

#include "toricdef/deformation.hpp"
#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"
#include "toricdef/singularity.hpp"
#include "toricdef/terminalize.hpp"

#include "json.hpp"

namespace toricdef {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers while they fit in 53 bits and as
// decimal strings beyond; parsers accept both spellings everywhere.
Json int_to_json(const Int& x);
Int int_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j);

// "dim" may be omitted when at least one vertex pins it down.
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

Json flags_to_json(const SingularityFlags& f);
SingularityFlags flags_from_json(const Json& j);

Json action_to_json(const QuotientActionDesc& q);
QuotientActionDesc action_from_json(const Json& j);

// Serialized deformations carry n, m, the summands and the cone; parsing
// rebuilds from the summands and cross-checks the embedded cone if present.
Json deformation_to_json(const Deformation& d);
Deformation deformation_from_json(const Json& j);

Json central_fibre_to_json(const CentralFibre& f);
CentralFibre central_fibre_from_json(const Json& j);

Json presentation_to_json(const FibrePresentation& p);
FibrePresentation presentation_from_json(const Json& j);

// Triangulations store cells as ray indices into used_points.
Json triangulation_to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

Json verification_to_json(const TriangulationReport& r);
TriangulationReport verification_from_json(const Json& j);

Json terminalization_to_json(const TerminalizationReport& r);
TerminalizationReport terminalization_from_json(const Json& j);

Json flop_to_json(const FlopPair& f);
FlopPair flop_from_json(const Json& j);

} // namespace toricdef
