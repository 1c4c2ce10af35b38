#pragma once

#include <json.hpp>

#include "cactus/builder.hpp"
#include "cactus/cycles.hpp"
#include "cactus/fat_theta.hpp"
#include "cactus/harness.hpp"
#include "cactus/separation.hpp"
#include "cactus/verify.hpp"

namespace cactus {

using Json = nlohmann::ordered_json;

/// Bumped whenever a field changes meaning or disappears.
inline constexpr int kSchemaVersion = 1;

/// {"schema_version": ..., "command": ...} followed by the fields of `body`.
Json envelope(const std::string& command, const Json& body);

// Lengths and rationals are written as exact strings ("3/2"); vertex ids as
// integers; tick counts are converted to lengths of the graph they refer to.

Json graph_json(const MetricGraph& g);
/// Inverse of graph_json. Throws std::invalid_argument on malformed input.
MetricGraph graph_from_json(const Json& j);

Json origin_json(const OriginPoint& p);
Json sharp_json(const SharpReport& r);
Json witness_json(const MetricGraph& g, const FatThetaWitness& w);
Json theta_search_json(const MetricGraph& g, const ThetaSearchResult& r);
Json violation_theta_json(const MetricGraph& g, const ViolationTheta& v);
Json filling_json(const MetricGraph& g, const Filling& f);
Json lemma_json(const LemmaReport& r);
Json distortion_json(const DistortionProfile& p);
Json annulus_json(const AnnulusReport& r);

/// Everything needed to rebuild the approximation except X itself, which is
/// recomputed from the input graph on the recorded lattice.
Json cactus_json(const CactusApprox& a);
/// Reads cactus_json output against the input graph g. Throws
/// std::invalid_argument when the record does not fit g.
CactusApprox cactus_from_json(const Json& j, const MetricGraph& g);

}  // namespace cactus
