#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cactus/metric_graph.hpp"
#include "cactus/paths.hpp"

namespace cactus {

/// Three walks from a to b, as vertex sequences.
struct ThetaCurve {
  VertexId a = 0, b = 0;
  std::array<std::vector<VertexId>, 3> arcs;

  /// Every arc simple and the arcs pairwise disjoint away from a and b.
  bool embedded() const;
};

/// Arc i splits into alpha = arc[0 .. alpha_end], the open middle p' =
/// arc(alpha_end .. beta_begin) and beta = arc[beta_begin .. end].
struct ArcSplit {
  std::size_t alpha_end = 0;
  std::size_t beta_begin = 0;
};

struct FatThetaWitness {
  ThetaCurve theta;
  Rational M;
  std::array<ArcSplit, 3> split;
};

struct FatThetaCheck {
  bool middles_nonempty = false;  ///< condition 1, first half
  bool middles_apart = false;     ///< condition 1: d(p_i', p_j') >= M for i != j
  bool middles_clear = false;     ///< condition 2: p_i' meets no alpha_j, beta_j
  bool ends_apart = false;        ///< condition 3: d(alphas, betas) >= 2M
  Rational middle_gap;            ///< min over i != j of d(p_i', p_j')
  Rational end_gap;               ///< d(union alpha, union beta)

  bool ok() const { return middles_nonempty && middles_apart && middles_clear && ends_apart; }
};

/// Throws std::invalid_argument when the witness is malformed (arcs that
/// are not walks from a to b, split indices out of order).
FatThetaCheck check_fat_theta(const MetricGraph& g, const FatThetaWitness& w);
bool verify_fat_theta(const MetricGraph& g, const FatThetaWitness& w);

/// Largest M for which the witness's split verifies; 0 if none does.
Rational achieved_fatness(const MetricGraph& g, const FatThetaWitness& w);

struct ThetaSearchOptions {
  std::size_t budget = 200;  ///< branch-point pairs examined
};

struct ThetaSearchResult {
  std::optional<FatThetaWitness> witness;
  std::size_t pairs_tried = 0;
  bool budget_exhausted = false;
};

/// Looks for an embedded M-fat theta: branch points a, b of degree >= 3
/// with d(a, b) >= 3M, three internally disjoint paths whose parts outside
/// the balls B(a, rho), B(b, rho) keep M apart, and alpha/beta cut at those
/// balls; rho sweeps M, 2M, 4M and (d(a, b) - 2M) / 2. Every candidate goes
/// through verify_fat_theta. Absence only means "none under budget".
ThetaSearchResult search_fat_theta(const MetricGraph& g, const Rational& M, const ThetaSearchOptions& options = {});

/// L = [l1, l2], D = [l1 .. r1], R = [r1, r2] with l2, r2 on gamma.
struct Bridge {
  std::vector<VertexId> gamma;  ///< reference geodesic from x to y
  std::vector<VertexId> L;      ///< l1 .. l2
  std::vector<VertexId> D;      ///< l1 .. r1
  std::vector<VertexId> R;      ///< r1 .. r2
  std::size_t l2_index = 0;     ///< position of l2 on gamma
  std::size_t r2_index = 0;

  VertexId l1() const { return D.front(); }
  VertexId r1() const { return D.back(); }
  VertexId l2() const { return gamma[l2_index]; }
  VertexId r2() const { return gamma[r2_index]; }
};

class NoAvoidingPath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bridge of width floor(m/10) (floored to the tick lattice) built from a
/// path from x to y avoiding `forbidden`: gamma is split at `split` (default:
/// its midpoint), l1 is the last point of the path within floor(m/10) of
/// the first part and r1 the first later point within floor(m/10) of the
/// second part; L and R are geodesics to nearest points of gamma.
/// Throws NoAvoidingPath when forbidden separates x from y.
Bridge find_bridge(const MetricGraph& g, VertexId x, VertexId y, const Rational& m, const VertexMask& forbidden,
                   std::optional<std::size_t> split = std::nullopt);

/// Checks the bridge conditions; on failure `why` names the first one broken.
bool validate_bridge(const MetricGraph& g, const Bridge& b, const Rational& m, std::string* why = nullptr);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ViolationTheta {
  FatThetaWitness witness;
  int case_fired = 0;  ///< 1 or 2
  Bridge bridge;       ///< after straightening
  VertexId z1 = 0, z2 = 0;
  std::size_t straighten_steps = 0;
  std::size_t bridges_tried = 0;
};

/// Turns a pair violating (sharp, m) into a fat theta with M = m/1000:
/// maximal bridge among several split points, straightening of D by
/// geodesic replacement, then Case 1 (D comes within m/50 of gamma) or
/// Case 2 (a third path avoiding N_m(z1) and N_m(z2)). Throws
/// PreconditionError when d(x, y) < 10m or a separator exists.
ViolationTheta violation_to_theta(const MetricGraph& g, VertexId x, VertexId y, const Rational& m);

/// Case 1 construction on its own: theta with branch points D[t] and its
/// nearest point on gamma, middles L, [z1, z2] and R.
FatThetaWitness case1_theta(const MetricGraph& g, const Bridge& b, std::size_t t, const Rational& M);

}  // namespace cactus
