#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/cube.hpp"
#include "coarse/grid_region.hpp"
#include "coarse/space.hpp"

namespace coarse {

// Gaps a < b < c, n+1 families W (gap c), m+1 families V (gap b), one
// family U (gap a), all B-bounded, in dimension m+n+3 on the box [0, 6B].
// m or n may be -1 (no V or no W families) for degenerate cascades.
struct AdversaryParams {
  Coord a = 1, b = 1, c = 1;
  int m = 0, n = 0;
  Coord B = 1;

  std::size_t dim() const { return static_cast<std::size_t>(m + n + 3); }
  Coord side() const { return 6 * B; }
  Coord coarse_edge() const { return Coord{1} << (m + n + 2); }
  Coord fine_edge() const { return Coord{1} << (m + 1); }
  Box box() const { return Box::cube(dim(), 0, side()); }
  // X((0, m+1, m+n+2), (1, m+1, n+1)).
  SpaceSpec space() const;

  // DomainError on non-positive values, m or n below -1, or a coarse edge
  // that does not divide 6B.
  void validate() const;
};

// An inequality the cascade's guarantees rely on, evaluated for given params.
struct RegimeCheck {
  std::string inequality;
  bool holds = false;
  std::string forfeits;
};

std::vector<RegimeCheck> regime_checks(const AdversaryParams& params);

struct AvoidanceRow {
  std::string family;
  std::size_t set = 0;
  // nullopt for an empty set.
  std::optional<Coord> distance;
};

struct ObstructionCertificate {
  GridRegion C;
  // L'_1 .. L'_{m+n+2}, the snapped regions after each stage.
  std::vector<GridRegion> chain;
  std::size_t crossing_axis = 0;
  std::vector<AvoidanceRow> avoidance;
  // A point of C that no set of U contains.
  Point uncovered_witness;
};

struct StageReport {
  std::size_t stage = 0;  // 0 is the initial box
  std::string kind;       // init, W, V
  std::size_t family = 0;
  std::size_t axis = 0;
  Coord fattening = 0;
  std::size_t region_before = 0;
  std::size_t separator_size = 0;
  std::size_t cubes_selected = 0;
  std::size_t region_after = 0;
  Coord target_margin = 0;  // c - 2^{m+n+3} (W stages) or b - 2^{m+2} (V stages)
  std::optional<Coord> achieved_margin;
  bool partition_verified = false;
  bool snapped_separates = false;
  bool avoids_processed_families = false;
  bool on_skeleton = false;
  std::size_t max_coarse_offgrid = 0;  // max #coords outside 2^{m+n+2} Z
  bool failed = false;
  std::string note;
};

struct CoverHolds {
  std::string reason;
  // verify_cover of all families against the truncated space.
  bool families_cover_truncation = false;
  std::size_t uncovered_count = 0;
};

struct AdversaryResult {
  std::optional<ObstructionCertificate> certificate;
  std::optional<CoverHolds> holds;
  std::vector<StageReport> trace;
  std::vector<RegimeCheck> regime;
};

struct ObstructionCheck {
  bool pass = true;
  std::string failure;
};

// Re-derives every certificate invariant from C and the families alone:
// vertex-connectivity, both crossing faces, disjointness from V and W,
// membership in the truncated space, the coordinate profile, and the U witness.
ObstructionCheck verify_obstruction(const ObstructionCertificate& cert,
                                    const AdversaryParams& params, const CoverFamily& U,
                                    const std::vector<CoverFamily>& V,
                                    const std::vector<CoverFamily>& W);

// Runs the partition cascade. DomainError on family precondition failures
// or inadmissible params; ResourceError if the box exceeds the point cap.
AdversaryResult refute_cover(const AdversaryParams& params, const CoverFamily& U,
                             const std::vector<CoverFamily>& V,
                             const std::vector<CoverFamily>& W);

std::vector<StageReport> stage_trace(const AdversaryParams& params, const CoverFamily& U,
                                     const std::vector<CoverFamily>& V,
                                     const std::vector<CoverFamily>& W);

// Closed l_inf neighbourhood of `set` of the given radius, clipped to `clip`.
PointSet fatten(const PointSet& set, Coord radius, const Box& clip);

// Cubes having at least one lattice point in `region`.
std::vector<Cube> cubes_meeting(const std::vector<Cube>& cubes, const GridRegion& region);
std::vector<Cube> cubes_meeting_serial(const std::vector<Cube>& cubes, const GridRegion& region);

}  // namespace coarse
