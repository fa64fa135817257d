#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/grid_region.hpp"

namespace coarse {

// Opposite faces x_axis = lo (negative, A) and x_axis = hi (positive, B) of
// the region's reference box, intersected with the region.
struct FacePair {
  std::size_t axis = 0;
};

// Region = U + L + W with A in U and B in W; epsilon = 0 for a plain partition.
struct PartitionCertificate {
  GridRegion U;
  GridRegion L;
  GridRegion W;
  Coord epsilon = 0;
};

struct PartitionReport {
  bool pass = true;
  // One of: box, disjoint, union, separation, faces, margin. Empty on pass.
  std::string failed_clause;
  std::string detail;
  // d(L, A) and d(L, B); nullopt when L or the face is empty.
  std::optional<Coord> margin_negative;
  std::optional<Coord> margin_positive;
};

// Checks every clause of the certificate. Separation means no edge of the
// region's declared adjacency joins U to W.
PartitionReport verify_partition(const PartitionCertificate& cert, const GridRegion& region,
                                 FacePair faces);

// Raised when no obstacle-avoiding partition meets the requested margin.
class NoAdmissibleLevel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An epsilon-partition of `region` between the faces of `faces.axis` whose
// separator avoids every obstacle set. Requires 0 < epsilon, 6 epsilon < B,
// and obstacles (restricted to the region) epsilon-disjoint and B/3-bounded.
//
// Construction: rho is the graph distance from A in which each obstacle set
// is contracted to one node. For a level t, U is {rho < t} plus every
// obstacle touching it, L is the outer boundary of U minus obstacles, and W
// is the rest. Levels are tried from the middle of the admissible range
// outward; the first one whose measured margins exceed epsilon is returned.
// If none works, half-space cuts {x_axis < s} are tried (middle first), each
// obstacle met by the cut being pushed wholly to the U or the W side. The
// last resort is complete: with Z the non-obstacle points farther than
// epsilon from both faces, a certificate exists iff removing Z disconnects
// the faces, and then U = the part reachable from A. So NoAdmissibleLevel
// means no obstacle-avoiding epsilon-partition exists at all.
PartitionCertificate build_partition(const GridRegion& region, FacePair faces,
                                     const CoverFamily& obstacles, Coord epsilon, Coord B);

struct LevelPartition {
  PartitionCertificate cert;
  std::int32_t level = 0;  // -1 for a half-space cut, -2 for the zone fallback
  // min(d(L, A), d(L, B)); nullopt if unbounded.
  std::optional<Coord> margin;
};

// The unchecked construction behind build_partition. `margins` are tried in
// order; the first level meeting margins[k] wins. nullopt if none does.
std::optional<LevelPartition> build_level_partition(const GridRegion& region, std::size_t axis,
                                                    const std::vector<PointSet>& obstacles,
                                                    std::span<const Coord> margins);

struct NestedReport {
  bool certificates_ok = true;
  std::size_t failed_index = 0;
  std::string failure;
  bool final_nonempty = false;
  std::size_t final_count = 0;
};

// sequence[i + 1] must be certs[i].L, a partition of sequence[i] between the
// faces of faces[i]. DomainError on malformed nesting (length mismatch,
// differing boxes, or a region not contained in its predecessor).
NestedReport check_nested(const std::vector<GridRegion>& sequence,
                          const std::vector<FacePair>& faces,
                          const std::vector<PartitionCertificate>& certs);

struct NestedChain {
  std::vector<GridRegion> sequence;  // start, L_1, .., L_k
  std::vector<FacePair> faces;
  std::vector<PartitionCertificate> certs;
};

// Chains build_partition over axes 0..k-1 (k = obstacles.size() <= dim),
// partitioning each L_i between the faces of axis i while avoiding
// obstacles[i]. Propagates build_partition's errors.
NestedChain build_nested_chain(const GridRegion& start, const std::vector<CoverFamily>& obstacles,
                               Coord epsilon, Coord B);

}  // namespace coarse
