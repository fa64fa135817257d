#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "coarse/adversary.hpp"
#include "coarse/cover_search.hpp"
#include "coarse/partition.hpp"
#include "coarse/set_system.hpp"
#include "coarse/space.hpp"

namespace coarse {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ParseError carrying the byte offset of malformed text.
Json parse_json(const std::string& text);

// Every *_from_json raises ParseError (position 0) on a missing or
// ill-typed field, naming the field.
Json to_json(const Box& box);
Box box_from_json(const Json& j);

// Points as an array of integer arrays.
Json to_json(const PointSet& points);
PointSet points_from_json(const Json& j, std::size_t dim);

// {"universe":[...],"members":[[...],...]}
Json to_json(const SetSystem& s);
SetSystem set_system_from_json(const Json& j);

// {"p":[...],"q":[...],"box":{"lo":[...],"hi":[...]}} with the box optional.
Json to_json(const SpaceSpec& s, const std::optional<Box>& box = std::nullopt);
SpaceSpec space_from_json(const Json& j);
std::optional<Box> space_box_from_json(const Json& j);

// {"name":..,"r":..,"B":..,"sets":[[[x..],..],..]}
Json to_json(const CoverFamily& f);
CoverFamily family_from_json(const Json& j);

// {"box":..,"adjacency":"face"|"vertex","rle":".."}
Json to_json(const GridRegion& r);
GridRegion region_from_json(const Json& j);

// {"box":..,"adjacency":..,"U":[points],"L":[points],"W":[points],"epsilon":e}
Json to_json(const PartitionCertificate& c);
PartitionCertificate partition_certificate_from_json(const Json& j);

Json to_json(const AdversaryParams& p);
AdversaryParams params_from_json(const Json& j);

Json to_json(const ObstructionCertificate& c);
ObstructionCertificate obstruction_from_json(const Json& j);

struct AdversaryConfig {
  AdversaryParams params;
  CoverFamily U;
  std::vector<CoverFamily> V;
  std::vector<CoverFamily> W;
};

// {"params":{..},"U":family,"V":[..],"W":[..]}. With a "generate" object
// ({"U":k,"V":k,"W":k} set counts) missing families are drawn from `seed`.
AdversaryConfig adversary_config_from_json(const Json& j, std::uint64_t seed);
Json to_json(const AdversaryConfig& c);

Json to_json(const FamilyReport& r);
Json to_json(const CoverReport& r);
Json to_json(const PartitionReport& r);
Json to_json(const NestedReport& r);
Json to_json(const SearchResult& r);
Json to_json(const StageReport& r);
Json to_json(const RegimeCheck& r);
Json to_json(const CoverHolds& r);
Json to_json(const AdversaryResult& r);

}  // namespace coarse
