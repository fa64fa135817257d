#include "coarse/json_io.hpp"

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"

namespace coarse {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'", 0);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", 0);
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), 0);
  }
}

Point point_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("point must be an integer array", 0);
  Point p;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("point coordinate must be an integer", 0);
    p.push_back(v.get<Coord>());
  }
  if (dim != 0 && p.size() != dim) {
    throw ParseError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(dim), 0);
  }
  return p;
}

Json point_json(std::span<const Coord> p) { return Json(std::vector<Coord>(p.begin(), p.end())); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), e.byte > 0 ? e.byte - 1 : 0);  // 0-based offset
  }
}

Json to_json(const Box& box) { return Json{{"lo", box.lo}, {"hi", box.hi}}; }

Box box_from_json(const Json& j) {
  Box b{get<Point>(j, "lo"), get<Point>(j, "hi")};
  if (b.lo.size() != b.hi.size()) throw ParseError("box lo and hi differ in length", 0);
  return b;
}

Json to_json(const PointSet& points) {
  Json out = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(point_json(points[i]));
  return out;
}

PointSet points_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("point set must be an array", 0);
  if (dim == 0 && !j.empty()) dim = point_from_json(j.front(), 0).size();
  PointSet out(dim);
  for (const auto& p : j) out.push_back(point_from_json(p, dim));
  return out;
}

Json to_json(const SetSystem& s) {
  return Json{{"universe", s.universe()}, {"members", s.members()}};
}

SetSystem set_system_from_json(const Json& j) {
  return SetSystem(get<std::vector<int>>(j, "universe"),
                   get<std::vector<std::vector<int>>>(j, "members"));
}

Json to_json(const SpaceSpec& s, const std::optional<Box>& box) {
  Json out{{"p", s.p}, {"q", s.q}};
  if (box) out["box"] = to_json(*box);
  return out;
}

SpaceSpec space_from_json(const Json& j) {
  SpaceSpec s{get<std::vector<int>>(j, "p"), get<std::vector<int>>(j, "q")};
  s.validate();
  return s;
}

std::optional<Box> space_box_from_json(const Json& j) {
  if (!j.contains("box")) return std::nullopt;
  return box_from_json(j["box"]);
}

Json to_json(const CoverFamily& f) {
  Json sets = Json::array();
  for (const auto& s : f.sets) sets.push_back(to_json(s));
  return Json{{"name", f.name}, {"r", f.r}, {"B", f.B}, {"sets", sets}};
}

CoverFamily family_from_json(const Json& j) {
  CoverFamily f;
  f.name = j.contains("name") ? get<std::string>(j, "name") : std::string("family");
  f.r = j.contains("r") ? get<Coord>(j, "r") : 0;
  f.B = j.contains("B") ? get<Coord>(j, "B") : 0;
  const Json& sets = field(j, "sets");
  if (!sets.is_array()) throw ParseError("field 'sets' must be an array", 0);
  std::size_t dim = 0;
  for (const auto& s : sets) {
    f.sets.push_back(points_from_json(s, dim));
    if (dim == 0) dim = f.sets.back().dim();
  }
  for (auto& s : f.sets) {
    if (s.dim() == 0) s = PointSet(dim);
  }
  return f;
}

Json to_json(const GridRegion& r) {
  return Json{{"box", to_json(r.box())}, {"adjacency", to_string(r.adjacency())}, {"rle", r.rle()}};
}

GridRegion region_from_json(const Json& j) {
  const Box box = box_from_json(field(j, "box"));
  Adjacency adj = Adjacency::kFace;
  if (j.contains("adjacency")) {
    try {
      adj = adjacency_from_string(get<std::string>(j, "adjacency"));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 0);
    }
  }
  return GridRegion::from_rle(box, adj, get<std::string>(j, "rle"));
}

Json to_json(const PartitionCertificate& c) {
  return Json{{"box", to_json(c.U.box())}, {"adjacency", to_string(c.U.adjacency())},
              {"U", to_json(c.U.points())},     {"L", to_json(c.L.points())},
              {"W", to_json(c.W.points())},     {"epsilon", c.epsilon}};
}

PartitionCertificate partition_certificate_from_json(const Json& j) {
  const Box box = box_from_json(field(j, "box"));
  Adjacency adj = Adjacency::kFace;
  if (j.contains("adjacency")) adj = adjacency_from_string(get<std::string>(j, "adjacency"));
  auto region = [&](const char* key) {
    return GridRegion::from_points(box, points_from_json(field(j, key), box.dim()), adj);
  };
  return PartitionCertificate{region("U"), region("L"), region("W"),
                              j.contains("epsilon") ? get<Coord>(j, "epsilon") : 0};
}

Json to_json(const AdversaryParams& p) {
  return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"m", p.m}, {"n", p.n}, {"B", p.B}};
}

AdversaryParams params_from_json(const Json& j) {
  return AdversaryParams{get<Coord>(j, "a"), get<Coord>(j, "b"), get<Coord>(j, "c"),
                         get<int>(j, "m"),   get<int>(j, "n"),   get<Coord>(j, "B")};
}

Json to_json(const ObstructionCertificate& c) {
  Json chain = Json::array();
  for (const auto& r : c.chain) chain.push_back(to_json(r));
  Json avoid = Json::array();
  for (const auto& row : c.avoidance) {
    avoid.push_back({{"family", row.family},
                     {"set", row.set},
                     {"distance", row.distance ? Json(*row.distance) : Json(nullptr)}});
  }
  return Json{{"C", to_json(c.C)},
              {"crossing_axis", c.crossing_axis},
              {"uncovered_witness", c.uncovered_witness},
              {"avoidance", avoid},
              {"chain", chain}};
}

ObstructionCertificate obstruction_from_json(const Json& j) {
  ObstructionCertificate c;
  c.C = region_from_json(field(j, "C"));
  c.crossing_axis = get<std::size_t>(j, "crossing_axis");
  c.uncovered_witness = point_from_json(field(j, "uncovered_witness"), c.C.dim());
  if (j.contains("chain")) {
    for (const auto& r : j["chain"]) c.chain.push_back(region_from_json(r));
  }
  if (j.contains("avoidance")) {
    for (const auto& row : j["avoidance"]) {
      AvoidanceRow a{get<std::string>(row, "family"), get<std::size_t>(row, "set"), std::nullopt};
      if (!field(row, "distance").is_null()) a.distance = get<Coord>(row, "distance");
      c.avoidance.push_back(std::move(a));
    }
  }
  return c;
}

AdversaryConfig adversary_config_from_json(const Json& j, std::uint64_t seed) {
  AdversaryConfig cfg;
  cfg.params = params_from_json(field(j, "params"));
  const AdversaryParams& p = cfg.params;
  const Json gen = j.contains("generate") ? j["generate"] : Json::object();
  Rng rng(seed);
  const Box box = p.box();
  auto count = [&](const char* key) {
    return gen.contains(key) ? get<std::size_t>(gen, key) : std::size_t{0};
  };
  if (j.contains("U")) {
    cfg.U = family_from_json(j["U"]);
  } else {
    cfg.U = random_family(rng, "U", box, p.a, p.B, count("U"));
  }
  auto list = [&](const char* key, int size, Coord gap, std::vector<CoverFamily>& out) {
    if (j.contains(key)) {
      for (const auto& f : field(j, key)) out.push_back(family_from_json(f));
      return;
    }
    for (int i = 0; i < size; ++i) {
      out.push_back(random_family(rng, std::string(key) + std::to_string(i + 1), box, gap, p.B,
                                  count(key)));
    }
  };
  list("V", p.m + 1, p.b, cfg.V);
  list("W", p.n + 1, p.c, cfg.W);
  return cfg;
}

Json to_json(const AdversaryConfig& c) {
  Json v = Json::array(), w = Json::array();
  for (const auto& f : c.V) v.push_back(to_json(f));
  for (const auto& f : c.W) w.push_back(to_json(f));
  return Json{{"params", to_json(c.params)}, {"U", to_json(c.U)}, {"V", v}, {"W", w}};
}

Json to_json(const FamilyReport& r) {
  Json out{{"pass", r.pass},
           {"gap", r.gap ? Json(*r.gap) : Json(nullptr)},
           {"diam", r.diam},
           {"widest_set", r.widest_set}};
  if (r.gap) out["closest_pair"] = {r.set_a, r.set_b};
  if (!r.pass) out["failure"] = r.failure;
  return out;
}

Json to_json(const CoverReport& r) {
  return Json{{"pass", r.pass}, {"uncovered_count", r.uncovered.size()},
              {"uncovered", to_json(r.uncovered)}};
}

Json to_json(const PartitionReport& r) {
  return Json{{"pass", r.pass},
              {"failed_clause", r.failed_clause},
              {"detail", r.detail},
              {"margin_negative", r.margin_negative ? Json(*r.margin_negative) : Json(nullptr)},
              {"margin_positive", r.margin_positive ? Json(*r.margin_positive) : Json(nullptr)}};
}

Json to_json(const NestedReport& r) {
  Json out{{"certificates_ok", r.certificates_ok},
           {"final_nonempty", r.final_nonempty},
           {"final_count", r.final_count}};
  if (!r.certificates_ok) {
    out["failed_index"] = r.failed_index;
    out["failure"] = r.failure;
  }
  return out;
}

Json to_json(const SearchResult& r) {
  Json wit = Json::array();
  for (const auto& f : r.witness) wit.push_back(to_json(f));
  return Json{{"outcome", r.covered() ? "Covered" : "NotCoveredWithinBudget"},
              {"exact", r.exact},
              {"budget_exhausted", r.budget_exhausted},
              {"proves_not_covered", r.proves_not_covered()},
              {"nodes", r.nodes},
              {"witness", wit}};
}

Json to_json(const StageReport& r) {
  return Json{{"stage", r.stage},
              {"kind", r.kind},
              {"family", r.family},
              {"axis", r.axis},
              {"fattening", r.fattening},
              {"region_before", r.region_before},
              {"separator_size", r.separator_size},
              {"cubes_selected", r.cubes_selected},
              {"region_after", r.region_after},
              {"target_margin", r.target_margin},
              {"achieved_margin", r.achieved_margin ? Json(*r.achieved_margin) : Json(nullptr)},
              {"partition_verified", r.partition_verified},
              {"snapped_separates", r.snapped_separates},
              {"avoids_processed_families", r.avoids_processed_families},
              {"on_skeleton", r.on_skeleton},
              {"max_coarse_offgrid", r.max_coarse_offgrid},
              {"failed", r.failed},
              {"note", r.note}};
}

Json to_json(const RegimeCheck& r) {
  return Json{{"inequality", r.inequality}, {"holds", r.holds}, {"forfeits", r.forfeits}};
}

Json to_json(const CoverHolds& r) {
  return Json{{"reason", r.reason},
              {"families_cover_truncation", r.families_cover_truncation},
              {"uncovered_count", r.uncovered_count}};
}

Json to_json(const AdversaryResult& r) {
  Json trace = Json::array(), regime = Json::array();
  for (const auto& s : r.trace) trace.push_back(to_json(s));
  for (const auto& c : r.regime) regime.push_back(to_json(c));
  Json out{{"outcome", r.certificate ? "Obstruction" : "CoverHolds"}};
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (r.holds) out["cover_holds"] = to_json(*r.holds);
  out["regime"] = regime;
  out["trace"] = trace;
  return out;
}

}  // namespace coarse
