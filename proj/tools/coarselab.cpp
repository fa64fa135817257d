// coarselab: batch front-end. Every command writes one JSON report.
//
// Exit codes: 0 all verifications passed, 1 a verification failed,
// 2 usage / parse / domain error, 3 search budget exhausted, 4 resource cap.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coarse/adversary.hpp"
#include "coarse/cover_search.hpp"
#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/json_io.hpp"
#include "coarse/partition.hpp"
#include "coarse/svg.hpp"

using namespace coarse;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3, kResource = 4 };

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  bool exact = false;
  bool greedy = false;
  std::vector<std::string> args;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// The outcome of one command: a result object, the pass bit, and an exit code.
struct Outcome {
  Json result;
  bool pass = true;
  int code = kOk;
};

struct Context {
  const Options& opt;
  Json inputs = Json::object();

  Json load_config() {
    if (opt.config.empty()) throw IoError("--config is required for this command");
    const std::string text = read_file(opt.config);
    inputs["config"] = {{"path", opt.config}, {"fnv1a64", fnv1a64(text)}};
    try {
      return parse_json(text);
    } catch (const ParseError& e) {
      throw ParseError(opt.config + ": " + e.what(), e.position());
    }
  }
};

Slice slice_from_json(const Json& j, std::size_t dim) {
  Slice s;
  s.x_axis = j.value("x_axis", std::size_t{0});
  s.y_axis = j.value("y_axis", std::size_t{1});
  s.at = j.contains("at") ? j["at"].get<Point>() : Point(dim, 0);
  return s;
}

PointSet carrier_from(const Json& cfg, std::size_t dim_hint) {
  if (cfg.contains("carrier")) return points_from_json(cfg["carrier"], dim_hint);
  if (cfg.contains("space")) {
    const auto spec = space_from_json(cfg["space"]);
    const auto box = space_box_from_json(cfg["space"]);
    if (!box) throw ParseError("field 'space' needs a 'box' to define a carrier", 0);
    return enumerate_truncation(spec, *box);
  }
  if (cfg.contains("box")) return box_points(box_from_json(cfg["box"]));
  throw ParseError("missing field 'carrier' (or 'space' / 'box')", 0);
}

GridRegion region_from(const Json& cfg) {
  if (cfg.contains("region")) return region_from_json(cfg["region"]);
  if (cfg.contains("box")) {
    const auto adj = adjacency_from_string(cfg.value("adjacency", std::string("face")));
    return GridRegion::full(box_from_json(cfg["box"]), adj);
  }
  throw ParseError("missing field 'region' (or 'box')", 0);
}

// ---- space ----------------------------------------------------------------

Outcome space_member(Context& ctx) {
  const Json cfg = ctx.load_config();
  const auto spec = space_from_json(cfg.contains("space") ? cfg["space"] : cfg);
  Json rows = Json::array();
  const Json pts = cfg.contains("points") ? cfg["points"] : Json::array();
  for (const auto& p : pts) {
    const Point x = p.get<Point>();
    rows.push_back({{"point", x}, {"member", is_member(x, spec)}});
  }
  return {Json{{"spec", to_json(spec)}, {"empty_space", spec.is_empty()}, {"points", rows}}};
}

Outcome space_enumerate(Context& ctx) {
  const Json cfg = ctx.load_config();
  const Json& sj = cfg.contains("space") ? cfg["space"] : cfg;
  const auto spec = space_from_json(sj);
  const auto box = space_box_from_json(sj);
  if (!box) throw ParseError("missing field 'box'", 0);
  const auto pts = enumerate_truncation(spec, *box);
  return {Json{{"spec", to_json(spec, box)}, {"count", pts.size()}, {"points", to_json(pts)}}};
}

// ---- cover ----------------------------------------------------------------

Json families_report(const std::vector<CoverFamily>& fams, bool& pass) {
  Json rows = Json::array();
  for (const auto& f : fams) {
    const auto rep = verify_family(f);
    pass = pass && rep.pass;
    Json row = to_json(rep);
    row["name"] = f.name;
    row["r"] = f.r;
    row["B"] = f.B;
    rows.push_back(row);
  }
  return rows;
}

Outcome cover_build(Context& ctx) {
  const Json cfg = ctx.load_config();
  const auto d = cfg.at("dim").get<std::size_t>();
  const auto r = cfg.at("r").get<Coord>();
  const Box box = box_from_json(cfg.at("box"));
  const auto fams = brick_cover(d, r, box);
  bool pass = true;
  Json result{{"families", Json::array()}};
  for (const auto& f : fams) result["families"].push_back(to_json(f));
  result["family_reports"] = families_report(fams, pass);
  const auto cov = verify_cover(fams, box_points(box));
  pass = pass && cov.pass;
  result["cover_report"] = to_json(cov);
  return {result, pass, pass ? kOk : kVerifyFailed};
}

Outcome cover_verify(Context& ctx) {
  const Json cfg = ctx.load_config();
  std::vector<CoverFamily> fams;
  for (const auto& f : cfg.at("families")) fams.push_back(family_from_json(f));
  bool pass = true;
  Json result{{"family_reports", families_report(fams, pass)}};
  if (cfg.contains("carrier") || cfg.contains("space") || cfg.contains("box")) {
    std::size_t dim = fams.empty() ? 0 : fams.front().dim();
    const auto cov = verify_cover(fams, carrier_from(cfg, dim));
    pass = pass && cov.pass;
    result["cover_report"] = to_json(cov);
  }
  return {result, pass, pass ? kOk : kVerifyFailed};
}

Outcome cover_search(Context& ctx) {
  const Json cfg = ctx.load_config();
  CoverProblem problem;
  problem.carrier = carrier_from(cfg, 0);
  problem.sigma = cfg.at("sigma").get<std::vector<Coord>>();
  problem.B_max = cfg.at("B_max").get<Coord>();
  SearchOptions options;
  if (ctx.opt.greedy) options.mode = SearchMode::kGreedy;
  if (ctx.opt.budget > 0) options.node_budget = ctx.opt.budget;
  const auto res = search_cover(problem, options);
  bool pass = true;
  Json result = to_json(res);
  result["mode"] = options.mode == SearchMode::kExact ? "exact" : "greedy";
  result["B_max"] = problem.B_max;
  result["sigma"] = problem.sigma;
  result["carrier_size"] = problem.carrier.size();
  if (res.covered()) {
    // Re-verify the witness as returned.
    result["witness_reports"] = families_report(res.witness, pass);
    const auto cov = verify_cover(res.witness, problem.carrier);
    pass = pass && cov.pass;
    result["witness_cover"] = to_json(cov);
  }
  int code = pass ? kOk : kVerifyFailed;
  if (pass && res.budget_exhausted) code = kBudget;
  return {result, pass, code};
}

// ---- ord ------------------------------------------------------------------

Outcome ord_compute(Context& ctx) {
  const Json cfg = ctx.load_config();
  SetSystem sys;
  if (cfg.contains("bounded_subsets")) {
    const auto& b = cfg["bounded_subsets"];
    sys = SetSystem::bounded_subsets(b.at("n").get<int>(), b.at("k").get<int>());
  } else {
    sys = set_system_from_json(cfg);
  }
  return {Json{{"ord", ord(sys).to_string()}, {"members", sys.size()}}};
}

Outcome ord_compare(Context& ctx) {
  if (ctx.opt.args.size() != 2) throw IoError("ord compare takes two ordinals");
  const auto a = parse_ordinal(ctx.opt.args[0]);
  const auto b = parse_ordinal(ctx.opt.args[1]);
  const auto c = ordinal_compare(a, b);
  const char* word = c < 0 ? "less" : c > 0 ? "greater" : "equal";
  return {Json{{"a", a.to_string()}, {"b", b.to_string()}, {"compare", word}}};
}

// ---- partition ------------------------------------------------------------

Outcome partition_build(Context& ctx) {
  const Json cfg = ctx.load_config();
  const GridRegion region = region_from(cfg);
  const FacePair faces{cfg.value("axis", std::size_t{0})};
  const Coord eps = cfg.at("epsilon").get<Coord>();
  const Coord B = cfg.at("B").get<Coord>();
  CoverFamily obstacles{"obstacles", {}, eps, B / 3};
  if (cfg.contains("obstacles")) {
    obstacles = family_from_json(cfg["obstacles"]);
  } else if (cfg.contains("generate")) {
    Rng rng(ctx.opt.seed);
    obstacles = random_family(rng, "obstacles", region.box(), eps, B / 3,
                              cfg["generate"].value("sets", std::size_t{8}));
  }
  const auto cert = build_partition(region, faces, obstacles, eps, B);
  const auto rep = verify_partition(cert, region, faces);
  bool avoids = true;
  for (const auto& s : obstacles.sets) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (region.box().contains(s[k]) && cert.L.contains(s[k])) avoids = false;
    }
  }
  const bool pass = rep.pass && avoids;
  return {Json{{"certificate", to_json(cert)},
               {"axis", faces.axis},
               {"obstacles", to_json(obstacles)},
               {"verification", to_json(rep)},
               {"L_avoids_obstacles", avoids}},
          pass, pass ? kOk : kVerifyFailed};
}

Outcome partition_verify(Context& ctx) {
  const Json cfg = ctx.load_config();
  const auto cert = partition_certificate_from_json(cfg.at("certificate"));
  GridRegion region = cfg.contains("region") || cfg.contains("box")
                          ? region_from(cfg)
                          : (cert.U | cert.L | cert.W);
  const FacePair faces{cfg.value("axis", std::size_t{0})};
  const auto rep = verify_partition(cert, region, faces);
  return {Json{{"verification", to_json(rep)}}, rep.pass, rep.pass ? kOk : kVerifyFailed};
}

Outcome partition_nested(Context& ctx) {
  const Json cfg = ctx.load_config();
  std::vector<GridRegion> seq;
  std::vector<FacePair> faces;
  std::vector<PartitionCertificate> certs;
  if (cfg.contains("sequence")) {
    for (const auto& r : cfg["sequence"]) seq.push_back(region_from_json(r));
    for (const auto& a : cfg.at("axes")) faces.push_back(FacePair{a.get<std::size_t>()});
    for (const auto& c : cfg.at("certificates")) certs.push_back(partition_certificate_from_json(c));
  } else {
    const GridRegion start = region_from(cfg);
    const Coord eps = cfg.at("epsilon").get<Coord>();
    const Coord B = cfg.at("B").get<Coord>();
    const auto sets = cfg.contains("generate") ? cfg["generate"].value("sets", std::size_t{6}) : 0;
    Rng rng(ctx.opt.seed);
    std::vector<CoverFamily> obstacles;
    for (std::size_t i = 0; i < start.dim(); ++i) {
      obstacles.push_back(random_family(rng, "O" + std::to_string(i + 1), start.box(), eps, B / 3,
                                        sets));
    }
    auto chain = build_nested_chain(start, obstacles, eps, B);
    seq = std::move(chain.sequence);
    faces = std::move(chain.faces);
    certs = std::move(chain.certs);
  }
  const auto rep = check_nested(seq, faces, certs);
  Json result{{"report", to_json(rep)}, {"adjacency", to_string(seq.front().adjacency())}};
  if (!cfg.contains("sequence")) {
    Json cj = Json::array();
    for (const auto& c : certs) cj.push_back(to_json(c));
    result["certificates"] = cj;
  }
  const bool pass = rep.certificates_ok && rep.final_nonempty;
  return {result, pass, pass ? kOk : kVerifyFailed};
}

// ---- adversary ------------------------------------------------------------

bool trace_ok(const AdversaryResult& res) {
  for (const auto& s : res.trace) {
    if (s.failed) continue;
    if (!s.partition_verified || !s.avoids_processed_families) return false;
  }
  return true;
}

Outcome adversary_run(Context& ctx, bool trace_only) {
  const Json cfg = ctx.load_config();
  const auto ac = adversary_config_from_json(cfg, ctx.opt.seed);
  const auto res = refute_cover(ac.params, ac.U, ac.V, ac.W);
  bool pass = trace_ok(res);
  Json result{{"params", to_json(ac.params)}};
  if (trace_only) {
    Json trace = Json::array();
    for (const auto& s : res.trace) trace.push_back(to_json(s));
    result["trace"] = trace;
  } else {
    result.update(to_json(res));
    if (res.certificate) {
      const auto check = verify_obstruction(*res.certificate, ac.params, ac.U, ac.V, ac.W);
      result["certificate_check"] = {{"pass", check.pass}, {"failure", check.failure}};
      pass = pass && check.pass;
    }
    if (cfg.contains("generate")) result["families"] = to_json(ac);
  }
  return {result, pass, pass ? kOk : kVerifyFailed};
}

// ---- plot -----------------------------------------------------------------

Outcome plot_slice_cmd(Context& ctx, std::string& svg) {
  const Json cfg = ctx.load_config();
  std::optional<std::size_t> face_axis;
  if (cfg.contains("face_axis")) face_axis = cfg["face_axis"].get<std::size_t>();
  if (cfg.contains("obstruction")) {
    const auto cert = obstruction_from_json(cfg["obstruction"]);
    std::vector<CoverFamily> fams;
    if (cfg.contains("families")) {
      for (const auto& f : cfg["families"]) fams.push_back(family_from_json(f));
    }
    svg = plot_obstruction(cert, slice_from_json(cfg.value("slice", Json::object()), cert.C.dim()),
                           fams);
  } else if (cfg.contains("certificate")) {
    const auto cert = partition_certificate_from_json(cfg["certificate"]);
    std::vector<PointSet> obstacles;
    if (cfg.contains("obstacles")) obstacles = family_from_json(cfg["obstacles"]).sets;
    svg = plot_partition(cert, slice_from_json(cfg.value("slice", Json::object()), cert.L.dim()),
                         face_axis.value_or(0), obstacles);
  } else {
    const GridRegion r = region_from(cfg);
    svg = plot_slice(r.box(), slice_from_json(cfg.value("slice", Json::object()), r.dim()),
                     {{"region", "#1f77b4", r}}, face_axis);
  }
  return {Json{{"svg_bytes", svg.size()}, {"svg_fnv1a64", fnv1a64(svg)}}};
}

// ---- driver ---------------------------------------------------------------

int run(const std::string& name, const Options& opt,
        const std::function<Outcome(Context&)>& body) {
  Context ctx{opt};
  const auto start = std::chrono::steady_clock::now();
  Json report{{"schema_version", kSchemaVersion}, {"command", name}, {"seed", opt.seed}};
  Outcome out;
  try {
    out = body(ctx);
  } catch (const ParseError& e) {
    out = {Json{{"error", "parse"}, {"message", e.what()}, {"position", e.position()}}, false,
           kUsage};
  } catch (const DomainError& e) {
    out = {Json{{"error", "domain"}, {"message", e.what()}}, false, kUsage};
  } catch (const NoAdmissibleLevel& e) {
    out = {Json{{"error", "no_admissible_level"}, {"message", e.what()}}, false, kVerifyFailed};
  } catch (const ResourceError& e) {
    out = {Json{{"error", "resource"}, {"message", e.what()}}, false, kResource};
  } catch (const IoError& e) {
    out = {Json{{"error", "io"}, {"message", e.what()}}, false, kUsage};
  } catch (const Json::exception& e) {
    out = {Json{{"error", "parse"}, {"message", std::string(opt.config) + ": " + e.what()}}, false,
           kUsage};
  }
  const auto ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["inputs"] = ctx.inputs;
  report["result"] = out.result;
  report["pass"] = out.pass;
  report["exit_code"] = out.code;
  report["timing_ms"] = ms;
  const std::string text = report.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    try {
      write_file(opt.out, text);
    } catch (const IoError& e) {
      std::cerr << e.what() << "\n";
      return kUsage;
    }
  }
  if (report["result"].contains("error")) {
    std::cerr << name << ": " << report["result"]["message"].get<std::string>() << "\n";
  }
  return out.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarselab: coarse-geometry computational lab"};
  app.require_subcommand(1);
  Options opt;
  std::string cert_out, svg_out;
  int code = kOk;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "input JSON")->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "report path (default: stdout)");
    cmd->add_option("--seed", opt.seed, "seed for randomized inputs");
    cmd->add_option("--budget", opt.budget, "node budget for searches");
    auto* ex = cmd->add_flag("--exact", opt.exact, "exact search (default)");
    auto* gr = cmd->add_flag("--greedy", opt.greedy, "greedy search");
    ex->excludes(gr);
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Outcome(Context&)> body) {
    auto* cmd = parent->add_subcommand(name, help);
    common(cmd);
    const std::string full = parent->get_name() + " " + name;
    cmd->callback([&, full, body] { code = run(full, opt, body); });
    return cmd;
  };

  auto* space = app.add_subcommand("space", "lattice spaces X(p,q)");
  space->require_subcommand(1);
  leaf(space, "member", "membership of listed points", space_member);
  leaf(space, "enumerate", "members inside a box", space_enumerate);

  auto* cover = app.add_subcommand("cover", "disjoint bounded families");
  cover->require_subcommand(1);
  leaf(cover, "build", "shifted brick cover", cover_build);
  leaf(cover, "verify", "check families and coverage", cover_verify);
  leaf(cover, "search", "search for a cover of a carrier", cover_search);

  auto* ordc = app.add_subcommand("ord", "ordinal rank of set systems");
  ordc->require_subcommand(1);
  leaf(ordc, "compute", "Ord of a finite set system", ord_compute);
  auto* cmp = leaf(ordc, "compare", "compare two ordinals", ord_compare);
  cmp->add_option("ordinals", opt.args, "two ordinals, e.g. 2w+1 w+1000")->expected(2);

  auto* part = app.add_subcommand("partition", "epsilon-partitions of grid regions");
  part->require_subcommand(1);
  leaf(part, "build", "build a partition avoiding obstacles", partition_build);
  leaf(part, "verify", "check a partition certificate", partition_verify);
  leaf(part, "nested", "check (or build) a nested partition chain", partition_nested);

  auto* adv = app.add_subcommand("adversary", "obstruction pipeline");
  adv->require_subcommand(1);
  auto* advrun = leaf(adv, "run", "refute a candidate cover", [&](Context& ctx) {
    Outcome o = adversary_run(ctx, false);
    if (o.result.contains("certificate")) {
      std::string path = cert_out;
      if (path.empty() && !opt.out.empty()) path = opt.out + ".certificate.json";
      if (!path.empty()) {
        Json c{{"schema_version", kSchemaVersion}, {"seed", opt.seed},
               {"params", o.result["params"]}, {"certificate", o.result["certificate"]}};
        write_file(path, c.dump(2) + "\n");
        o.result["certificate_path"] = path;
      }
    }
    return o;
  });
  advrun->add_option("--cert", cert_out, "certificate path (default: <out>.certificate.json)");
  leaf(adv, "trace", "per-stage cascade report",
       [](Context& ctx) { return adversary_run(ctx, true); });

  auto* plot = app.add_subcommand("plot", "SVG output");
  plot->require_subcommand(1);
  auto* slice = leaf(plot, "slice", "2-d slice of a region or certificate", [&](Context& ctx) {
    std::string svg;
    Outcome o = plot_slice_cmd(ctx, svg);
    if (svg_out.empty()) throw IoError("plot slice needs --svg");
    write_file(svg_out, svg);
    o.result["svg_path"] = svg_out;
    return o;
  });
  slice->add_option("--svg", svg_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  return code;
}
