#pragma once

#include "lbl/appendix.hpp"
#include "lbl/axioms.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace lbl::cli {

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string format = "text";
  std::size_t probes = 0;
  std::uint64_t seed = 1;
  std::string scale = "1";
};

inline std::string read_input(const std::string &path, std::istream &in) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// "chart:c1,c2" with each coordinate a rational or ';'-separated components.
inline ChartPoint parse_chart_point(const AtlasSpace &s, const std::string &text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos)
    throw ParseError("expected chart:coordinates, got '" + text + "'");
  std::string id = text.substr(0, colon);
  auto chart = s.find_chart(id);
  if (!chart)
    throw ParseError("unknown chart '" + id + "'");
  ModelPoint p;
  std::stringstream ss(text.substr(colon + 1));
  std::string part;
  while (std::getline(ss, part, ','))
    p.coords.push_back(parse_scalar(part, s.model().lambda_rank()));
  if (p.rank() != s.model().rank())
    throw ParseError("point '" + text + "' has " + std::to_string(p.rank()) +
                     " coordinates, rank is " + std::to_string(s.model().rank()));
  return {*chart, p};
}

inline void print_json(std::ostream &out, const json &j) { out << j.dump(2) << "\n"; }

inline int run(const std::vector<std::string> &args, std::istream &in,
               std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact checks for spaces modeled on affine apartments", "lbl"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.probes = default_probe_budget();

  auto add_common = [&](CLI::App *sub, bool with_input) {
    if (with_input)
      sub->add_option("input", cfg.input, "atlas file, or - for stdin")->required();
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_probe_flags = [&](CLI::App *sub) {
    sub->add_option("--probes", cfg.probes, "probe budget per condition")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for sampled probes");
    sub->add_option("--scale", cfg.scale, "metric scale factor p/q");
  };

  std::string condition;
  auto *check = app.add_subcommand("check", "check one condition");
  add_common(check, true);
  add_probe_flags(check);
  check->add_option("--condition", condition, "condition id")->required();

  auto *check_all_cmd = app.add_subcommand("check-all", "check every condition");
  add_common(check_all_cmd, true);
  add_probe_flags(check_all_cmd);

  std::string from, to;
  auto *distance = app.add_subcommand("distance", "distance between two points");
  add_common(distance, true);
  distance->add_option("--from", from)->required();
  distance->add_option("--to", to)->required();
  distance->add_option("--scale", cfg.scale, "metric scale factor p/q");

  std::string target, center, point;
  std::size_t center_w = 0;
  auto *retract_cmd = app.add_subcommand("retract", "germ retraction of a point");
  add_common(retract_cmd, true);
  retract_cmd->add_option("--chart", target, "target apartment (default: center's chart)");
  retract_cmd->add_option("--center", center, "base point of the center germ")->required();
  retract_cmd->add_option("--weyl", center_w, "Weyl index of the center germ");
  retract_cmd->add_option("--point", point)->required();

  auto *residue_cmd = app.add_subcommand("residue", "chamber germs at a point");
  add_common(residue_cmd, true);
  residue_cmd->add_option("--point", point)->required();

  std::string type = "A1";
  std::vector<std::string> sides;
  std::size_t lambda_rank = 1;
  auto *counter = app.add_subcommand("counterexample", "glued triangle space");
  counter->add_option("--type", type, "root system type");
  counter->add_option("--sides", sides, "side lengths s1 s2 s3")->expected(3)->required();
  counter->add_option("--lambda-rank", lambda_rank)->check(CLI::PositiveNumber);

  std::size_t rounds = 1;
  std::string lambda;
  auto *extend = app.add_subcommand("extend", "extension rounds along lambda_seq");
  add_common(extend, true);
  extend->add_option("--rounds", rounds);
  extend->add_option("--lambda", lambda, "first radius; sets lambda_i = i * lambda");

  auto *admissible = app.add_subcommand("admissible", "conditions T0-T3");
  add_common(admissible, true);
  admissible->add_option("--lambda", lambda, "radius (default: current one in lambda_seq)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto load = [&] {
      AtlasSpace s = io::parse_atlas(read_input(cfg.input, in));
      Rational q = parse_rational(cfg.scale);
      if (q <= 0)
        throw ParseError("scale must be positive");
      return q == 1 ? s : s.with_metric_scale(q);
    };
    ProbeConfig probes{cfg.probes, cfg.seed};

    if (*check) {
      if (!is_condition(condition))
        throw ParseError("unknown condition '" + condition + "'");
      AtlasSpace s = load();
      AxiomReport rep;
      rep.results.push_back(lbl::check(s, condition, probes));
      rep.audit = audit(rep.results);
      rep.probes = probes;
      rep.metric_scale = s.model().metric_scale();
      if (cfg.format == "json")
        print_json(out, to_json(rep));
      else
        out << to_text(rep);
      return rep.any_fail() ? 1 : 0;
    }
    if (*check_all_cmd) {
      AtlasSpace s = load();
      AxiomReport rep = check_all(s, probes);
      if (cfg.format == "json")
        print_json(out, to_json(rep));
      else
        out << to_text(rep);
      return rep.any_fail() ? 1 : 0;
    }
    if (*distance) {
      AtlasSpace s = load();
      auto x = parse_chart_point(s, from), y = parse_chart_point(s, to);
      auto d = s.distance(x, y);
      if (cfg.format == "json") {
        json j{{"from", io::to_json(s, x)}, {"to", io::to_json(s, y)}};
        j["distance"] = d ? io::to_json(*d) : json(nullptr);
        print_json(out, j);
      } else if (d) {
        out << d->to_string() << "\n";
      } else {
        out << "undefined: no apartment contains both points\n";
      }
      return d ? 0 : 1;
    }
    if (*retract_cmd) {
      AtlasSpace s = load();
      ChartPoint c = parse_chart_point(s, center);
      if (center_w >= s.roots().weyl_order())
        throw ParseError("Weyl index out of range");
      Retraction r{target.empty() ? c.chart : s.chart_index(target),
                   XGerm{c.chart, s.model().chamber(c.coords, center_w)}};
      auto y = parse_chart_point(s, point);
      auto v = Retractor(s, r).evaluate(y);
      if (!v.consistent)
        throw Error("retraction of " + s.describe(y) + " depends on the intermediate chart");
      if (cfg.format == "json") {
        json j{{"chart", s.chart_id(r.chart)}, {"point", io::to_json(s, y)}};
        j["image"] = v.value ? io::to_json(*v.value) : json(nullptr);
        print_json(out, j);
      } else if (v.value) {
        out << v.value->to_string() << "\n";
      } else {
        out << "undefined: no apartment contains the point and the center\n";
      }
      return v.value ? 0 : 1;
    }
    if (*residue_cmd) {
      AtlasSpace s = load();
      auto res = s.residue(parse_chart_point(s, point));
      std::size_t missing = 0;
      for (std::size_t i = 0; i < res.chambers.size(); ++i)
        for (std::size_t j = i + 1; j < res.chambers.size(); ++j)
          missing += !res.co_apartment(i, j);
      if (cfg.format == "json") {
        json j;
        j["base"] = io::to_json(s, res.base);
        json ch = json::array();
        for (auto &g : res.chambers)
          ch.push_back(io::to_json(s, g));
        j["chambers"] = ch;
        json ap = json::array();
        for (std::size_t k = 0; k < res.apartments.size(); ++k)
          ap.push_back({{"chart", s.chart_id(res.apartment_charts[k])},
                        {"chambers", res.apartments[k]}});
        j["apartments"] = ap;
        j["adjacent"] = res.adjacent;
        j["pairs_without_apartment"] = missing;
        j["conflicts"] = res.conflicts;
        print_json(out, j);
      } else {
        out << "base " << s.describe(res.base) << "\n";
        out << "chambers " << res.chambers.size() << "\n";
        for (std::size_t i = 0; i < res.chambers.size(); ++i)
          out << "  " << i << " " << s.chart_id(res.chambers[i].chart) << " w"
              << res.chambers[i].simplex.direction << "\n";
        out << "adjacent pairs " << res.adjacent.size() << "\n";
        out << "pairs without a common apartment " << missing << "\n";
        out << "weyl distance conflicts " << res.conflicts.size() << "\n";
      }
      return res.conflicts.empty() ? 0 : 1;
    }
    if (*counter) {
      ModelSpace m = make_model(type, lambda_rank);
      std::array<LambdaScalar, 3> s3{parse_scalar(sides[0], lambda_rank),
                                     parse_scalar(sides[1], lambda_rank),
                                     parse_scalar(sides[2], lambda_rank)};
      print_json(out, io::to_json(triangle_counterexample(m, s3)));
      return 0;
    }
    if (*extend) {
      AtlasSpace s = load();
      if (!lambda.empty()) {
        s.lambda_seq = linear_lambda_seq(parse_scalar(lambda, s.model().lambda_rank()),
                                         s.lambda_level + rounds + 1);
      }
      if (s.lambda_seq.empty())
        throw ParseError("extend needs lambda_seq in the atlas or --lambda");
      print_json(out, io::to_json(iterate(s, rounds)));
      return 0;
    }
    if (*admissible) {
      AtlasSpace s = load();
      LambdaScalar l = lambda.empty() ? LambdaScalar(s.model().lambda_rank())
                                      : parse_scalar(lambda, s.model().lambda_rank());
      if (lambda.empty()) {
        if (s.lambda_seq.empty())
          throw ParseError("admissible needs lambda_seq in the atlas or --lambda");
        l = s.lambda_seq[s.lambda_level];
      }
      auto rep = is_admissible(s, l);
      if (cfg.format == "json") {
        print_json(out, json{{"lambda", io::to_json(l)},
                             {"T0", rep.t0},
                             {"T1", rep.t1},
                             {"T2", rep.t2},
                             {"T3", rep.t3},
                             {"problems", rep.problems}});
      } else {
        out << "lambda " << l.to_string() << "\n";
        out << "T0 " << (rep.t0 ? "PASS" : "FAIL") << "\n";
        out << "T1 " << (rep.t1 ? "PASS" : "FAIL") << "\n";
        out << "T2 " << (rep.t2 ? "PASS" : "FAIL") << "\n";
        out << "T3 " << (rep.t3 ? "PASS" : "FAIL") << "\n";
        for (auto &p : rep.problems)
          out << "  " << p << "\n";
      }
      return rep.ok() ? 0 : 1;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

} // namespace lbl::cli
