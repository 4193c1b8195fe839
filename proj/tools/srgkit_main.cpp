#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srgkit/case_studies.hpp"
#include "srgkit/cloud_io.hpp"
#include "srgkit/geometry.hpp"
#include "srgkit/operators.hpp"
#include "srgkit/pairings.hpp"
#include "srgkit/srg.hpp"
#include "srgkit/svg.hpp"

using nlohmann::json;
using namespace srgkit;

namespace {

std::string fmtg(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

double parse_component(const std::string& field, std::size_t pos,
                       const std::string& flag) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw std::runtime_error(flag + ": component " + std::to_string(pos + 1) +
                             " is not a number ('" + field + "')");
  return value;
}

Vec parse_vec_arg(const std::string& text, const std::string& flag) {
  std::vector<double> coords;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string field = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    coords.push_back(parse_component(field, coords.size(), flag));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Vec(std::move(coords));
}

Mat load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string field = line.substr(
          start,
          comma == std::string::npos ? std::string::npos : comma - start);
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": bad number '" + field + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty matrix");
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

struct SeedChoice {
  std::uint64_t value = 0;
  std::string source = "default";
};

SeedChoice resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt != nullptr && seed_opt->count() > 0)
    return {flag_value, "flag"};
  if (const char* env = std::getenv("SRGKIT_SEED")) {
    SeedChoice c;
    c.source = "env SRGKIT_SEED";
    std::string text = env;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), c.value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw std::runtime_error("SRGKIT_SEED is not an integer: '" + text + "'");
    return c;
  }
  return {};
}

PairingKind spec_or_throw(const std::string& name) {
  auto spec = parse_pairing(name);
  if (!spec) throw std::runtime_error("unknown spec '" + name + "'");
  return *spec;
}

struct MdpOptions {
  std::size_t states = 8;
  std::size_t actions = 3;
  double gamma = 0.7;
  double alpha = 0.25;
};

struct BuiltOp {
  Operator op;
  IncrementSampler sampler;
  json info;
};

Policy first_action_policy(std::size_t states) {
  Policy pi;
  pi.action.assign(states, 0);
  return pi;
}

double max_reward(const Mdp& mdp) {
  double r = 0.0;
  for (double x : mdp.rewards) r = std::max(r, x);
  return r;
}

BuiltOp build_operator(const std::string& id, const std::string& matrix_path,
                       const MdpOptions& mdp_opts, std::uint64_t seed) {
  if (!matrix_path.empty()) {
    Mat m = load_matrix_csv(matrix_path);
    return {Operator::matrix(std::move(m)), IncrementSampler::mixed(),
            json{{"operator", "matrix:" + matrix_path}}};
  }
  if (id == "a1")
    return {Operator::matrix(matrix_a1()), IncrementSampler::mixed(),
            json{{"operator", "a1"}}};
  if (id == "ainf")
    return {Operator::matrix(matrix_ainf()), IncrementSampler::mixed(),
            json{{"operator", "ainf"}}};
  if (id == "f1")
    return {cubic_diag_operator(matrix_a1(), "f1"), IncrementSampler::mixed(),
            json{{"operator", "f1"}}};
  if (id == "finf")
    return {cubic_diag_operator(matrix_ainf(), "finf"),
            IncrementSampler::mixed(), json{{"operator", "finf"}}};
  if (id == "bellman" || id == "bellman_reg") {
    Mdp mdp = random_mdp(mdp_opts.states, mdp_opts.actions, seed,
                         mdp_opts.gamma);
    Policy pi = first_action_policy(mdp_opts.states);
    double range = max_reward(mdp) / (1.0 - mdp_opts.gamma);
    json info{{"operator", id},
              {"states", mdp_opts.states},
              {"actions", mdp_opts.actions},
              {"gamma", mdp_opts.gamma},
              {"value_range", range}};
    if (id == "bellman")
      return {bellman_operator(mdp, pi), IncrementSampler::value_range(range),
              std::move(info)};
    info["alpha"] = mdp_opts.alpha;
    return {regularized_bellman_operator(mdp, pi, mdp_opts.alpha),
            IncrementSampler::value_range(range), std::move(info)};
  }
  throw std::runtime_error("unknown operator id '" + id +
                           "' (builtins: a1, ainf, f1, finf, bellman, "
                           "bellman_reg)");
}

IncrementSampler sampler_by_id(const std::string& id, double range) {
  if (id == "gaussian") return IncrementSampler::gaussian();
  if (id == "laplace") return IncrementSampler::laplace();
  if (id == "sign") return IncrementSampler::sign_vectors();
  if (id == "impulse") return IncrementSampler::impulses();
  if (id == "mixed") return IncrementSampler::mixed();
  if (id == "value-range") return IncrementSampler::value_range(range);
  throw std::runtime_error("unknown sampler '" + id + "'");
}

json witness_json(const std::optional<SrgPoint>& w) {
  if (!w) return nullptr;
  json j{{"gain", json_number(w->gain)},
         {"phase_rad", w->phase},
         {"is_infinity", w->is_infinity},
         {"sample_index", w->sample_index}};
  if (!w->is_infinity) {
    j["re"] = w->re();
    j["im"] = w->im();
  }
  return j;
}

json certificate_json(const CertificateReport& rep) {
  return json{
      {"property", std::string(property_name(rep.property))},
      {"parameter", rep.parameter},
      {"tolerance", rep.tolerance},
      {"verdict", rep.verdict == CertificateReport::Verdict::HoldsOnSamples
                      ? "holds_on_samples"
                      : "violated"},
      {"margin", json_number(rep.margin)},
      {"witness", witness_json(rep.witness)}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

struct CloudStats {
  std::optional<double> min_re;
  std::optional<double> max_re;
  double max_gain = 0.0;
  bool has_infinity = false;
  std::size_t finite = 0;
  std::size_t infinite = 0;
};

CloudStats cloud_stats(const SrgCloud& cloud) {
  CloudStats s;
  for (const SrgPoint& p : cloud.points) {
    if (p.is_infinity) {
      ++s.infinite;
      s.has_infinity = true;
      continue;
    }
    ++s.finite;
    s.max_gain = std::max(s.max_gain, p.gain);
    double re = p.re();
    if (!s.min_re || re < *s.min_re) s.min_re = re;
    if (!s.max_re || re > *s.max_re) s.max_re = re;
  }
  return s;
}

json stats_json(const CloudStats& s) {
  return json{{"min_re", s.min_re ? json(*s.min_re) : json(nullptr)},
              {"max_re", s.max_re ? json(*s.max_re) : json(nullptr)},
              {"max_gain", s.has_infinity ? json("inf") : json(s.max_gain)},
              {"finite_points", s.finite},
              {"infinity_points", s.infinite}};
}

struct Check {
  OperatorProperty property;
  double parameter;
};

Check parse_check(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("--check wants property:parameter, got '" + text +
                             "'");
  auto prop = parse_property(text.substr(0, colon));
  if (!prop)
    throw std::runtime_error("unknown property '" + text.substr(0, colon) +
                             "' (lipschitz, one-sided, strongly-monotone, "
                             "cocoercive)");
  std::string rest = text.substr(colon + 1);
  double param = 0.0;
  auto [ptr, ec] =
      std::from_chars(rest.data(), rest.data() + rest.size(), param);
  if (ec != std::errc{} || ptr != rest.data() + rest.size())
    throw std::runtime_error("bad parameter in '" + text + "'");
  return {*prop, param};
}

RegionOverlay overlay_for(const Check& c) {
  switch (c.property) {
    case OperatorProperty::Lipschitz:
      return RegionOverlay::circle(0.0, c.parameter, "|z| <= " +
                                   fmtg(c.parameter), "#d62728");
    case OperatorProperty::OneSided:
      return RegionOverlay::vline(c.parameter, "re <= " + fmtg(c.parameter),
                                  "#2ca02c");
    case OperatorProperty::StronglyMonotone:
      return RegionOverlay::vline(c.parameter, "re >= " + fmtg(c.parameter),
                                  "#2ca02c");
    case OperatorProperty::Cocoercive: {
      double r = 1.0 / (2.0 * c.parameter);
      return RegionOverlay::circle(r, r, "cocoercive " + fmtg(c.parameter),
                                   "#9467bd");
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- pair ----

void print_pair_block(const Vec& x, const Vec& y, PairingKind kind) {
  std::cout << "== spec " << pairing_name(kind) << " ==\n";
  std::cout << "  ||x|| = " << fmtg(norm(x, kind))
            << "   ||y|| = " << fmtg(norm(y, kind)) << "\n";
  double xy = pair(x, y, kind);
  double yx = pair(y, x, kind);
  double rxy = -pair(-x, y, kind);
  double ryx = -pair(-y, x, kind);
  std::cout << "  [x,y] = " << fmtg(xy) << "   [y,x] = " << fmtg(yx) << "\n";
  std::cout << "  -[-x,y] = " << fmtg(rxy) << "   -[-y,x] = " << fmtg(ryx)
            << "\n";
  if (xy != rxy || yx != ryx)
    std::cout << "  note: pairing is not odd in its first slot here\n";
  if (kind == PairingKind::LInfMax || kind == PairingKind::LInfMinIndex) {
    for (auto [label, v] : {std::pair<const char*, const Vec*>{"x", &x},
                            {"y", &y}}) {
      PeakInfo info = peak_info(*v);
      std::cout << "  peaks(" << label << ") = {";
      for (std::size_t i = 0; i < info.indices.size(); ++i)
        std::cout << (i ? "," : "") << info.indices[i] + 1;
      std::cout << "}  first peak " << info.min_index + 1 << "\n";
    }
  }
  if (!x.is_zero() && !y.is_zero()) {
    DirectionalAngle l = cos_left(x, y, kind);
    DirectionalAngle r = cos_right(x, y, kind);
    std::cout << "  cos left = " << fmtg(l.cos_value)
              << "   angle left = " << fmtg(l.angle_rad) << " rad\n";
    std::cout << "  cos right = " << fmtg(r.cos_value)
              << "   angle right = " << fmtg(r.angle_rad) << " rad\n";
  }
}

int cmd_pair(const std::string& x_text, const std::string& y_text,
             const std::string& spec_name) {
  Vec x = parse_vec_arg(x_text, "--x");
  Vec y = parse_vec_arg(y_text, "--y");
  if (x.size() != y.size())
    throw std::runtime_error("--x and --y must have the same dimension");
  if (spec_name.empty()) {
    for (PairingKind kind : kAllPairings) print_pair_block(x, y, kind);
  } else {
    print_pair_block(x, y, spec_or_throw(spec_name));
  }
  return 0;
}

// ----------------------------------------------------------------- srg ----

int cmd_srg(const std::string& op_id, const std::string& matrix_path,
            const MdpOptions& mdp_opts, const std::string& spec_name,
            const std::string& side_name_text, const std::string& sampler_id,
            double range, std::size_t n, const SeedChoice& seed,
            const std::vector<std::string>& check_texts,
            const std::string& out_dir) {
  PairingKind spec = spec_or_throw(spec_name);
  auto side = parse_side(side_name_text);
  if (!side) throw std::runtime_error("unknown side '" + side_name_text + "'");

  BuiltOp built = build_operator(op_id, matrix_path, mdp_opts, seed.value);
  IncrementSampler sampler =
      sampler_id.empty() ? built.sampler : sampler_by_id(sampler_id, range);

  SrgCloud cloud = sample_srg(built.op, spec, *side, sampler, n, seed.value);
  CloudStats stats = cloud_stats(cloud);

  json summary;
  summary["cloud"] = stats_json(stats);
  json checks = json::array();
  std::vector<RegionOverlay> overlays;
  for (const std::string& text : check_texts) {
    Check c = parse_check(text);
    CertificateReport rep = certify(cloud, c.property, c.parameter);
    checks.push_back(certificate_json(rep));
    overlays.push_back(overlay_for(c));
  }
  summary["checks"] = checks;

  json config{{"command", "srg"},
              {"spec", std::string(pairing_name(spec))},
              {"side", std::string(srgkit::side_name(*side))},
              {"sampler", sampler.id()},
              {"n", n},
              {"seed", seed.value},
              {"seed_source", seed.source},
              {"checks", check_texts},
              {"out_dir", out_dir}};
  config.update(built.info);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_cloud(out_dir + "/cloud.csv", cloud);
    PlotStyle style;
    style.title = config["operator"].get<std::string>() + " | " +
                  std::string(pairing_name(spec)) + " | " +
                  std::string(srgkit::side_name(*side));
    write_svg(out_dir + "/cloud.svg", {&cloud, 1}, overlays, style);
    write_text(out_dir + "/summary.json", summary.dump(2) + "\n");
    write_text(out_dir + "/config.json", config.dump(2) + "\n");
  }

  std::cout << "points: " << cloud.points.size()
            << " (infinity: " << stats.infinite << ")\n";
  if (stats.min_re)
    std::cout << "re range: [" << fmtg(*stats.min_re) << ", "
              << fmtg(*stats.max_re) << "]\n";
  std::cout << "max gain: "
            << (stats.has_infinity ? std::string("inf") : fmtg(stats.max_gain))
            << "\n";
  for (const auto& c : checks)
    std::cout << "check " << c["property"].get<std::string>() << "("
              << fmtg(c["parameter"].get<double>())
              << "): " << c["verdict"].get<std::string>() << "\n";
  if (!out_dir.empty()) std::cout << "wrote " << out_dir << "/cloud.csv\n";
  return 0;
}

// ------------------------------------------------------------- certify ----

int cmd_certify(const std::string& cloud_path, const std::string& property,
                double parameter, double tolerance,
                const std::string& report_path) {
  SrgCloud cloud;
  try {
    cloud = read_cloud(cloud_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto prop = parse_property(property);
  if (!prop) {
    std::cerr << "error: unknown property '" << property << "'\n";
    return 2;
  }
  CertificateReport rep = certify(cloud, *prop, parameter, tolerance);
  json out = certificate_json(rep);
  out["cloud"] = cloud_path;
  out["points"] = cloud.points.size();
  std::cout << out.dump(2) << "\n";
  if (!report_path.empty()) write_text(report_path, out.dump(2) + "\n");
  return rep.verdict == CertificateReport::Verdict::HoldsOnSamples ? 0 : 1;
}

// ------------------------------------------------------------ calculus ----

// Gain and real part pin a point of the upper half plane and stay well
// conditioned; the raw angle does not (acos amplifies one-ulp cosine noise
// by 1/sin near the real axis), so it is not part of the agreement test.
struct Deviation {
  double gain = 0.0;
  double re = 0.0;
  std::size_t compared = 0;
  std::size_t mismatched_kind = 0;  // finite vs infinity disagreements
};

Deviation compare_clouds(const SrgCloud& a, const SrgCloud& b) {
  Deviation d;
  std::size_t n = std::min(a.points.size(), b.points.size());
  d.mismatched_kind +=
      std::max(a.points.size(), b.points.size()) - n;
  for (std::size_t i = 0; i < n; ++i) {
    const SrgPoint& p = a.points[i];
    const SrgPoint& q = b.points[i];
    if (p.is_infinity != q.is_infinity) {
      ++d.mismatched_kind;
      continue;
    }
    ++d.compared;
    if (p.is_infinity) continue;
    d.gain = std::max(d.gain, std::abs(p.gain - q.gain));
    d.re = std::max(d.re, std::abs(p.re() - q.re()));
  }
  return d;
}

int cmd_calculus(const std::string& operation, const std::string& op_a,
                 const std::string& op_b, double alpha,
                 const std::string& spec_name, const std::string& sampler_id,
                 double range, std::size_t n, const SeedChoice& seed,
                 double tol, double sigma_slack) {
  PairingKind spec = spec_or_throw(spec_name);
  if (!is_sip(spec))
    throw std::runtime_error(
        "calculus needs a pairing that is linear in its first slot; "
        "linf-max is not (use l1, l2, or linf-min)");

  MdpOptions mdp_opts;
  BuiltOp a = build_operator(op_a, "", mdp_opts, seed.value);
  IncrementSampler sampler =
      sampler_id.empty() ? a.sampler : sampler_by_id(sampler_id, range);

  json report{{"command", "calculus"},
              {"operation", operation},
              {"spec", std::string(pairing_name(spec))},
              {"n", n},
              {"seed", seed.value},
              {"seed_source", seed.source},
              {"tolerance", tol}};
  report.update(a.info);
  report["op_a"] = report["operator"];
  report.erase("operator");

  auto pairs = draw_pairs(sampler, n, seed.value, a.op.dim());
  auto rec_a = increments_from_pairs(a.op, pairs, spec);

  if (operation == "scale") {
    SrgCloud left = cloud_from_increments(rec_a, spec, Side::Left,
                                          {sampler.id(), n, seed.value});
    SrgCloud scaled = srg_scale(left, alpha);
    auto rec_scaled = increments_from_pairs(op_scale(alpha, a.op), pairs, spec);
    SrgCloud fresh = cloud_from_increments(rec_scaled, spec, Side::Left,
                                           {sampler.id(), n, seed.value});
    Deviation dev = compare_clouds(scaled, fresh);
    report["alpha"] = alpha;
    report["points_compared"] = dev.compared;
    report["kind_mismatches"] = dev.mismatched_kind;
    report["max_gain_deviation"] = dev.gain;
    report["max_re_deviation"] = dev.re;
    bool ok = dev.mismatched_kind == 0 && dev.gain <= tol && dev.re <= tol;
    report["agrees"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : 1;
  }

  if (operation == "invert") {
    SrgCloud right = cloud_from_increments(rec_a, spec, Side::Right,
                                           {sampler.id(), n, seed.value});
    SrgCloud inverted = srg_invert(right);
    auto rec_swapped = swap_increments(rec_a);
    SrgCloud direct = cloud_from_increments(rec_swapped, spec, Side::Left,
                                            {sampler.id(), n, seed.value});
    Deviation dev = compare_clouds(inverted, direct);
    report["points_compared"] = dev.compared;
    report["kind_mismatches"] = dev.mismatched_kind;
    report["max_gain_deviation"] = dev.gain;
    report["max_re_deviation"] = dev.re;
    bool ok = dev.mismatched_kind == 0 && dev.gain <= tol && dev.re <= tol;
    report["agrees"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : 1;
  }

  if (operation != "add" && operation != "compose")
    throw std::runtime_error("unknown operation '" + operation +
                             "' (scale, invert, add, compose)");
  if (op_b.empty())
    throw std::runtime_error("--op-b is required for add/compose");

  BuiltOp b = build_operator(op_b, "", mdp_opts, seed.value);
  if (b.op.dim() != a.op.dim())
    throw std::runtime_error("operand dimensions differ");
  auto rec_b = increments_from_pairs(b.op, pairs, spec);
  SrgCloud cloud_b = cloud_from_increments(rec_b, spec, Side::Left,
                                           {sampler.id(), n, seed.value});
  report["op_b"] = b.info["operator"];

  if (operation == "add") {
    SrgCloud cloud_a = cloud_from_increments(rec_a, spec, Side::Left,
                                             {sampler.id(), n, seed.value});
    auto rec_sum = increments_from_pairs(op_add(a.op, b.op), pairs, spec);
    SrgCloud cloud_sum = cloud_from_increments(rec_sum, spec, Side::Left,
                                               {sampler.id(), n, seed.value});
    std::size_t contained = 0;
    for (const SrgPoint& z : cloud_sum.points)
      if (boxplus_contains(cloud_a, cloud_b, z, tol)) ++contained;
    report["points_tested"] = cloud_sum.points.size();
    report["points_contained"] = contained;
    bool ok = contained == cloud_sum.points.size();
    report["fully_contained"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : 1;
  }

  // compose: a after b
  std::vector<std::pair<Vec, Vec>> pushed(rec_b.size());
  for (std::size_t i = 0; i < rec_b.size(); ++i)
    pushed[i] = {b.op(rec_b[i].x1), b.op(rec_b[i].x2)};
  auto rec_a_pushed = increments_from_pairs(a.op, pushed, spec);
  SrgCloud cloud_a_pushed = cloud_from_increments(
      rec_a_pushed, spec, Side::Left, {sampler.id(), n, seed.value});
  double sigma = sigma_from_increments(rec_a_pushed, spec) * sigma_slack;
  auto rec_comp = increments_from_pairs(op_compose(a.op, b.op), pairs, spec);
  SrgCloud cloud_comp = cloud_from_increments(rec_comp, spec, Side::Left,
                                              {sampler.id(), n, seed.value});
  std::size_t contained = 0;
  for (const SrgPoint& z : cloud_comp.points)
    if (diamond_contains(cloud_a_pushed, cloud_b, sigma, z, tol)) ++contained;
  report["sigma"] = sigma;
  report["sigma_slack"] = sigma_slack;
  report["points_tested"] = cloud_comp.points.size();
  report["points_contained"] = contained;
  bool ok = contained == cloud_comp.points.size();
  report["fully_contained"] = ok;
  std::cout << report.dump(2) << "\n";
  return ok ? 0 : 1;
}

// ------------------------------------------------------------- bellman ----

int cmd_bellman(const MdpOptions& opts, const SeedChoice& seed, std::size_t n,
                const std::string& out_dir) {
  Mdp mdp = random_mdp(opts.states, opts.actions, seed.value, opts.gamma);
  Policy pi = first_action_policy(opts.states);
  Operator t_pi = bellman_operator(mdp, pi);
  Operator t_reg = regularized_bellman_operator(mdp, pi, opts.alpha);
  double range = max_reward(mdp) / (1.0 - opts.gamma);
  IncrementSampler sampler = IncrementSampler::value_range(range);

  PairingKind spec = PairingKind::LInfMax;
  SrgCloud cloud_pi =
      sample_srg(t_pi, spec, Side::Left, sampler, n, seed.value);
  SrgCloud cloud_reg =
      sample_srg(t_reg, spec, Side::Left, sampler, n, seed.value);

  ContractionFactor f_pi = contraction_factor(cloud_pi);
  ContractionFactor f_reg = contraction_factor(cloud_reg);
  CertificateReport cert_pi =
      certify(cloud_pi, OperatorProperty::Lipschitz, opts.gamma);
  CertificateReport cert_reg = certify(cloud_reg, OperatorProperty::Lipschitz,
                                       opts.gamma + opts.alpha);

  Vec v0 = Vec::zeros(opts.states);
  ValueIterationResult vi_pi = value_iteration(t_pi, v0, 2000, 1e-10);
  ValueIterationResult vi_reg = value_iteration(t_reg, v0, 2000, 1e-10);
  Vec v_star = policy_value(mdp, pi);
  double residual =
      norm(bellman_apply(mdp, pi, v_star) - v_star, PairingKind::LInfMax);

  json summary{
      {"gamma", opts.gamma},
      {"alpha", opts.alpha},
      {"value_range", range},
      {"policy_gain", json_number(f_pi.at_infinity
                                      ? std::numeric_limits<double>::infinity()
                                      : f_pi.value)},
      {"regularized_gain",
       json_number(f_reg.at_infinity ? std::numeric_limits<double>::infinity()
                                     : f_reg.value)},
      {"policy_certificate", certificate_json(cert_pi)},
      {"regularized_certificate", certificate_json(cert_reg)},
      {"regularized_margin_below_envelope",
       opts.gamma + opts.alpha - f_reg.value},
      {"vi_policy",
       {{"iterations", vi_pi.iterations},
        {"converged", vi_pi.converged},
        {"observed_rate", vi_pi.observed_rate}}},
      {"vi_regularized",
       {{"iterations", vi_reg.iterations},
        {"converged", vi_reg.converged},
        {"observed_rate", vi_reg.observed_rate}}},
      {"fixed_point_residual", residual}};

  json config{{"command", "bellman"}, {"states", opts.states},
              {"actions", opts.actions}, {"gamma", opts.gamma},
              {"alpha", opts.alpha},     {"n", n},
              {"seed", seed.value},      {"seed_source", seed.source},
              {"sampler", sampler.id()}, {"spec", "linf-max"},
              {"side", "left"},          {"out_dir", out_dir}};

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_cloud(out_dir + "/cloud_policy.csv", cloud_pi);
    write_cloud(out_dir + "/cloud_regularized.csv", cloud_reg);
    std::vector<SrgCloud> clouds{cloud_pi, cloud_reg};
    std::vector<RegionOverlay> overlays{
        RegionOverlay::circle(0.0, opts.gamma, "|z| <= " + fmtg(opts.gamma),
                              "#555555", true),
        RegionOverlay::circle(0.0, opts.gamma + opts.alpha,
                              "|z| <= " + fmtg(opts.gamma + opts.alpha),
                              "#d62728", false)};
    PlotStyle style;
    style.title = "policy evaluation vs regularized";
    write_svg(out_dir + "/bellman.svg", clouds, overlays, style);
    write_text(out_dir + "/summary.json", summary.dump(2) + "\n");
    write_text(out_dir + "/config.json", config.dump(2) + "\n");
  }

  std::cout << "policy operator max gain: "
            << (f_pi.at_infinity ? std::string("inf") : fmtg(f_pi.value))
            << " (bound " << fmtg(opts.gamma) << ")\n";
  std::cout << "regularized max gain: "
            << (f_reg.at_infinity ? std::string("inf") : fmtg(f_reg.value))
            << " (bound " << fmtg(opts.gamma + opts.alpha) << ")\n";
  std::cout << "value iteration rates: policy " << fmtg(vi_pi.observed_rate)
            << ", regularized " << fmtg(vi_reg.observed_rate) << "\n";
  std::cout << "fixed point residual: " << fmtg(residual) << "\n";
  if (!out_dir.empty()) std::cout << "wrote " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairings, directional angles, and SRG clouds on l1/l2/linf"};
  app.require_subcommand(1);

  // pair
  auto* pair_cmd =
      app.add_subcommand("pair", "pairings, norms, peaks, and cosines of x,y");
  std::string pair_x, pair_y, pair_spec;
  pair_cmd->add_option("--x", pair_x, "comma-separated coordinates")
      ->required();
  pair_cmd->add_option("--y", pair_y, "comma-separated coordinates")
      ->required();
  pair_cmd->add_option("--spec", pair_spec,
                       "restrict to one of l1, l2, linf-max, linf-min");

  // srg
  auto* srg_cmd = app.add_subcommand("srg", "sample an SRG cloud to files");
  std::string srg_op = "a1", srg_matrix, srg_spec = "l2", srg_side = "left";
  std::string srg_sampler, srg_out;
  MdpOptions srg_mdp;
  double srg_range = 1.0;
  std::size_t srg_n = 5000;
  std::uint64_t srg_seed = 0;
  std::vector<std::string> srg_checks;
  srg_cmd->add_option("--op", srg_op,
                      "builtin operator id (a1, ainf, f1, finf, bellman, "
                      "bellman_reg)");
  srg_cmd->add_option("--matrix", srg_matrix, "CSV matrix file instead");
  srg_cmd->add_option("--spec", srg_spec, "l1, l2, linf-max, linf-min");
  srg_cmd->add_option("--side", srg_side, "left or right");
  srg_cmd->add_option("--sampler", srg_sampler,
                      "gaussian, laplace, sign, impulse, mixed, value-range");
  srg_cmd->add_option("--range", srg_range, "half-width for value-range");
  srg_cmd->add_option("--n", srg_n, "sample count");
  auto* srg_seed_opt = srg_cmd->add_option("--seed", srg_seed, "RNG seed");
  srg_cmd->add_option("--check", srg_checks,
                      "property:parameter, repeatable");
  srg_cmd->add_option("--out-dir", srg_out, "output directory");
  srg_cmd->add_option("--states", srg_mdp.states, "MDP states (bellman ops)");
  srg_cmd->add_option("--actions", srg_mdp.actions, "MDP actions");
  srg_cmd->add_option("--gamma", srg_mdp.gamma, "discount");
  srg_cmd->add_option("--alpha", srg_mdp.alpha, "regularization weight");

  // certify
  auto* cert_cmd =
      app.add_subcommand("certify", "check a property on a stored cloud");
  std::string cert_cloud, cert_prop, cert_report;
  double cert_param = 0.0, cert_tol = 1e-9;
  cert_cmd->add_option("--cloud", cert_cloud, "cloud CSV path")->required();
  cert_cmd->add_option("--property", cert_prop,
                       "lipschitz, one-sided, strongly-monotone, cocoercive")
      ->required();
  cert_cmd->add_option("--parameter", cert_param, "property parameter")
      ->required();
  cert_cmd->add_option("--tolerance", cert_tol, "margin tolerance");
  cert_cmd->add_option("--report", cert_report, "also write JSON report here");

  // calculus
  auto* calc_cmd = app.add_subcommand(
      "calculus", "scaling/inversion identities and sum/composition bounds");
  std::string calc_operation, calc_a = "a1", calc_b, calc_spec = "l2";
  std::string calc_sampler;
  double calc_alpha = 2.0, calc_range = 1.0, calc_tol = 1e-9,
         calc_slack = 1.1;
  std::size_t calc_n = 2000;
  std::uint64_t calc_seed = 0;
  calc_cmd->add_option("--operation", calc_operation,
                       "scale, invert, add, compose")
      ->required();
  calc_cmd->add_option("--op-a", calc_a, "first operand (builtin id)");
  calc_cmd->add_option("--op-b", calc_b, "second operand for add/compose");
  calc_cmd->add_option("--alpha", calc_alpha, "scale factor");
  calc_cmd->add_option("--spec", calc_spec, "l1, l2, linf-min (SIP only)");
  calc_cmd->add_option("--sampler", calc_sampler, "increment sampler id");
  calc_cmd->add_option("--range", calc_range, "half-width for value-range");
  calc_cmd->add_option("--n", calc_n, "sample count");
  auto* calc_seed_opt = calc_cmd->add_option("--seed", calc_seed, "RNG seed");
  calc_cmd->add_option("--tol", calc_tol, "comparison tolerance");
  calc_cmd->add_option("--sigma-slack", calc_slack,
                       "multiplier on the estimated alignment defect");

  // bellman
  auto* bell_cmd = app.add_subcommand(
      "bellman", "seeded MDP demo: contraction certificates and value "
                 "iteration");
  MdpOptions bell_opts;
  std::size_t bell_n = 4000;
  std::uint64_t bell_seed = 0;
  std::string bell_out;
  bell_cmd->add_option("--states", bell_opts.states, "state count");
  bell_cmd->add_option("--actions", bell_opts.actions, "action count");
  bell_cmd->add_option("--gamma", bell_opts.gamma, "discount in (0,1)");
  bell_cmd->add_option("--alpha", bell_opts.alpha, "regularization weight");
  bell_cmd->add_option("--n", bell_n, "sample count");
  auto* bell_seed_opt = bell_cmd->add_option("--seed", bell_seed, "RNG seed");
  bell_cmd->add_option("--out-dir", bell_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(pair_cmd))
      return cmd_pair(pair_x, pair_y, pair_spec);
    if (app.got_subcommand(srg_cmd))
      return cmd_srg(srg_op, srg_matrix, srg_mdp, srg_spec, srg_side,
                     srg_sampler, srg_range, srg_n,
                     resolve_seed(srg_seed_opt, srg_seed), srg_checks,
                     srg_out);
    if (app.got_subcommand(cert_cmd))
      return cmd_certify(cert_cloud, cert_prop, cert_param, cert_tol,
                         cert_report);
    if (app.got_subcommand(calc_cmd))
      return cmd_calculus(calc_operation, calc_a, calc_b, calc_alpha,
                          calc_spec, calc_sampler, calc_range, calc_n,
                          resolve_seed(calc_seed_opt, calc_seed), calc_tol,
                          calc_slack);
    if (app.got_subcommand(bell_cmd))
      return cmd_bellman(bell_opts, resolve_seed(bell_seed_opt, bell_seed),
                         bell_n, bell_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
