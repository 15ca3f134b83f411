// dulac: command-line front end for the dulac library.
//
// Every subcommand writes one JSON report {"system", "command", "result",
// "certificate", "notes"}; `--format text` prints the same content as
// key/value lines and `--format csv` dumps trajectories.
//
// Exit codes: 0 success / fully certified, 1 cycle detected (analyze),
// 2 not certified or a domain failure, 3 input error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dulac/analyze.hpp"
#include "dulac/certify.hpp"
#include "dulac/darboux.hpp"
#include "dulac/error.hpp"
#include "dulac/flow.hpp"
#include "dulac/parse.hpp"
#include "dulac/report.hpp"
#include "dulac/synthesis.hpp"

using namespace dulac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 2;
constexpr int kExitInput = 3;

struct Options {
  std::string system_path;
  std::string region;
  std::string multiplier;
  std::string matrix;
  std::string curves;
  std::string exp_factors;
  std::string poly;
  std::string g;
  std::string h;
  std::string point;
  std::string normal;
  std::string reading = "c2-3d2";
  std::string out;
  std::string format = "json";
  int depth = kDefaultMaxDepth;
  int grid = 32;
  int max_iters = 50;
  int trajectories = 8;
  int tiles = 16;
  double tol = 1e-10;
  double time = 10.0;
  double min_radius = 1e-3;
};

/// Thrown for bad command-line input; maps to exit code 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  Report report;
  int exit_code = kExitOk;
  std::string csv;
};

bool is_input_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::UndefinedParameter:
    case ErrorKind::NonPolynomial:
    case ErrorKind::DivisionByZero:
    case ErrorKind::ComplexCoefficients:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidTolerance:
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VectorField load_system(const Options& o) {
  if (o.system_path.empty()) throw InputError("--system is required");
  return parse_system(read_file(o.system_path));
}

Box2 region_or(const Options& o, const char* fallback) {
  if (o.region.empty()) {
    if (!fallback) throw InputError("--region is required");
    return parse_region(fallback);
  }
  return parse_region(o.region);
}

Point parse_point(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (text.empty() || comma == std::string::npos) throw InputError(std::string(flag) + " expects \"x,y\"");
  return {parse_rat(text.substr(0, comma)).get_d(), parse_rat(text.substr(comma + 1)).get_d()};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream ss(text);
  while (std::getline(ss, piece, sep))
    if (piece.find_first_not_of(" \t") != std::string::npos) out.push_back(piece);
  return out;
}

/// "g1,h1;g2,h2".
std::vector<std::pair<Poly, Poly>> parse_exp_pairs(const std::string& text) {
  std::vector<std::pair<Poly, Poly>> out;
  for (const auto& pair : split(text, ';')) {
    const auto parts = split(pair, ',');
    if (parts.size() != 2) throw InputError("--exp-factors expects \"g,h;...\"");
    out.emplace_back(parse_poly(parts[0]), parse_poly(parts[1]));
  }
  return out;
}

CommandResult base(const VectorField& X, const char* command) {
  CommandResult o;
  o.report.system = to_vf_text(X);
  o.report.command = command;
  return o;
}

CommandResult base(const char* command) {
  CommandResult o;
  o.report.command = command;
  return o;
}

int certificate_exit(const Certificate& c) { return c.is_positive() ? kExitOk : kExitNotCertified; }

CommandResult cmd_parse(const Options& opt) {
  const VectorField X = load_system(opt);
  CommandResult o = base(X, "parse");
  Json params = Json::object();
  for (const auto& [name, value] : X.params) params[name] = to_string(value);
  o.report.result = Json{{"P", to_string(X.p)},
                         {"Q", to_string(X.q)},
                         {"degree", X.degree()},
                         {"divergence", to_string(divergence(X))},
                         {"params", params}};
  return o;
}

CommandResult cmd_equilibria(const Options& opt) {
  const VectorField X = load_system(opt);
  const Box2 box = region_or(opt, "-4:4,-4:4");
  CommandResult o = base(X, "equilibria");
  Json list = Json::array();
  for (const auto& e : find_equilibria(X, box, opt.grid, opt.tol)) list.push_back(to_json(e));
  o.report.result = Json{{"region", to_json(box)}, {"equilibria", list}};
  return o;
}

CommandResult cmd_dulac_linear(const Options& opt) {
  if (opt.matrix.empty()) throw InputError("--matrix is required");
  const Matrix2 A = parse_matrix(opt.matrix);
  const VectorField X = linear_field(A);
  CommandResult o = base(X, "dulac-linear");
  const QuadraticMultiplier B = quadratic_dulac_linear(A);
  const Poly b = B.to_poly();
  const Poly residual = div_product(b, X) - (X.p * X.p + X.q * X.q);
  B11Reading reading;
  if (opt.reading == "c2-3d2") {
    reading = B11Reading::C2Minus3D2;
  } else if (opt.reading == "c-3d2") {
    reading = B11Reading::CMinus3D2;
  } else {
    throw InputError("--reading must be c2-3d2 or c-3d2");
  }
  const QuadraticCoefficients printed = printed_coefficients(A, reading);
  o.report.result = Json{{"b20", to_string(B.b20)},
                         {"b11", to_string(B.b11)},
                         {"b02", to_string(B.b02)},
                         {"multiplier", to_string(b)},
                         {"residual", to_string(residual)},
                         {"closed_form",
                          Json{{"reading", opt.reading},
                               {"b20", to_string(printed.b20)},
                               {"b11", to_string(printed.b11)},
                               {"b02", to_string(printed.b02)},
                               {"matches", printed.b20 == B.b20 && printed.b11 == B.b11 && printed.b02 == B.b02}}}};
  if (!residual.is_zero()) o.exit_code = kExitNotCertified;
  return o;
}

CommandResult dulac_outcome(const DulacCertificate& d, const char* command) {
  CommandResult o = base(d.system, command);
  o.report.result = Json{{"multiplier", to_string(d.multiplier)},
                         {"box", to_json(d.certificate.box)},
                         {"conclusion", to_string(d.conclusion)}};
  o.report.certificate = record_of(d.certificate);
  o.report.notes = d.notes;
  o.exit_code = certificate_exit(d.certificate);
  return o;
}

CommandResult cmd_certify(const Options& opt) {
  const Box2 box = region_or(opt, nullptr);
  if (!opt.poly.empty()) {
    const Certificate c = certify_positive(parse_poly(opt.poly), box, opt.depth);
    CommandResult o = base("certify");
    o.report.result = Json{{"box", to_json(box)}};
    o.report.certificate = record_of(c);
    o.exit_code = certificate_exit(c);
    return o;
  }
  if (opt.multiplier.empty()) throw InputError("certify needs --multiplier (with --system) or --poly");
  return dulac_outcome(certify_dulac(load_system(opt), parse_multiplier(opt.multiplier), box, opt.depth), "certify");
}

CommandResult cmd_bendixson(const Options& opt) {
  return dulac_outcome(bendixson(load_system(opt), region_or(opt, nullptr), opt.depth), "bendixson");
}

Json local_json(const LocalDulac& l) {
  return Json{{"b20", to_string(l.quadratic.b20)},
              {"b11", to_string(l.quadratic.b11)},
              {"b02", to_string(l.quadratic.b02)},
              {"center", Json::array({to_string(l.quadratic.x0), to_string(l.quadratic.y0)})},
              {"multiplier", to_string(l.multiplier)},
              {"box", to_json(l.box)},
              {"puncture_half_width", to_string(l.puncture_half_width)}};
}

CommandResult cmd_local_dulac(const Options& opt) {
  const VectorField X = load_system(opt);
  CommandResult o = base(X, "local-dulac");
  if (!opt.point.empty()) {
    const LocalDulac l = local_dulac_hyperbolic(X, parse_point(opt.point, "--point"), opt.min_radius, opt.depth);
    o.report.result = local_json(l);
    o.report.certificate = record_of(l.certificate);
    o.exit_code = certificate_exit(l.certificate);
    return o;
  }
  const Box2 box = region_or(opt, "-4:4,-4:4");
  Json list = Json::array();
  bool all = true;
  for (const auto& e : find_equilibria(X, box, opt.grid, opt.tol)) {
    Json item{{"equilibrium", to_json(e)}};
    try {
      const LocalDulac l = local_dulac_hyperbolic(X, e.location, opt.min_radius, opt.depth);
      item["local"] = local_json(l);
      const auto rec = record_of(l.certificate);
      item["certificate"] = Json{{"outcome", rec.outcome}, {"carrier", rec.carrier}, {"depth", rec.depth}};
    } catch (const Error& err) {
      item["error"] = Json{{"kind", to_string(err.kind())}, {"message", err.what()}};
      all = false;
    }
    list.push_back(item);
  }
  o.report.result = Json{{"region", to_json(box)}, {"equilibria", list}};
  if (!all || list.empty()) o.exit_code = kExitNotCertified;
  return o;
}

std::vector<InvariantCurve> curves_of(const Options& opt, const VectorField& X) {
  if (opt.curves.empty()) throw InputError("--curves is required");
  std::vector<InvariantCurve> out;
  for (const auto& f : parse_poly_list(opt.curves)) out.push_back(cofactor_of(f, X));
  return out;
}

std::vector<ExponentialFactor> exp_factors_of(const Options& opt, const VectorField& X) {
  std::vector<ExponentialFactor> out;
  for (const auto& [g, h] : parse_exp_pairs(opt.exp_factors)) out.push_back(exponential_factor_cofactor(g, h, X));
  return out;
}

CommandResult cmd_cofactor(const Options& opt) {
  const VectorField X = load_system(opt);
  CommandResult o = base(X, "cofactor");
  Json list = Json::array();
  for (const auto& c : curves_of(opt, X)) {
    list.push_back(Json{{"f", to_string(c.f)}, {"k", to_string(c.k)}});
    for (const auto& w : c.warnings) o.report.notes.push_back(to_string(c.f) + ": " + w);
  }
  o.report.result = Json{{"curves", list}};
  return o;
}

CommandResult cmd_expfactor(const Options& opt) {
  const VectorField X = load_system(opt);
  CommandResult o = base(X, "expfactor");
  std::vector<ExponentialFactor> factors;
  if (!opt.g.empty() || !opt.h.empty()) {
    factors.push_back(exponential_factor_cofactor(parse_poly(opt.g.empty() ? "0" : opt.g),
                                                  parse_poly(opt.h.empty() ? "1" : opt.h), X));
  } else {
    factors = exp_factors_of(opt, X);
    if (factors.empty()) throw InputError("expfactor needs --g/--h or --exp-factors");
  }
  Json list = Json::array();
  for (const auto& e : factors) list.push_back(Json{{"g", to_string(e.g)}, {"h", to_string(e.h)}, {"k", to_string(e.k)}});
  o.report.result = Json{{"factors", list}};
  return o;
}

Json residual_json(const ResidualReport& r) {
  return Json{{"symbolic_residual", to_string(r.symbolic_residual)},
              {"zero", r.symbolic_residual.is_zero()},
              {"numeric_max_drift", r.numeric_max_drift},
              {"trajectories_checked", r.trajectories_checked}};
}

CommandResult cmd_intfactor(const Options& opt, bool inverse) {
  const VectorField X = load_system(opt);
  if (opt.multiplier.empty()) throw InputError("--multiplier is required");
  CommandResult o = base(X, inverse ? "inv-intfactor" : "intfactor");
  const ResidualReport r = inverse ? check_inverse_integrating_factor(parse_poly(opt.multiplier), X)
                                   : check_integrating_factor(parse_multiplier(opt.multiplier), X);
  o.report.result = residual_json(r);
  o.report.result["multiplier"] = opt.multiplier;
  o.report.notes = r.notes;
  if (!r.symbolic_residual.is_zero()) o.exit_code = kExitNotCertified;
  return o;
}

Json darboux_json(const DarbouxExpr& H) {
  Json curves = Json::array();
  for (const auto& [c, l] : H.curve_factors)
    curves.push_back(Json{{"f", to_string(c.f)}, {"k", to_string(c.k)}, {"exponent", to_string(l)}});
  Json exps = Json::array();
  for (const auto& [e, m] : H.exp_factors)
    exps.push_back(Json{{"g", to_string(e.g)}, {"h", to_string(e.h)}, {"k", to_string(e.k)}, {"exponent", to_string(m)}});
  return Json{{"H", to_string(H)},
              {"curves", curves},
              {"exp_factors", exps},
              {"total_cofactor", to_string(H.total_cofactor())},
              {"real", H.is_real()}};
}

CommandResult cmd_darboux(const Options& opt, bool verify) {
  const VectorField X = load_system(opt);
  CommandResult o = base(X, verify ? "verify-integral" : "darboux");
  const DarbouxExpr H = darboux_first_integral(curves_of(opt, X), exp_factors_of(opt, X));
  o.report.result = darboux_json(H);
  if (verify) {
    VerifyOptions vo;
    vo.tol = opt.tol;
    if (!opt.region.empty()) vo.seed_box = parse_region(opt.region);
    const ResidualReport r = verify_first_integral(H, X, opt.trajectories, opt.time, vo);
    o.report.result["verification"] = residual_json(r);
    o.report.result["verification"]["t_span"] = opt.time;
    o.report.result["verification"]["tolerance_budget"] = tolerance_budget(H, opt.tol, opt.time);
    o.report.notes = r.notes;
    if (!r.symbolic_residual.is_zero()) o.exit_code = kExitNotCertified;
  }
  return o;
}

CommandResult cmd_simulate(const Options& opt) {
  const VectorField X = load_system(opt);
  if (opt.point.empty()) throw InputError("--point is required");
  const Box2 domain = opt.region.empty() ? default_domain() : parse_region(opt.region);
  const Trajectory tr = integrate(X, parse_point(opt.point, "--point"), opt.time, opt.tol, domain);
  CommandResult o = base(X, "simulate");
  Json samples = Json::array();
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    samples.push_back(Json::array({tr.times[i], tr.states[i].x, tr.states[i].y}));
  o.report.result = Json{{"status", to_string(tr.status)},
                         {"tolerance", tr.tolerance},
                         {"t_end", tr.times.back()},
                         {"end", Json::array({tr.states.back().x, tr.states.back().y})},
                         {"samples", samples}};
  o.csv = to_csv(tr);
  if (tr.status != TrajectoryStatus::Completed) o.exit_code = kExitNotCertified;
  return o;
}

CommandResult cmd_limit_cycle(const Options& opt) {
  const VectorField X = load_system(opt);
  if (opt.point.empty()) throw InputError("--point is required");
  const Point seed = parse_point(opt.point, "--point");
  const Point normal = opt.normal.empty() ? NumericField(X)(seed) : parse_point(opt.normal, "--normal");
  const Section section = Section::make(seed, normal, Crossing::Positive, false);
  LimitCycleOptions lo;
  lo.tol = opt.tol;
  lo.max_time = opt.time;
  if (!opt.region.empty()) lo.domain = parse_region(opt.region);
  const LimitCycleReport c = detect_limit_cycle(X, section, seed, opt.max_iters, lo);
  CommandResult o = base(X, "limit-cycle");
  o.report.result = to_json(c);
  o.csv = to_csv(c);
  if (c.non_isolated) o.report.notes.push_back("nearby seeds are periodic too: a non-isolated family");
  return o;
}

CommandResult cmd_analyze(const Options& opt) {
  const VectorField X = load_system(opt);
  AnalysisConfig cfg;
  cfg.grid_n = opt.grid;
  cfg.tol = opt.tol;
  cfg.min_radius = opt.min_radius;
  cfg.max_depth = opt.depth;
  cfg.tiles = opt.tiles;
  cfg.max_iters = opt.max_iters;
  const AnalysisReport a = run_analyze(X, region_or(opt, nullptr), cfg);
  CommandResult o = base(X, "analyze");
  o.report.result = to_json(a);
  o.report.notes = a.notes;
  o.exit_code = a.exit_code();
  return o;
}

void text_lines(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) text_lines(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) text_lines(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string render(const CommandResult& o, const std::string& format) {
  if (format == "json") return serialize(o.report);
  if (format == "csv") {
    if (o.csv.empty()) throw InputError("--format csv is only available for simulate and limit-cycle");
    return o.csv;
  }
  std::ostringstream out;
  out << "command: " << o.report.command << "\n";
  text_lines(o.report.result, "result", out);
  if (o.report.certificate) text_lines(to_json(o.report).at("certificate"), "certificate", out);
  for (const auto& n : o.report.notes) out << "note: " << n << "\n";
  return out.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dulac functions, certificates and phase portraits for planar polynomial systems"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--system", opt.system_path, ".vf file with P, Q and params");
  app.add_option("--region", opt.region, "box \"x0:x1,y0:y1\"");
  app.add_option("--multiplier", opt.multiplier, "polynomial, exp(<poly>) or exp(<poly>)*<poly>");
  app.add_option("--matrix", opt.matrix, "2x2 matrix \"a,b;c,d\"");
  app.add_option("--curves", opt.curves, "invariant curves \"f1;f2;...\"");
  app.add_option("--exp-factors", opt.exp_factors, "exponential factors \"g1,h1;g2,h2\"");
  app.add_option("--poly", opt.poly, "polynomial to certify positive (certify without --system)");
  app.add_option("--g", opt.g, "numerator of exp(g/h)");
  app.add_option("--h", opt.h, "denominator of exp(g/h)");
  app.add_option("--point", opt.point, "point or seed \"x,y\"");
  app.add_option("--normal", opt.normal, "section normal \"nx,ny\" (default X(seed))");
  app.add_option("--reading", opt.reading, "closed-form b11 reading: c2-3d2 or c-3d2")->capture_default_str();
  app.add_option("--depth", opt.depth, "max subdivision depth")->capture_default_str()->check(CLI::Range(0, 30));
  app.add_option("--tol", opt.tol, "integrator / equilibrium tolerance")->capture_default_str();
  app.add_option("--time", opt.time, "integration time span")->capture_default_str();
  app.add_option("--grid", opt.grid, "Newton seed grid size")->capture_default_str()->check(CLI::Range(1, 1024));
  app.add_option("--tiles", opt.tiles, "tiles per axis for analyze")->capture_default_str()->check(CLI::Range(1, 256));
  app.add_option("--min-radius", opt.min_radius, "smallest puncture for local boxes")->capture_default_str();
  app.add_option("--max-iters", opt.max_iters, "return-map iterations")->capture_default_str()->check(CLI::Range(1, 10000));
  app.add_option("--trajectories", opt.trajectories, "seeds for verify-integral")->capture_default_str()->check(CLI::Range(1, 10000));
  app.add_option("--out", opt.out, "write output to a file");
  app.add_option("--format", opt.format, "json, csv or text")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "text"}));

  const std::vector<std::pair<std::string, std::function<CommandResult()>>> commands = {
      {"parse", [&] { return cmd_parse(opt); }},
      {"equilibria", [&] { return cmd_equilibria(opt); }},
      {"dulac-linear", [&] { return cmd_dulac_linear(opt); }},
      {"certify", [&] { return cmd_certify(opt); }},
      {"bendixson", [&] { return cmd_bendixson(opt); }},
      {"local-dulac", [&] { return cmd_local_dulac(opt); }},
      {"cofactor", [&] { return cmd_cofactor(opt); }},
      {"expfactor", [&] { return cmd_expfactor(opt); }},
      {"intfactor", [&] { return cmd_intfactor(opt, false); }},
      {"inv-intfactor", [&] { return cmd_intfactor(opt, true); }},
      {"darboux", [&] { return cmd_darboux(opt, false); }},
      {"verify-integral", [&] { return cmd_darboux(opt, true); }},
      {"simulate", [&] { return cmd_simulate(opt); }},
      {"limit-cycle", [&] { return cmd_limit_cycle(opt); }},
      {"analyze", [&] { return cmd_analyze(opt); }},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) subs[name] = app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  for (const auto& [name, fn] : commands) {
    if (!subs[name]->parsed()) continue;
    try {
      if (opt.tol <= 0.0) throw InputError("--tol must be positive");
      const CommandResult o = fn();
      emit(render(o, opt.format), opt.out);
      return o.exit_code;
    } catch (const InputError& e) {
      std::cerr << "dulac: " << e.what() << "\n";
      return kExitInput;
    } catch (const Error& e) {
      std::cerr << "dulac: " << to_string(e.kind()) << ": " << e.what() << "\n";
      if (is_input_kind(e.kind())) return kExitInput;
      CommandResult o = base(name.c_str());
      try {
        if (!opt.system_path.empty()) o.report.system = to_vf_text(load_system(opt));
      } catch (const std::exception&) {
      }
      o.report.result = Json{{"error", Json{{"kind", to_string(e.kind())}, {"message", e.what()}}}};
      try {
        emit(render(o, opt.format == "csv" ? "json" : opt.format), opt.out);
      } catch (const InputError&) {
        return kExitInput;
      }
      return kExitNotCertified;
    }
  }
  return kExitInput;
}
