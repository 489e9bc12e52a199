// Batch front-end: every computation as a subcommand with reproducible
// JSON/CSV output. Exit codes: 0 ok, 2 schema, 3 computation, 4 not found.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "speclab/errors.hpp"
#include "speclab/functionals.hpp"
#include "speclab/model_spectra.hpp"
#include "speclab/product_spectrum.hpp"
#include "speclab/set_algebra.hpp"
#include "speclab/square_lab.hpp"
#include "speclab/tube_lab.hpp"

namespace {

using nlohmann::json;
using namespace speclab;

constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "dirichlet:pi", "neumann:pi/2", "circle:2pi", "dirichlet:3*pi/4" keep the
// pi multiple exact; "dirichlet:2.5" and "dirichlet:pi*0.8408964" are
// floating lengths.
Operator1D parse_operator(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("operator must be kind:length, e.g. dirichlet:pi");
  const std::string kind_s = text.substr(0, colon);
  std::string len = text.substr(colon + 1);
  OperatorKind kind;
  if (kind_s == "dirichlet")
    kind = OperatorKind::DirichletInterval;
  else if (kind_s == "neumann")
    kind = OperatorKind::NeumannInterval;
  else if (kind_s == "circle")
    kind = OperatorKind::Circle;
  else
    throw std::invalid_argument("unknown operator kind '" + kind_s + "'");

  std::erase(len, ' ');
  const auto pi_pos = len.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(len, &used);
    if (used != len.size() || !(v > 0.0))
      throw std::invalid_argument("bad operator length '" + len + "'");
    return Operator1D(kind, v);
  }

  std::string pre = len.substr(0, pi_pos);
  std::string post = len.substr(pi_pos + 2);
  if (!pre.empty() && pre.back() == '*') pre.pop_back();
  if (!post.empty() && post.front() == '*') {
    // pi*<decimal>: a floating multiple of pi
    std::size_t used = 0;
    const double v = std::stod(post.substr(1), &used);
    if (!pre.empty() || used != post.size() - 1 || !(v > 0.0))
      throw std::invalid_argument("bad operator length '" + len + "'");
    return Operator1D(kind, kPi * v);
  }
  std::int64_t num = 1, den = 1;
  if (!pre.empty()) {
    std::size_t used = 0;
    num = std::stoll(pre, &used);
    if (used != pre.size()) throw std::invalid_argument("bad operator length '" + len + "'");
  }
  if (!post.empty()) {
    if (post.front() != '/') throw std::invalid_argument("bad operator length '" + len + "'");
    std::size_t used = 0;
    den = std::stoll(post.substr(1), &used);
    if (used != post.size() - 1) throw std::invalid_argument("bad operator length '" + len + "'");
  }
  return Operator1D::with_pi_length(kind, num, den);
}

json op_json(const Operator1D& op) {
  json j;
  switch (op.kind()) {
    case OperatorKind::DirichletInterval: j["kind"] = "dirichlet"; break;
    case OperatorKind::NeumannInterval: j["kind"] = "neumann"; break;
    case OperatorKind::Circle: j["kind"] = "circle"; break;
  }
  j["length"] = op.length();
  if (const auto s = op.exact_scale())
    j["exact_scale"] = {s->first, s->second};
  else
    j["exact_scale"] = nullptr;
  return j;
}

const char* kind_name(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::GDirect: return "direct";
    case FunctionalKind::GCompositeBound: return "composite_bound";
    case FunctionalKind::GPrimeLiminf: return "liminf";
    case FunctionalKind::Theta: return "theta";
  }
  return "?";
}

json fv_json(const FunctionalValue& fv) {
  json j;
  j["value"] = fv.value;
  j["witness_index"] = fv.witness_index;
  j["witness_coeffs"] = fv.witness_coeffs;
  j["cutoff"] = fv.cutoff;
  j["kind"] = kind_name(fv.kind);
  return j;
}

json exact_json(const std::optional<std::pair<std::int64_t, std::int64_t>>& e) {
  if (!e) return nullptr;
  return json::array({e->first, e->second});
}

// The printed eigenvalue: an integer when the exact value is one.
json level_value_json(const ProductLevel& lvl) {
  if (lvl.exact && lvl.exact->second == 1) return lvl.exact->first;
  return lvl.value;
}

struct Outputs {
  json summary;
  std::optional<std::string> csv;
  std::string stem;
};

struct Common {
  std::string out_dir;
  std::string format = "json";
  int jobs = 0;
  long long seed = 0;
  std::string config_path;
  json config;  // parsed config file, empty object when absent
};

// Merge order: command line beats config file beats built-in default.
template <typename T>
T merged(const CLI::App* cmd, const Common& c, const std::string& flag, const char* key,
         const T& cli_value, const T& fallback) {
  if (cmd->count(flag) > 0) return cli_value;
  if (c.config.contains(key)) return c.config.at(key).get<T>();
  return fallback;
}

GeodesicSegment parse_geodesic(const std::string& text) {
  const json j = json::parse(text);
  GeodesicSegment g;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "horizontal")
    g.kind = SegmentKind::Horizontal;
  else if (kind == "vertical")
    g.kind = SegmentKind::Vertical;
  else if (kind == "diagonal")
    g.kind = SegmentKind::Diagonal;
  else
    throw std::invalid_argument("geodesic kind must be horizontal, vertical or diagonal");
  const auto dom = j.at("domain");
  g.domain_x = dom.at(0).get<double>();
  g.domain_y = dom.at(1).get<double>();
  g.level = j.value("level", 0.0);
  g.slope = j.value("slope", 1.0);
  g.intercept = j.value("intercept", 0.0);
  g.reflected = j.value("reflected", false);
  g.length = j.value("length", 0.0);
  return g;
}

json geodesic_json(const GeodesicSegment& g) {
  json j;
  switch (g.kind) {
    case SegmentKind::Horizontal: j["kind"] = "horizontal"; break;
    case SegmentKind::Vertical: j["kind"] = "vertical"; break;
    case SegmentKind::Diagonal: j["kind"] = "diagonal"; break;
  }
  j["domain"] = {g.domain_x, g.domain_y};
  j["level"] = g.level;
  j["slope"] = g.slope;
  j["intercept"] = g.intercept;
  j["reflected"] = g.reflected;
  j["length"] = g.length;
  return j;
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!tok.empty()) {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("bad epsilon '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty epsilon list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral functional laboratory"};
  app.require_subcommand(0, 1);

  Common c;
  app.add_option("--out", c.out_dir, "output directory (default: $SPECLAB_OUT or .)");
  app.add_option("--format", c.format, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--jobs", c.jobs, "worker threads for scans (never changes output bytes)");
  app.add_option("--seed", c.seed, "seed echoed into the summary");
  app.add_option("--config", c.config_path, "JSON file supplying option values");

  // every subcommand binds plain fields; config merging happens after parse
  std::string op_s, op1_s, op2_s, omega_s, geodesic_s, eps_list_s, mode_s = "direct";
  double lambda_max = 0.0, tol = -1.0, alpha = 2.0, s_lo = 0.0, s_hi = 0.0, window = 0.5,
         eta = 0.0;
  int count = 0, resolution = 256;

  // global flags stay usable after a subcommand name
  app.option_defaults()->ignore_case(false);
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "distinct eigenvalues of a 1D operator");
  spectrum_cmd->fallthrough();
  spectrum_cmd->add_option("--op", op_s, "operator, kind:length");
  spectrum_cmd->add_option("--count", count, "how many distinct eigenvalues");
  spectrum_cmd->add_option("--lambda-max", lambda_max, "or: all eigenvalues up to this");

  CLI::App* product_cmd = app.add_subcommand("product", "product spectrum grouped by equality");
  product_cmd->fallthrough();
  product_cmd->add_option("--op1", op1_s, "first factor");
  product_cmd->add_option("--op2", op2_s, "second factor");
  product_cmd->add_option("--lambda-max", lambda_max, "cutoff");
  product_cmd->add_option("--tol", tol, "clustering tolerance for floating spectra");

  CLI::App* mm_cmd = app.add_subcommand("mm", "minimal-multiplicity check with witnesses");
  mm_cmd->fallthrough();
  mm_cmd->add_option("--op1", op1_s, "first factor");
  mm_cmd->add_option("--op2", op2_s, "second factor");
  mm_cmd->add_option("--lambda-max", lambda_max, "cutoff");
  mm_cmd->add_option("--tol", tol, "clustering tolerance for floating spectra");

  CLI::App* dil_cmd = app.add_subcommand("dilatation", "scaling factors that create collisions");
  dil_cmd->fallthrough();
  dil_cmd->add_option("--op1", op1_s, "first factor");
  dil_cmd->add_option("--op2", op2_s, "second factor");
  dil_cmd->add_option("--alpha", alpha, "scaling exponent");
  dil_cmd->add_option("--s-lo", s_lo, "window lower end");
  dil_cmd->add_option("--s-hi", s_hi, "window upper end");
  dil_cmd->add_option("--lambda-max", lambda_max, "factor eigenvalue cutoff");

  CLI::App* gfunc_cmd = app.add_subcommand("gfunc", "1D spectral functional of a set");
  gfunc_cmd->fallthrough();
  gfunc_cmd->add_option("--op", op_s, "operator");
  gfunc_cmd->add_option("--omega", omega_s, "interval set as JSON [[a,b],...]");
  gfunc_cmd->add_option("--lambda-max", lambda_max, "cutoff");
  gfunc_cmd->add_option("--mode", mode_s, "direct|liminf");
  gfunc_cmd->add_option("--window", window, "liminf window fraction");

  CLI::App* square_cmd = app.add_subcommand("square", "Dirichlet square eigenspace scans");
  square_cmd->fallthrough();
  CLI::App* square_scan = square_cmd->add_subcommand("scan", "c_omega at every eigenvalue");
  square_scan->fallthrough();
  square_scan->add_option("--omega", omega_s, "rectangle set as JSON [[x0,x1,y0,y1],...]");
  square_scan->add_option("--lambda-max", lambda_max, "largest eigenvalue scanned");

  CLI::App* tube_cmd = app.add_subcommand("tube", "geodesic tube complements and bounds");
  tube_cmd->fallthrough();
  CLI::App* tube_scan = tube_cmd->add_subcommand("scan", "bound per tube radius");
  tube_scan->fallthrough();
  tube_scan->add_option("--geodesic", geodesic_s, "segment as JSON");
  tube_scan->add_option("--eps-list", eps_list_s, "comma-separated radii");
  tube_scan->add_option("--op1", op1_s, "first factor (default dirichlet of the domain width)");
  tube_scan->add_option("--op2", op2_s, "second factor (default dirichlet of the domain height)");
  tube_scan->add_option("--lambda-max", lambda_max, "cutoff for direct mode");
  tube_scan->add_option("--resolution", resolution, "x-cells for diagonal tubes");
  tube_scan->add_option("--eta", eta, "transversality scale (default T/8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    json err;
    err["error"] = {{"type", "schema"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 2;
  }

  auto fail = [](int code, const char* type, const std::string& message) {
    json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return code;
  };

  try {
    if (!c.config_path.empty()) {
      std::ifstream in(c.config_path);
      if (!in) throw std::invalid_argument("cannot read config file " + c.config_path);
      in >> c.config;
      if (!c.config.is_object()) throw std::invalid_argument("config must be a JSON object");
    }
    if (c.out_dir.empty() && c.config.contains("out"))
      c.out_dir = c.config.at("out").get<std::string>();
    if (c.out_dir.empty()) {
      const char* env = std::getenv("SPECLAB_OUT");
      c.out_dir = env && *env ? env : ".";
    }
    if (app.count("--format") == 0 && c.config.contains("format"))
      c.format = c.config.at("format").get<std::string>();
    if (app.count("--jobs") == 0 && c.config.contains("jobs"))
      c.jobs = c.config.at("jobs").get<int>();
    if (c.jobs <= 0) c.jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (c.jobs <= 0) c.jobs = 1;
    if (app.count("--seed") == 0 && c.config.contains("seed"))
      c.seed = c.config.at("seed").get<long long>();

    Outputs out;
    out.summary["seed"] = c.seed;

    if (spectrum_cmd->parsed()) {
      op_s = merged(spectrum_cmd, c, "--op", "op", op_s, op_s);
      count = merged(spectrum_cmd, c, "--count", "count", count, count);
      lambda_max = merged(spectrum_cmd, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      if (op_s.empty()) throw std::invalid_argument("--op is required");
      if ((count > 0) == (lambda_max > 0))
        throw std::invalid_argument("give exactly one of --count and --lambda-max");
      const Operator1D op = parse_operator(op_s);
      const auto entries = count > 0 ? spectrum(op, count) : spectrum_up_to(op, lambda_max);
      out.stem = "spectrum";
      out.summary["command"] = "spectrum";
      out.summary["op"] = op_json(op);
      json rows = json::array();
      std::string csv = "index,eigenvalue,multiplicity\n";
      for (const auto& e : entries) {
        rows.push_back({{"index", e.index},
                        {"eigenvalue", e.eigenvalue},
                        {"multiplicity", e.multiplicity},
                        {"exact", exact_json(e.exact)}});
        csv += std::to_string(e.index) + "," + fmt17(e.eigenvalue) + "," +
               std::to_string(e.multiplicity) + "\n";
      }
      out.summary["entries"] = std::move(rows);
      out.csv = std::move(csv);
    } else if (product_cmd->parsed()) {
      op1_s = merged(product_cmd, c, "--op1", "op1", op1_s, op1_s);
      op2_s = merged(product_cmd, c, "--op2", "op2", op2_s, op2_s);
      lambda_max = merged(product_cmd, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      tol = merged(product_cmd, c, "--tol", "tol", tol, tol);
      if (op1_s.empty() || op2_s.empty() || !(lambda_max > 0))
        throw std::invalid_argument("--op1, --op2 and --lambda-max are required");
      const Operator1D op1 = parse_operator(op1_s), op2 = parse_operator(op2_s);
      const auto levels = build_product(op1, op2, lambda_max, tol);
      out.stem = "product";
      out.summary["command"] = "product";
      out.summary["op1"] = op_json(op1);
      out.summary["op2"] = op_json(op2);
      out.summary["lambda_max"] = lambda_max;
      int total = 0;
      json jl = json::array();
      std::string csv = "i,j,eigenvalue,own_mult,total_mult,class_id\n";
      for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& lvl = levels[k];
        total += lvl.multiplicity;
        json members = json::array();
        for (const auto& [i, jdx] : lvl.members) {
          members.push_back({i, jdx});
          csv += std::to_string(i) + "," + std::to_string(jdx) + "," + fmt17(lvl.value) + "," +
                 std::to_string(op1.multiplicity(i) * op2.multiplicity(jdx)) + "," +
                 std::to_string(lvl.multiplicity) + "," + std::to_string(k + 1) + "\n";
        }
        jl.push_back({{"value", level_value_json(lvl)},
                      {"exact", exact_json(lvl.exact)},
                      {"multiplicity", lvl.multiplicity},
                      {"members", std::move(members)}});
      }
      out.summary["levels"] = std::move(jl);
      out.summary["level_count"] = levels.size();
      out.summary["total_multiplicity"] = total;
      out.csv = std::move(csv);
    } else if (mm_cmd->parsed()) {
      op1_s = merged(mm_cmd, c, "--op1", "op1", op1_s, op1_s);
      op2_s = merged(mm_cmd, c, "--op2", "op2", op2_s, op2_s);
      lambda_max = merged(mm_cmd, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      tol = merged(mm_cmd, c, "--tol", "tol", tol, tol);
      if (op1_s.empty() || op2_s.empty() || !(lambda_max > 0))
        throw std::invalid_argument("--op1, --op2 and --lambda-max are required");
      const Operator1D op1 = parse_operator(op1_s), op2 = parse_operator(op2_s);
      const MmReport rep = check_mm(op1, op2, lambda_max, tol);
      out.stem = "mm";
      out.summary["command"] = "mm";
      out.summary["op1"] = op_json(op1);
      out.summary["op2"] = op_json(op2);
      out.summary["lambda_max"] = lambda_max;
      out.summary["mm"] = rep.minimal;
      json wit = json::array();
      for (const auto& lvl : rep.collisions) {
        json pairs = json::array();
        for (const auto& [i, jdx] : lvl.members) pairs.push_back({i, jdx});
        wit.push_back({{"sum", level_value_json(lvl)},
                       {"multiplicity", lvl.multiplicity},
                       {"pairs", std::move(pairs)}});
      }
      out.summary["witnesses"] = std::move(wit);
    } else if (dil_cmd->parsed()) {
      op1_s = merged(dil_cmd, c, "--op1", "op1", op1_s, op1_s);
      op2_s = merged(dil_cmd, c, "--op2", "op2", op2_s, op2_s);
      alpha = merged(dil_cmd, c, "--alpha", "alpha", alpha, alpha);
      s_lo = merged(dil_cmd, c, "--s-lo", "s-lo", s_lo, s_lo);
      s_hi = merged(dil_cmd, c, "--s-hi", "s-hi", s_hi, s_hi);
      lambda_max = merged(dil_cmd, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      if (op1_s.empty() || op2_s.empty() || !(lambda_max > 0) || !(s_lo > 0) || !(s_hi > s_lo))
        throw std::invalid_argument(
            "--op1, --op2, --s-lo, --s-hi and --lambda-max are required, with s-lo < s-hi");
      const Operator1D op1 = parse_operator(op1_s), op2 = parse_operator(op2_s);
      const auto ds = exceptional_dilatations(op1, op2, alpha, s_lo, s_hi, lambda_max);
      out.stem = "dilatation";
      out.summary["command"] = "dilatation";
      out.summary["op1"] = op_json(op1);
      out.summary["op2"] = op_json(op2);
      out.summary["alpha"] = alpha;
      out.summary["window"] = {s_lo, s_hi};
      out.summary["lambda_max"] = lambda_max;
      json rows = json::array();
      for (const auto& d : ds) {
        rows.push_back({{"s", d.s},
                        {"exact_power", exact_json(d.exact_power)},
                        {"witness", {{"i", d.i}, {"j", d.j}, {"i2", d.i2}, {"j2", d.j2}}},
                        {"recheck_collides", recheck_dilatation(op1, op2, alpha, d, lambda_max)}});
      }
      out.summary["count"] = ds.size();
      out.summary["dilatations"] = std::move(rows);
    } else if (gfunc_cmd->parsed()) {
      op_s = merged(gfunc_cmd, c, "--op", "op", op_s, op_s);
      omega_s = merged(gfunc_cmd, c, "--omega", "omega", omega_s, omega_s);
      lambda_max = merged(gfunc_cmd, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      mode_s = merged(gfunc_cmd, c, "--mode", "mode", mode_s, mode_s);
      window = merged(gfunc_cmd, c, "--window", "window", window, window);
      if (op_s.empty() || omega_s.empty() || !(lambda_max > 0))
        throw std::invalid_argument("--op, --omega and --lambda-max are required");
      if (mode_s != "direct" && mode_s != "liminf")
        throw std::invalid_argument("--mode must be direct or liminf");
      const Operator1D op = parse_operator(op_s);
      const IntervalSet omega = IntervalSet::from_json(omega_s, op.length());
      const FunctionalValue fv = mode_s == "direct" ? g_1d(op, omega, lambda_max)
                                                    : ql_liminf(op, omega, lambda_max, window);
      out.stem = "gfunc";
      out.summary["command"] = "gfunc";
      out.summary["op"] = op_json(op);
      out.summary["omega"] = json::parse(omega.to_json());
      out.summary.update(fv_json(fv));
    } else if (square_scan->parsed()) {
      omega_s = merged(square_scan, c, "--omega", "omega", omega_s, omega_s);
      lambda_max = merged(square_scan, c, "--lambda-max", "lambda-max", lambda_max, lambda_max);
      if (omega_s.empty() || !(lambda_max > 0))
        throw std::invalid_argument("--omega and --lambda-max are required");
      const RectSet omega = RectSet::from_json(omega_s, kPi, kPi);
      const ComegaScan scan =
          c_omega_scan(omega, static_cast<std::int64_t>(lambda_max), c.jobs);
      out.stem = "square";
      out.summary["command"] = "square scan";
      out.summary["omega"] = json::parse(omega.to_json());
      out.summary["lambda_max"] = static_cast<std::int64_t>(lambda_max);
      out.summary["eigenvalue_count"] = scan.table.size();
      out.summary["min_c"] = scan.min_c;
      out.summary["argmin_lambda"] = scan.argmin_lambda;
      std::string csv = "lambda,dim,c_value\n";
      for (const auto& rec : scan.table)
        csv += std::to_string(rec.lambda) + "," + std::to_string(rec.witness_coeffs.size()) +
               "," + fmt17(rec.c_value) + "\n";
      out.csv = std::move(csv);
    } else if (tube_scan->parsed()) {
      geodesic_s = merged(tube_scan, c, "--geodesic", "geodesic", geodesic_s, geodesic_s);
      eps_list_s = merged(tube_scan, c, "--eps-list", "eps-list", eps_list_s, eps_list_s);
      op1_s = merged(tube_scan, c, "--op1", "op1", op1_s, op1_s);
      op2_s = merged(tube_scan, c, "--op2", "op2", op2_s, op2_s);
      lambda_max = merged(tube_scan, c, "--lambda-max", "lambda-max", lambda_max, 500.0);
      resolution = merged(tube_scan, c, "--resolution", "resolution", resolution, resolution);
      eta = merged(tube_scan, c, "--eta", "eta", eta, eta);
      if (geodesic_s.empty() || eps_list_s.empty())
        throw std::invalid_argument("--geodesic and --eps-list are required");
      const GeodesicSegment g = parse_geodesic(geodesic_s);
      const Operator1D op1 =
          op1_s.empty() ? Operator1D(OperatorKind::DirichletInterval, g.domain_x)
                        : parse_operator(op1_s);
      const Operator1D op2 =
          op2_s.empty() ? Operator1D(OperatorKind::DirichletInterval, g.domain_y)
                        : parse_operator(op2_s);
      const std::vector<double> eps_list = parse_eps_list(eps_list_s);
      out.stem = "tube";
      out.summary["command"] = "tube scan";
      out.summary["geodesic"] = geodesic_json(g);
      out.summary["op1"] = op_json(op1);
      out.summary["op2"] = op_json(op2);
      out.summary["lambda_max"] = lambda_max;
      out.summary["resolution"] = resolution;
      json rows = json::array();
      std::string csv = "epsilon,bound_value,direct_value\n";
      for (const double eps : eps_list) {
        const TubeSpec ts = make_tube(g, eps, eta);
        const double bound =
            tube_functional_bound(ts, op1, op2, lambda_max, ThetaMode::BoundFormula, resolution)
                .value.value;
        const double direct =
            tube_functional_bound(ts, op1, op2, lambda_max, ThetaMode::Direct, resolution)
                .value.value;
        rows.push_back({{"epsilon", eps}, {"bound_value", bound}, {"direct_value", direct}});
        csv += fmt17(eps) + "," + fmt17(bound) + "," + fmt17(direct) + "\n";
      }
      out.summary["rows"] = std::move(rows);
      out.csv = std::move(csv);
    } else {
      std::fprintf(stderr, "%s", app.help().c_str());
      return 2;
    }

    namespace fs = std::filesystem;
    fs::create_directories(c.out_dir);
    const std::string text = out.summary.dump(2) + "\n";
    {
      std::ofstream f(fs::path(c.out_dir) / (out.stem + ".json"), std::ios::binary);
      f << text;
    }
    if (out.csv && (c.format == "csv" || c.format == "both")) {
      std::ofstream f(fs::path(c.out_dir) / (out.stem + ".csv"), std::ios::binary);
      f << *out.csv;
    }
    std::fputs(text.c_str(), stdout);
    return 0;
  } catch (const NotFoundError& e) {
    return fail(4, "not_found", e.what());
  } catch (const ComputationError& e) {
    return fail(3, "computation", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(2, "schema", e.what());
  } catch (const std::out_of_range& e) {
    return fail(2, "schema", e.what());
  } catch (const json::exception& e) {
    return fail(2, "schema", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}
