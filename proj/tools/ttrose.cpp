// ttrose: command-line front end for the train-track library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ttrose/census.hpp"
#include "ttrose/error.hpp"
#include "ttrose/family.hpp"
#include "ttrose/folds.hpp"
#include "ttrose/json_io.hpp"
#include "ttrose/nielsen.hpp"
#include "ttrose/spectral.hpp"
#include "ttrose/turns.hpp"

using namespace ttrose;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Common {
  int rank = 3;
  std::string len = "5";
  std::string mode = "exhaustive";
  int count = 200;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
  long budget = 20000;
  int max_period = 3;
  int max_depth = 0;
  bool no_cross_check = false;
  std::string word;
  std::string map_file;
  std::string in;
  std::string synthetic;
  std::string axis = "loglambda";
  int norm_budget = 6;
};

std::pair<int, int> parse_range(const std::string& s) {
  for (const std::string sep : {"..", ":", "-"}) {
    const auto pos = s.find(sep);
    if (pos != std::string::npos) return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + sep.size()))};
  }
  const int n = std::stoi(s);
  return {n, n};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

CertifyOptions certify_options(const Common& c) {
  CertifyOptions o;
  o.max_period = c.max_period;
  o.tol = c.tol;
  o.cross_check = !c.no_cross_check;
  o.max_depth = c.max_depth;
  return o;
}

CensusOptions census_options(const Common& c) {
  CensusOptions o;
  o.rank = c.rank;
  std::tie(o.len_min, o.len_max) = parse_range(c.len);
  if (c.mode != "exhaustive" && c.mode != "sample") throw Error("--mode must be exhaustive or sample");
  o.sample = c.mode == "sample";
  o.count = c.count;
  o.seed = c.seed;
  o.tol = c.tol;
  o.budget = c.budget;
  o.certify = certify_options(c);
  return o;
}

void print_certificate(std::ostream& os, const Certificate& c) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "map (rank " << c.rank << ")\n" << c.map.serialize();
  if (c.word) os << "word            " << word_string(*c.word) << "\n";
  os << "train track     " << yn(c.train_track) << "\n"
     << "expanding       " << yn(c.expanding) << "\n"
     << "irreducible     " << yn(c.irreducible) << "\n"
     << "primitive M     " << yn(c.primitive) << "\n";
  if (c.primitive) os << "lambda          " << c.lambda << "\n";
  if (c.local) os << "LW connected    " << yn(c.lw_connected) << " (" << c.local->edges.size() << " edges)\n";
  if (c.inconclusive) {
    os << "PNP-free        inconclusive: " << c.inconclusive_reason << "\n";
  } else if (c.fic_hypotheses || c.primitive) {
    os << "PNP-free        " << yn(c.pnp_free);
    if (c.pnp_certificate) os << " via " << to_string(c.pnp_certificate->method);
    os << "\n";
  }
  if (c.inp) {
    os << "iNP found       rho = " << c.inp->path().str() << " (rho1 " << c.inp->rho1.str() << ", rho2 "
       << c.inp->rho2.str() << ", period " << c.inp->period << ")\n";
  }
  if (c.index) os << "index           " << c.index->numerator() << "/" << c.index->denominator() << "\n";
  if (c.ideal) {
    os << "IW              " << c.ideal->vertices.size() << " vertices, " << c.ideal->edges.size()
       << " edges, cut-vertex free " << yn(c.cut_vertex_free) << "\n";
  }
  if (c.fic_hypotheses && !c.pnp_free && !c.inconclusive) {
    os << "fully irreducible: criteria passed except PNP-free";
    if (c.inp) os << "; iNP found";
    os << "\n";
  }
  os << "ageometric fully irreducible  " << yn(c.ageometric_fully_irreducible) << "\n"
     << "lone axis                     " << yn(c.lone_axis) << "\n";
}

int cmd_certify(const Common& c) {
  Certificate cert;
  if (!c.word.empty()) {
    cert = certify(c.rank, parse_word(c.word), certify_options(c));
  } else if (!c.map_file.empty()) {
    cert = certify_map(RoseMap::parse(read_file(c.map_file)), std::nullopt, certify_options(c));
  } else {
    throw Error("certify needs --word or a map file");
  }
  Output out(c.out);
  if (c.format == "json") {
    out.stream() << to_json(cert).dump(2) << "\n";
  } else {
    print_certificate(out.stream(), cert);
  }
  return cert.inconclusive ? kExitInconclusive : kExitOk;
}

void write_rows(const Common& c, const std::vector<CensusRow>& rows) {
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << census_csv_header() << "\n";
    for (const auto& r : rows) out.stream() << to_csv(r) << "\n";
  } else {
    for (const auto& r : rows) out.stream() << to_json(r).dump() << "\n";
  }
}

int cmd_census(const Common& c, bool classes) {
  auto opts = census_options(c);
  opts.classes = classes;
  const auto rows = run_census(opts);
  write_rows(c, rows);
  bool inconclusive = false;
  for (const auto& r : rows) inconclusive = inconclusive || r.inconclusive > 0;
  return inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_upper(const Common& c) {
  const auto res = run_upper(c.rank, c.norm_budget, c.tol);
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << upper_csv(res);
  } else {
    out.stream() << to_json(res).dump() << "\n";
  }
  return kExitOk;
}

int cmd_entropy(const Common& c) {
  std::vector<EntropyPoint> points;
  if (!c.synthetic.empty()) {
    std::vector<double> v;
    std::stringstream ss(c.synthetic);
    for (std::string item; std::getline(ss, item, ',');) v.push_back(std::stod(item));
    if (v.size() != 4) throw Error("--synthetic expects a,b,t0,t1");
    points = synthetic_entropy_points(v[0], v[1], v[2], v[3]);
  } else if (!c.in.empty()) {
    std::ifstream in(c.in);
    if (!in) throw Error("cannot open " + c.in);
    const auto axis = c.axis == "loglen" ? EntropyAxis::log_length : EntropyAxis::log_lambda;
    if (c.axis != "loglen" && c.axis != "loglambda") throw Error("--axis must be loglambda or loglen");
    points = entropy_points(read_census_rows(in), axis);
  } else {
    throw Error("entropy needs --in <census output> or --synthetic a,b,t0,t1");
  }
  const auto e = estimate_entropy(points);
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << "points,t_min,t_max,log_b,b,intercept,a,rms_residual\n"
                 << e.points << ',' << e.t_min << ',' << e.t_max << ',' << e.log_b << ',' << e.b << ','
                 << e.intercept << ',' << e.a << ',' << e.rms_residual << "\n";
  } else {
    out.stream() << to_json(e).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_folds(const Common& c) {
  RoseMap g;
  std::optional<Certificate> cert;
  if (!c.word.empty()) {
    cert = certify(c.rank, parse_word(c.word), certify_options(c));
    g = cert->map;
  } else if (!c.map_file.empty()) {
    g = RoseMap::parse(read_file(c.map_file));
  } else {
    throw Error("folds needs --word or a map file");
  }
  const auto seq = stallings_decomposition(g);
  auto j = to_json(seq);
  j["norm"] = norm(g);
  j["replay_ok"] = replay(seq) == g;
  j["single_letter_fold_count"] = stallings_decomposition(g, FoldGranularity::single_letter).fold_count();
  if (cert && cert->lone_axis) j["u_set"] = unmarked_representatives(g, &*cert);
  Output out(c.out);
  out.stream() << j.dump(c.format == "json" ? 2 : -1) << "\n";
  return kExitOk;
}

int cmd_inp(const Common& c) {
  if (c.map_file.empty()) throw Error("inp needs a map file");
  const auto g = RoseMap::parse(read_file(c.map_file));
  json periods = json::array();
  bool inconclusive = false;
  for (int p = 1; p <= c.max_period; ++p) {
    const auto res = unfolding_inp_search(g, p, c.max_depth, c.tol);
    json inps = json::array();
    for (const auto& inp : res.inps) inps.push_back(to_json(inp));
    periods.push_back({{"period", p}, {"status", to_string(res.status)}, {"inps", inps}});
    inconclusive = inconclusive || res.status == SearchStatus::inconclusive;
  }
  Output out(c.out);
  out.stream() << json{{"schema", kSchemaVersion}, {"kind", "inp"}, {"map", to_json(g)}, {"periods", periods}}.dump(2)
               << "\n";
  return inconclusive ? kExitInconclusive : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"train track tools for rose maps"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rank", c.rank, "rank r");
    sub->add_option("--tol", c.tol, "numeric tolerance");
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--format", c.format, "json|csv (certify/folds also accept text)");
  };
  auto add_census = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--len", c.len, "inner word length or range a..b");
    sub->add_option("--mode", c.mode, "exhaustive|sample");
    sub->add_option("--count", c.count, "samples per length");
    sub->add_option("--seed", c.seed, "sampling seed");
    sub->add_option("--budget", c.budget, "maximum words per length");
    sub->add_option("--max-period", c.max_period, "periods for the unfolding cross-check");
    sub->add_flag("--no-cross-check", c.no_cross_check, "skip the unfolding cross-check");
  };

  auto* certify_cmd = app.add_subcommand("certify", "certify a family word or a map file");
  add_common(certify_cmd);
  certify_cmd->add_option("--word", c.word, "inner-wrapped family word w as digits, e.g. 23322");
  certify_cmd->add_option("map", c.map_file, "map file");
  certify_cmd->add_option("--max-period", c.max_period, "periods for the unfolding search");
  certify_cmd->add_flag("--no-cross-check", c.no_cross_check, "skip the unfolding cross-check");
  certify_cmd->add_option("--max-depth", c.max_depth, "unfolding branch depth (0 = default)");

  auto* census_cmd = app.add_subcommand("census", "conjugacy-class census of the family");
  add_census(census_cmd);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "distinct matrices and stretch factors of the family");
  add_census(spectrum_cmd);

  auto* upper_cmd = app.add_subcommand("upper", "enumerate positive rose maps up to a norm budget");
  add_common(upper_cmd);
  upper_cmd->add_option("--norm", c.norm_budget, "norm budget B");

  auto* entropy_cmd = app.add_subcommand("entropy", "entropy regression on census output");
  add_common(entropy_cmd);
  entropy_cmd->add_option("--in", c.in, "census output (JSON lines or CSV)");
  entropy_cmd->add_option("--synthetic", c.synthetic, "a,b,t0,t1 for omega = a^(b^t)");
  entropy_cmd->add_option("--axis", c.axis, "loglambda|loglen");

  auto* folds_cmd = app.add_subcommand("folds", "Stallings fold decomposition");
  add_common(folds_cmd);
  folds_cmd->add_option("--word", c.word, "family word w");
  folds_cmd->add_option("map", c.map_file, "map file");

  auto* inp_cmd = app.add_subcommand("inp", "search for indivisible Nielsen paths");
  add_common(inp_cmd);
  inp_cmd->add_option("map", c.map_file, "map file");
  inp_cmd->add_option("--max-period", c.max_period, "largest period searched");
  inp_cmd->add_option("--max-depth", c.max_depth, "branch depth (0 = default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (certify_cmd->parsed()) {
      if (c.format == "csv") c.format = "text";
      return cmd_certify(c);
    }
    if (census_cmd->parsed()) return cmd_census(c, true);
    if (spectrum_cmd->parsed()) return cmd_census(c, false);
    if (upper_cmd->parsed()) {
      if (!upper_cmd->count("--rank")) c.rank = 2;
      return cmd_upper(c);
    }
    if (entropy_cmd->parsed()) return cmd_entropy(c);
    if (folds_cmd->parsed()) return cmd_folds(c);
    if (inp_cmd->parsed()) return cmd_inp(c);
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
