#include "ttrose/json_io.hpp"

#include <istream>
#include <sstream>

#include "ttrose/error.hpp"

namespace ttrose {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json turn_json(const Turn& t) { return json::array({direction_name(t.first), direction_name(t.second)}); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

json to_json(const RoseMap& g) {
  json images = json::object();
  for (int i = 1; i <= g.rank(); ++i) images[std::string(1, to_char(OrientedEdge{i, false}))] = g.image(i).str();
  return {{"rank", g.rank()}, {"images", images}};
}

json to_json(const WhiteheadGraph& g) {
  json adj = json::object();
  for (const auto& v : g.vertices) adj[direction_name(v)] = json::array();
  for (const auto& t : g.edges) {
    adj[direction_name(t.first)].push_back(direction_name(t.second));
    adj[direction_name(t.second)].push_back(direction_name(t.first));
  }
  return {{"kind", to_string(g.kind)},
          {"vertices", g.vertices.size()},
          {"edges", g.edges.size()},
          {"adjacency", adj}};
}

json to_json(const INPCandidate& inp) {
  return {{"rho1", inp.rho1.str()},       {"rho2", inp.rho2.str()},
          {"fraction1", inp.fraction1},   {"fraction2", inp.fraction2},
          {"base_turn", turn_json(inp.base_turn)}, {"cancelled", inp.cancelled.str()},
          {"period", inp.period},         {"path", inp.path().str()}};
}

json to_json(const PNPFreeCertificate& c) {
  json j{{"method", to_string(c.method)}, {"periods", c.periods}, {"period_uniform", c.period_uniform}};
  json forced = json::array();
  for (const auto& f : c.forced_prefix)
    forced.push_back({{"side", f.side}, {"edge", direction_name(f.edge)}});
  j["forced_prefix"] = forced;
  j["contradiction_stage"] = c.contradiction_stage;
  if (c.cross_check_agrees) {
    j["cross_check"] = {{"agrees", *c.cross_check_agrees}, {"periods", c.cross_check_periods}};
  }
  json trace = json::array();
  for (const auto& s : c.trace) {
    json step{{"stage", s.stage}};
    switch (s.kind) {
      case TraceStep::Kind::seed: step["kind"] = "seed"; break;
      case TraceStep::Kind::extend:
        step["kind"] = "extend";
        step["side"] = s.side;
        step["edge"] = direction_name(s.edge);
        break;
      case TraceStep::Kind::dead_end: step["kind"] = "dead_end"; break;
    }
    if (!s.rho1.empty() || !s.rho2.empty()) {
      step["rho1"] = s.rho1.str();
      step["rho2"] = s.rho2.str();
    }
    if (s.frontier) step["frontier"] = turn_json(*s.frontier);
    if (s.frontier_image) step["frontier_image"] = turn_json(*s.frontier_image);
    trace.push_back(step);
  }
  j["trace"] = trace;
  return j;
}

json to_json(const Certificate& c) {
  json j{{"schema", kSchemaVersion}, {"kind", "certificate"}, {"rank", c.rank}, {"map", to_json(c.map)}};
  if (c.word) j["word"] = word_string(*c.word);
  j["checks"] = {{"train_track", c.train_track},   {"expanding", c.expanding},
                 {"irreducible", c.irreducible},   {"primitive", c.primitive},
                 {"lw_connected", c.lw_connected}, {"pnp_free", c.pnp_free},
                 {"cut_vertex_free", c.cut_vertex_free}};
  j["lambda"] = c.lambda;
  if (c.index) j["index"] = std::to_string(c.index->numerator()) + "/" + std::to_string(c.index->denominator());
  if (c.local) j["local_whitehead"] = to_json(*c.local);
  if (c.ideal) j["ideal_whitehead"] = to_json(*c.ideal);
  if (c.pnp_certificate) j["pnp_certificate"] = to_json(*c.pnp_certificate);
  if (c.inp) j["inp"] = to_json(*c.inp);
  j["verdicts"] = {{"fic_hypotheses", c.fic_hypotheses},
                   {"ageometric_fully_irreducible", c.ageometric_fully_irreducible},
                   {"lone_axis", c.lone_axis},
                   {"inconclusive", c.inconclusive}};
  if (c.inconclusive) j["inconclusive_reason"] = c.inconclusive_reason;
  return j;
}

json to_json(const FoldSequence& seq) {
  json steps = json::array();
  for (const auto& s : seq.steps) {
    steps.push_back({{"vertex", s.vertex},
                     {"germ_a", json::array({s.germ_a.id, s.germ_a.inverted})},
                     {"germ_b", json::array({s.germ_b.id, s.germ_b.inverted})},
                     {"length", s.length}});
  }
  json homeo = json::array();
  for (const auto& [id, e] : seq.homeomorphism) homeo.push_back(json::array({id, std::string(1, to_char(e))}));
  return {{"schema", kSchemaVersion},       {"kind", "folds"},
          {"rank", seq.rank},               {"fold_count", seq.fold_count()},
          {"steps", steps},                 {"homeomorphism", homeo},
          {"rose_indices", seq.rose_indices}, {"label_lengths", seq.label_lengths}};
}

json to_json(const CensusRow& row) {
  return {{"schema", kSchemaVersion},
          {"kind", "census_row"},
          {"rank", row.rank},
          {"n", row.n},
          {"tested", row.tested},
          {"certified", row.certified},
          {"inconclusive", row.inconclusive},
          {"distinct_matrices", row.distinct_matrices},
          {"distinct_charpolys", row.distinct_charpolys},
          {"lambda_buckets", row.lambda_buckets},
          {"composition_bound", row.composition_bound},
          {"classes", row.classes},
          {"max_log_lambda", row.max_log_lambda},
          {"max_norm", row.max_norm},
          {"max_u_size", row.max_u_size},
          {"u_bound_ok", row.u_bound_ok},
          {"class_lower_bound", row.class_lower_bound},
          {"bound_ok", row.bound_ok},
          {"partial", row.partial},
          {"representatives", row.representatives}};
}

CensusRow census_row_from_json(const json& j) {
  if (j.value("schema", 0) != kSchemaVersion) throw ParseError("census row: unsupported schema", 0);
  CensusRow row;
  row.rank = j.at("rank").get<int>();
  row.n = j.at("n").get<int>();
  row.tested = j.at("tested").get<long>();
  row.certified = j.at("certified").get<long>();
  row.inconclusive = j.value("inconclusive", 0L);
  row.distinct_matrices = j.at("distinct_matrices").get<long>();
  row.distinct_charpolys = j.value("distinct_charpolys", 0L);
  row.lambda_buckets = j.value("lambda_buckets", 0L);
  row.composition_bound = j.value("composition_bound", 0L);
  row.classes = j.at("classes").get<long>();
  row.max_log_lambda = j.at("max_log_lambda").get<double>();
  row.max_norm = j.value("max_norm", 0L);
  row.max_u_size = j.value("max_u_size", 0L);
  row.u_bound_ok = j.value("u_bound_ok", true);
  row.class_lower_bound = j.value("class_lower_bound", 0.0);
  row.bound_ok = j.value("bound_ok", true);
  row.partial = j.value("partial", false);
  row.representatives = j.value("representatives", std::vector<std::string>{});
  return row;
}

std::string census_csv_header() {
  return "rank,n,tested,certified,inconclusive,distinct_matrices,distinct_charpolys,lambda_buckets,"
         "composition_bound,classes,max_log_lambda,max_norm,max_u_size,class_lower_bound,bound_ok,partial";
}

std::string to_csv(const CensusRow& row) {
  std::ostringstream os;
  os << row.rank << ',' << row.n << ',' << row.tested << ',' << row.certified << ',' << row.inconclusive << ','
     << row.distinct_matrices << ',' << row.distinct_charpolys << ',' << row.lambda_buckets << ','
     << row.composition_bound << ',' << row.classes << ',' << fmt(row.max_log_lambda) << ',' << row.max_norm
     << ',' << row.max_u_size << ',' << fmt(row.class_lower_bound) << ',' << (row.bound_ok ? 1 : 0) << ','
     << (row.partial ? 1 : 0);
  return os.str();
}

std::vector<CensusRow> read_census_rows(std::istream& in) {
  std::vector<CensusRow> rows;
  std::string line;
  std::vector<std::string> header;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '{') {
      try {
        const auto j = json::parse(line);
        if (j.value("kind", "") == "census_row") rows.push_back(census_row_from_json(j));
      } catch (const json::exception& e) {
        throw ParseError(e.what(), lineno);
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size()) throw ParseError("census csv: wrong number of cells", lineno);
    json j{{"schema", kSchemaVersion}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (header[i] == "bound_ok" || header[i] == "partial") {
        j[header[i]] = cells[i] == "1";
      } else if (header[i] == "max_log_lambda" || header[i] == "class_lower_bound") {
        j[header[i]] = std::stod(cells[i]);
      } else {
        j[header[i]] = std::stol(cells[i]);
      }
    }
    rows.push_back(census_row_from_json(j));
  }
  return rows;
}

json to_json(const UpperResult& res) {
  json buckets = json::array();
  for (const auto& b : res.buckets)
    buckets.push_back({{"ceil_log_lambda", b.log_bucket}, {"count", b.count}, {"worst_ratio", b.worst_ratio}});
  return {{"schema", kSchemaVersion},
          {"kind", "upper"},
          {"rank", res.rank},
          {"norm_budget", res.budget},
          {"enumerated", res.enumerated},
          {"expanding_irreducible", res.expanding_irreducible},
          {"entry_bound_ok", res.bound_ok},
          {"worst_ratio", res.worst_ratio},
          {"buckets", buckets}};
}

std::string upper_csv(const UpperResult& res) {
  std::ostringstream os;
  os << "rank,norm_budget,ceil_log_lambda,count,worst_ratio\n";
  for (const auto& b : res.buckets)
    os << res.rank << ',' << res.budget << ',' << b.log_bucket << ',' << b.count << ',' << fmt(b.worst_ratio) << '\n';
  return os.str();
}

json to_json(const EntropyEstimate& e) {
  return {{"schema", kSchemaVersion},
          {"kind", "entropy"},
          {"points", e.points},
          {"t_range", json::array({e.t_min, e.t_max})},
          {"principal_log_b", e.log_b},
          {"principal_b", e.b},
          {"secondary_intercept", e.intercept},
          {"secondary_a", e.a},
          {"rms_residual", e.rms_residual},
          {"note", "regression diagnostics on finite data; not an estimate of the limsup"}};
}

}  // namespace ttrose
