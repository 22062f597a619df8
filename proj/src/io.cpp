#include "heatgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "heatgraph/errors.hpp"

namespace heatgraph::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

json points_to_json(const PersistenceDiagram& d) {
  json out = json::array();
  for (const auto& p : d.sorted()) out.push_back({p.birth, p.death});
  return out;
}

PersistenceDiagram points_from_json(const json& j) {
  std::vector<DiagramPoint> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("diagram points must be [b, d]");
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return PersistenceDiagram(std::move(pts));
}

double parse_double(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
    cell.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw ValidationError("malformed number '" + std::string(cell) + "' in CSV");
  }
  return value;
}

std::vector<double> parse_csv_line(std::string_view line) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    values.push_back(parse_double(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("cannot serialize a non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw ValidationError("number formatting failed");
  return std::string(buf, ptr);
}

// --- graphs ---------------------------------------------------------------

json to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  return {{"n", g.size()}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const json& j) {
  const auto n = field<std::size_t>(j, "n");
  std::vector<WeightedEdge> edges;
  for (const auto& e : field<json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw ValidationError("edges must be [u, v, w] triples");
    const auto u = e[0].get<long long>();
    const auto v = e[1].get<long long>();
    if (u < 0 || v < 0) throw ValidationError("negative vertex index in edge list");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), e[2].get<double>()});
  }
  return build_graph(n, std::move(edges));
}

// --- diagrams -------------------------------------------------------------

json to_json(const ExtendedDiagramSet& d) {
  json out = json::object();
  for (DiagramType t : kDiagramTypes) out[std::string(to_string(t))] = points_to_json(d[t]);
  return out;
}

ExtendedDiagramSet diagrams_from_json(const json& j) {
  ExtendedDiagramSet out;
  for (DiagramType t : kDiagramTypes) {
    const std::string key(to_string(t));
    if (j.contains(key)) out[t] = points_from_json(j.at(key));
  }
  return out;
}

// --- models ---------------------------------------------------------------

json to_json(const GraphModel& m) {
  return std::visit(
      overloaded{
          [](const ErdosRenyi& er) -> json { return {{"model", "er"}, {"n", er.n}, {"p", er.p}}; },
          [](const StochasticBlockModel& sbm) -> json {
            return {{"model", "sbm"}, {"block_sizes", sbm.block_sizes}, {"probs", sbm.probs}};
          },
          [](const GeometricModel& gm) -> json {
            json out = {{"model", "geometric"}, {"p", gm.edge_fraction}};
            if (gm.inner_radius > 0.0) {
              out["domain"] = "annulus";
              out["epsilon"] = gm.inner_radius;
            } else {
              out["domain"] = "disk";
            }
            if (const auto* f = std::get_if<FixedSize>(&gm.size)) {
              out["n"] = f->n;
            } else {
              out["poisson_mean"] = std::get<PoissonSize>(gm.size).mean;
            }
            return out;
          },
      },
      m);
}

GraphModel graph_model_from_json(const json& j) {
  const auto kind = field<std::string>(j, "model");
  GraphModel model;
  if (kind == "er") {
    model = ErdosRenyi{field<std::size_t>(j, "n"), field<double>(j, "p")};
  } else if (kind == "sbm") {
    StochasticBlockModel sbm;
    sbm.block_sizes = field<std::vector<std::size_t>>(j, "block_sizes");
    if (j.contains("probs")) {
      sbm.probs = field<std::vector<std::vector<double>>>(j, "probs");
    } else {
      const double p_in = field<double>(j, "p_in");
      const double p_out = field<double>(j, "p_out");
      const std::size_t k = sbm.block_sizes.size();
      sbm.probs.assign(k, std::vector<double>(k, p_out));
      for (std::size_t a = 0; a < k; ++a) sbm.probs[a][a] = p_in;
    }
    model = std::move(sbm);
  } else if (kind == "geometric") {
    GeometricModel gm;
    const auto domain = field_or<std::string>(j, "domain", "disk");
    if (domain == "annulus") {
      gm.inner_radius = field_or<double>(j, "epsilon", 0.5);
    } else if (domain != "disk") {
      throw ValidationError("geometric domain must be 'disk' or 'annulus'");
    }
    if (j.contains("poisson_mean")) {
      gm.size = PoissonSize{field<double>(j, "poisson_mean")};
    } else {
      gm.size = FixedSize{field<std::size_t>(j, "n")};
    }
    gm.edge_fraction = field_or<double>(j, "p", 0.5);
    model = gm;
  } else {
    throw ValidationError("unknown graph model '" + kind + "' (expected er, sbm or geometric)");
  }
  return model;
}

json to_json(const WeightScheme& w) {
  return std::visit(overloaded{
                        [](const Unweighted&) -> json { return {{"scheme", "unweighted"}}; },
                        [](const UniformWeights& u) -> json {
                          return {{"scheme", "uniform"}, {"a", u.a}, {"b", u.b}};
                        },
                        [](const ExpDecayWeights& e) -> json {
                          return {{"scheme", "exp_decay"}, {"rate", e.rate}};
                        },
                    },
                    w);
}

WeightScheme weight_scheme_from_json(const json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : field<std::string>(j, "scheme");
  if (kind == "unweighted") return Unweighted{};
  if (kind == "uniform") {
    return UniformWeights{j.is_object() ? field_or<double>(j, "a", 0.0) : 0.0,
                          j.is_object() ? field_or<double>(j, "b", 2.0) : 2.0};
  }
  if (kind == "exp_decay") {
    return ExpDecayWeights{j.is_object() ? field_or<double>(j, "rate", 2.0) : 2.0};
  }
  throw ValidationError("unknown weight scheme '" + kind +
                        "' (expected unweighted, uniform or exp_decay)");
}

json to_json(const PairModel& pm) {
  return {{"first", to_json(pm.first)}, {"second", to_json(pm.second)},
          {"weights", to_json(pm.weights)}};
}

PairModel pair_model_from_json(const json& j) {
  PairModel pm{graph_model_from_json(field<json>(j, "first")),
               graph_model_from_json(field<json>(j, "second")),
               j.contains("weights") ? weight_scheme_from_json(j.at("weights")) : Unweighted{}};
  validate(pm.first, pm.weights);
  validate(pm.second, pm.weights);
  return pm;
}

// --- datasets -------------------------------------------------------------

json to_json(const Dataset& d) {
  json pairs = json::array();
  for (const auto& p : d.pairs) pairs.push_back({{"first", to_json(p.first())}, {"second", to_json(p.second())}});
  return {{"config", to_json(d.config)}, {"seed", d.seed}, {"pairs", std::move(pairs)}};
}

Dataset dataset_from_json(const json& j) {
  Dataset d;
  d.config = pair_model_from_json(field<json>(j, "config"));
  d.seed = field<std::uint64_t>(j, "seed");
  for (const auto& p : field<json>(j, "pairs")) {
    d.pairs.emplace_back(graph_from_json(field<json>(p, "first")),
                         graph_from_json(field<json>(p, "second")));
  }
  if (d.pairs.empty()) throw ValidationError("dataset has no pairs");
  return d;
}

// --- process matrices -----------------------------------------------------

std::string process_to_csv(const ProcessMatrix& pm) {
  std::string out;
  auto append_row = [&](std::span<const double> values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j > 0) out += ',';
      out += format_double(values[j]);
    }
    out += '\n';
  };
  append_row(pm.grid().times());
  for (std::size_t i = 0; i < pm.sample_size(); ++i) append_row(pm.values().row(i));
  return out;
}

ProcessMatrix process_from_csv(std::string_view text) {
  std::vector<std::vector<double>> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(parse_csv_line(line));
    start = end + 1;
  }
  if (lines.size() < 2) throw ValidationError("process CSV needs a time header and at least one row");
  TimeGrid grid = TimeGrid::from_times(lines.front());
  Matrix rows(lines.size() - 1, grid.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != grid.size()) {
      std::ostringstream msg;
      msg << "CSV row " << i << " has " << lines[i].size() << " values, expected " << grid.size();
      throw ValidationError(msg.str());
    }
    std::ranges::copy(lines[i], rows.row(i - 1).begin());
  }
  return ProcessMatrix(std::move(grid), std::move(rows));
}

// --- results --------------------------------------------------------------

json to_json(const ConfidenceBand& band) {
  return {{"kind", "band"},       {"alpha", band.alpha},          {"B", band.bootstrap},
          {"seed", band.seed},    {"N", band.sample_size},        {"grid", band.grid.times()},
          {"mean", band.mean},    {"c_hat", band.c_hat},          {"half_width", band.half_width()},
          {"lower", band.lower()}, {"upper", band.upper()}};
}

ConfidenceBand band_from_json(const json& j) {
  if (field<std::string>(j, "kind") != "band") throw ValidationError("not a band result");
  ConfidenceBand band;
  band.grid = TimeGrid::from_times(field<std::vector<double>>(j, "grid"));
  band.mean = field<std::vector<double>>(j, "mean");
  band.c_hat = field<double>(j, "c_hat");
  band.alpha = field<double>(j, "alpha");
  band.bootstrap = field<std::size_t>(j, "B");
  band.seed = field<std::uint64_t>(j, "seed");
  band.sample_size = field<std::size_t>(j, "N");
  if (band.mean.size() != band.grid.size()) throw ValidationError("band mean and grid differ in length");
  return band;
}

json to_json(const TwoSampleResult& r) {
  return {{"kind", "test"},           {"alpha", r.alpha},         {"B", r.bootstrap},
          {"seed", r.seed},           {"statistic", r.statistic}, {"threshold", r.threshold},
          {"p_value", r.p_value},     {"reject", r.reject}};
}

// --- files ----------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, std::string_view content, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw ValidationError("'" + path.string() + "' exists; pass --force to overwrite");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ValidationError("failed while writing '" + path.string() + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace heatgraph::io
