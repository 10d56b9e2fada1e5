#include "drsubmax/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace drsubmax {

namespace {

struct Line {
  std::string keyword;
  std::vector<std::string> args;
};

std::vector<Line> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<Line> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    Line line;
    if (!(ss >> line.keyword)) continue;
    std::string tok;
    while (ss >> tok) line.args.push_back(tok);
    lines.push_back(std::move(line));
  }
  return lines;
}

double to_double(const std::string& s, const std::string& path) {
  size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(path + ": bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument(path + ": bad number '" + s + "'");
  return v;
}

int to_int(const std::string& s, const std::string& path) {
  const double v = to_double(s, path);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw std::invalid_argument(path + ": expected integer, got " + s);
  return i;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw std::invalid_argument(path + ": " + message);
}

}  // namespace

LoadedInstance load_instance(const std::string& path, LoadStrictness strictness) {
  const auto lines = read_lines(path);
  std::string family;
  int n = -1;
  long sample_count = 0;
  uint64_t sample_seed = 0;
  bool sampled = false;

  for (const Line& line : lines) {
    if (line.keyword == "family" && !line.args.empty()) family = line.args[0];
    else if (line.keyword == "n" && !line.args.empty()) n = to_int(line.args[0], path);
    else if (line.keyword == "mode") {
      if (line.args.size() != 3 || line.args[0] != "sampled")
        fail(path, "mode line must be 'mode sampled <count> <seed>'");
      sampled = true;
      sample_count = to_int(line.args[1], path);
      sample_seed = static_cast<uint64_t>(to_double(line.args[2], path));
    }
  }
  if (family.empty()) fail(path, "missing 'family' line");
  if (n < 1) fail(path, "missing or invalid 'n' line");

  auto finish_set = [&](SetFunction f) {
    DrFunction F = sampled ? multilinear_sampled(f, sample_count, sample_seed)
                           : multilinear_exact(f);
    return LoadedInstance{std::move(F), std::move(f), family, n};
  };

  if (family == "quadratic") {
    if (sampled) fail(path, "quadratic instances have no sampled mode");
    std::vector<RealVec> H(static_cast<size_t>(n), RealVec(static_cast<size_t>(n), 0.0));
    RealVec h(static_cast<size_t>(n), 0.0);
    double c = 0.0;
    for (const Line& line : lines) {
      if (line.keyword == "H") {
        if (line.args.size() != 3) fail(path, "H line needs 'H i j v'");
        const int i = to_int(line.args[0], path), j = to_int(line.args[1], path);
        if (i < 0 || i >= n || j < 0 || j >= n) fail(path, "H index out of range");
        H[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_double(line.args[2], path);
      } else if (line.keyword == "h") {
        if (line.args.size() != 2) fail(path, "h line needs 'h i v'");
        const int i = to_int(line.args[0], path);
        if (i < 0 || i >= n) fail(path, "h index out of range");
        h[static_cast<size_t>(i)] = to_double(line.args[1], path);
      } else if (line.keyword == "c") {
        if (line.args.size() != 1) fail(path, "c line needs 'c v'");
        c = to_double(line.args[0], path);
      }
    }
    if (strictness == LoadStrictness::Strict) {
      return LoadedInstance{make_quadratic(H, h, c), std::nullopt, family, n};
    }
    // Permissive path: same evaluation, no DR validation. Symmetrize so the
    // gradient matches the value function.
    std::vector<RealVec> Hs(H);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            0.5 * (H[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                   H[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    double frob = 0.0;
    for (const RealVec& row : Hs)
      for (double v : row) frob += v * v;
    auto eval = [Hs, h, c, n](const Vec01& x) {
      double quad = 0.0, lin = 0.0;
      for (int i = 0; i < n; ++i) {
        double hx = 0.0;
        for (int j = 0; j < n; ++j) hx += Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[j];
        quad += x[i] * hx;
        lin += h[static_cast<size_t>(i)] * x[i];
      }
      return 0.5 * quad + lin + c;
    };
    auto grad = [Hs, h, n](const Vec01& x) {
      RealVec g(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        double gi = h[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) gi += Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[j];
        g[static_cast<size_t>(i)] = gi;
      }
      return g;
    };
    return LoadedInstance{DrFunction(n, std::move(eval), std::move(grad), std::sqrt(frob),
                                     DrFunction::Mode::Exact, "quadratic-unchecked"),
                          std::nullopt, family, n};
  }
  if (family == "cut") {
    std::vector<CutEdge> edges;
    for (const Line& line : lines) {
      if (line.keyword != "edge") continue;
      if (line.args.size() != 3) fail(path, "edge line needs 'edge u v w'");
      edges.push_back({to_int(line.args[0], path), to_int(line.args[1], path),
                       to_double(line.args[2], path)});
    }
    return finish_set(make_cut_function(n, std::move(edges)));
  }
  if (family == "coverage") {
    CoverageSystem system;
    system.covers.resize(static_cast<size_t>(n));
    for (const Line& line : lines) {
      if (line.keyword == "element") {
        if (line.args.size() != 2) fail(path, "element line needs 'element e w'");
        const int e = to_int(line.args[0], path);
        if (e != static_cast<int>(system.element_weights.size()))
          fail(path, "element ids must appear in order 0,1,2,...");
        system.element_weights.push_back(to_double(line.args[1], path));
      } else if (line.keyword == "cover") {
        if (line.args.size() != 2) fail(path, "cover line needs 'cover u e'");
        const int u = to_int(line.args[0], path);
        if (u < 0 || u >= n) fail(path, "cover ground element out of range");
        system.covers[static_cast<size_t>(u)].push_back(to_int(line.args[1], path));
      }
    }
    return finish_set(make_coverage_function(n, std::move(system)));
  }
  if (family == "table") {
    if (n > 20) fail(path, "table instances capped at n = 20");
    std::vector<double> values(size_t{1} << n, 0.0);
    for (const Line& line : lines) {
      if (line.keyword != "value") continue;
      if (line.args.size() != 2) fail(path, "value line needs 'value mask v'");
      const int mask = to_int(line.args[0], path);
      if (mask < 0 || mask >= static_cast<int>(values.size())) fail(path, "mask out of range");
      values[static_cast<size_t>(mask)] = to_double(line.args[1], path);
    }
    return finish_set(make_table_function(n, std::move(values)));
  }
  fail(path, "unknown family '" + family + "'");
}

PackingPolytope load_constraint(const std::string& path) {
  const auto lines = read_lines(path);
  std::string kind;
  int n = -1;
  for (const Line& line : lines) {
    if (line.keyword == "constraint" && !line.args.empty()) kind = line.args[0];
    else if (line.keyword == "n" && !line.args.empty()) n = to_int(line.args[0], path);
  }
  if (kind.empty()) fail(path, "missing 'constraint' line");
  if (n < 1) fail(path, "missing or invalid 'n' line");

  if (kind == "hypercube") return make_hypercube(n);
  if (kind == "cardinality") {
    for (const Line& line : lines)
      if (line.keyword == "k" && !line.args.empty())
        return make_cardinality(n, to_double(line.args[0], path));
    fail(path, "cardinality constraint needs a 'k' line");
  }
  if (kind == "knapsack") {
    RealVec weights(static_cast<size_t>(n), 0.0);
    double budget = -1.0;
    for (const Line& line : lines) {
      if (line.keyword == "weight") {
        if (line.args.size() != 2) fail(path, "weight line needs 'weight u w'");
        const int u = to_int(line.args[0], path);
        if (u < 0 || u >= n) fail(path, "weight index out of range");
        weights[static_cast<size_t>(u)] = to_double(line.args[1], path);
      } else if (line.keyword == "budget" && !line.args.empty()) {
        budget = to_double(line.args[0], path);
      }
    }
    if (budget < 0.0) fail(path, "knapsack constraint needs a 'budget' line");
    return make_knapsack(std::move(weights), budget);
  }
  if (kind == "partition") {
    std::vector<std::vector<int>> groups;
    RealVec caps;
    for (const Line& line : lines) {
      if (line.keyword == "group") {
        std::vector<int> group;
        for (const std::string& a : line.args) group.push_back(to_int(a, path));
        groups.push_back(std::move(group));
      } else if (line.keyword == "cap") {
        for (const std::string& a : line.args) caps.push_back(to_double(a, path));
      }
    }
    if (groups.empty()) fail(path, "partition constraint needs 'group' lines");
    return make_partition_matroid(n, groups, caps);
  }
  if (kind == "packing") {
    std::vector<RealVec> rows;
    RealVec rhs;
    for (const Line& line : lines) {
      if (line.keyword != "row") continue;
      if (static_cast<int>(line.args.size()) != n + 2 || line.args[static_cast<size_t>(n)] != "<=")
        fail(path, "row line needs 'row a1 .. an <= b'");
      RealVec row;
      for (int u = 0; u < n; ++u) row.push_back(to_double(line.args[static_cast<size_t>(u)], path));
      rows.push_back(std::move(row));
      rhs.push_back(to_double(line.args[static_cast<size_t>(n) + 1], path));
    }
    return PackingPolytope(n, std::move(rows), std::move(rhs));
  }
  fail(path, "unknown constraint kind '" + kind + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_json(const SolveReport& report, const std::string& instance_path,
                           const std::string& constraint_path) {
  nlohmann::ordered_json j;
  j["instance"] = instance_path;
  j["constraint"] = constraint_path;
  j["params"] = {{"t_s", report.switch_time},
                 {"epsilon", report.epsilon_used},
                 {"delta", report.delta_used},
                 {"depth", report.depth_used},
                 {"triples", report.triples_used},
                 {"v_lower", report.v_lower},
                 {"guess_c", report.guess_c},
                 {"seed", report.seed}};
  j["best"] = {{"value", report.best_value},
               {"origin", report.best_origin},
               {"path", report.best_path},
               {"x", report.best_x.coords()}};
  j["node_count"] = report.node_count;
  j["value_evals"] = report.value_evals;
  j["gradient_evals"] = report.gradient_evals;
  nlohmann::ordered_json cands = nlohmann::ordered_json::array();
  for (const Candidate& c : report.candidates) {
    cands.push_back({{"origin", c.origin},
                     {"path", c.path},
                     {"triple", c.triple_index},
                     {"value", c.value},
                     {"x", c.x.coords()}});
  }
  j["candidates"] = std::move(cands);
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const NodeRecord& node : report.nodes) {
    nodes.push_back({{"path", node.path},
                     {"z", node.z.coords()},
                     {"guided_runs", node.guided_runs},
                     {"empty_cut_steps", node.q_empty_steps}});
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

std::string csv_header() {
  return "instance,n,best_value,oracle_opt,ratio,node_count,value_evals,gradient_evals\n";
}

std::string report_to_csv_row(const SolveReport& report, const std::string& instance_path,
                              int n, double oracle_opt) {
  std::string row = instance_path + "," + std::to_string(n) + "," +
                    format_double(report.best_value) + ",";
  if (oracle_opt >= 0.0) {
    row += format_double(oracle_opt);
    row += ",";
    row += oracle_opt > 0.0 ? format_double(report.best_value / oracle_opt) : "";
  } else {
    row += ",";
  }
  row += "," + std::to_string(report.node_count) + "," + std::to_string(report.value_evals) +
         "," + std::to_string(report.gradient_evals) + "\n";
  return row;
}

}  // namespace drsubmax
