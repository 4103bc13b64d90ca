#include "fuzzy_placer/documents.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace fuzzy_placer::documents {

using fuzzy::Breakpoint;
using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;
using fuzzy::Rule;
using fuzzy::RuleAtom;
using fuzzy::Term;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path.string(), 0, 0, "", "cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

// Walks a parsed YAML tree and turns every problem into a located
// DocumentError.
class RulebaseReader {
 public:
  explicit RulebaseReader(std::string source) : source_(std::move(source)) {}

  fuzzy::RuleBase read(const YAML::Node& root) const {
    if (!root.IsMap()) fail(root, "", "document must be a mapping");
    only_keys(root, {"schema_version", "output", "variables", "rules"}, "");

    const auto version_node = required(root, "schema_version", "");
    const double version = number(version_node, "schema_version");
    if (version != kRulebaseSchemaVersion) {
      fail(version_node, "schema_version", "unsupported version (expected " + std::to_string(kRulebaseSchemaVersion) + ")");
    }

    const auto output_node = required(root, "output", "");
    const std::string output_name = text(output_node, "output");

    const auto vars_node = required(root, "variables", "");
    if (!vars_node.IsSequence() || vars_node.size() == 0) fail(vars_node, "variables", "must be a non-empty list");
    std::vector<LinguisticVariable> variables;
    std::set<std::string> names;
    for (std::size_t i = 0; i < vars_node.size(); ++i) {
      const std::string path = "variables[" + std::to_string(i) + "]";
      variables.push_back(variable(vars_node[i], path));
      if (!names.insert(variables.back().name()).second) {
        fail(vars_node[i]["name"], path + ".name", "duplicate variable '" + variables.back().name() + "'");
      }
    }

    const auto out_it = std::find_if(variables.begin(), variables.end(),
                                     [&](const LinguisticVariable& v) { return v.name() == output_name; });
    if (out_it == variables.end()) fail(output_node, "output", "names no declared variable");
    LinguisticVariable output = *out_it;
    variables.erase(out_it);
    if (variables.empty()) fail(vars_node, "variables", "at least one input variable is required");

    const auto rules_node = required(root, "rules", "");
    if (!rules_node.IsSequence() || rules_node.size() == 0) fail(rules_node, "rules", "must be a non-empty list");
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < rules_node.size(); ++i) {
      rules.push_back(rule(rules_node[i], "rules[" + std::to_string(i) + "]", variables, output));
    }

    try {
      return fuzzy::RuleBase(std::move(variables), std::move(output), std::move(rules));
    } catch (const InvalidConfig& e) {
      fail(root, "", e.what());
    }
  }

 private:
  [[noreturn]] void fail(const YAML::Node& at, const std::string& field, const std::string& what) const {
    const YAML::Mark mark = at.IsDefined() ? at.Mark() : YAML::Mark::null_mark();
    const bool known = mark.line >= 0;
    throw DocumentError(source_, known ? mark.line + 1 : 1, known ? mark.column + 1 : 1, field, what);
  }

  YAML::Node required(const YAML::Node& map, const char* key, const std::string& path) const {
    const YAML::Node n = map[key];
    const std::string field = path.empty() ? key : path + "." + key;
    if (!n.IsDefined() || n.IsNull()) fail(map, field, "missing required field");
    return n;
  }

  void only_keys(const YAML::Node& map, std::initializer_list<std::string_view> keys, const std::string& path) const {
    for (auto it = map.begin(); it != map.end(); ++it) {
      const std::string key = it->first.IsScalar() ? it->first.Scalar() : "";
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(it->first, path.empty() ? key : path + "." + key, "unknown field");
      }
    }
  }

  double number(const YAML::Node& n, const std::string& path) const {
    double v = 0.0;
    if (!n.IsScalar() || !parse_double(n.Scalar(), v)) fail(n, path, "expected a finite number");
    return v;
  }

  std::string text(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar() || n.Scalar().empty()) fail(n, path, "expected a non-empty string");
    return n.Scalar();
  }

  bool flag(const YAML::Node& n, const std::string& path) const {
    if (n.IsScalar()) {
      if (n.Scalar() == "true") return true;
      if (n.Scalar() == "false") return false;
    }
    fail(n, path, "expected true or false");
  }

  LinguisticVariable variable(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) fail(node, path, "variable must be a mapping");
    only_keys(node, {"name", "universe", "terms"}, path);
    const std::string name = text(required(node, "name", path), path + ".name");

    const auto universe_node = required(node, "universe", path);
    if (!universe_node.IsSequence() || universe_node.size() != 2) {
      fail(universe_node, path + ".universe", "expected [min, max]");
    }
    const fuzzy::Universe universe{number(universe_node[0], path + ".universe[0]"),
                                   number(universe_node[1], path + ".universe[1]")};
    if (!(universe.min < universe.max)) fail(universe_node, path + ".universe", "min must be below max");

    const auto terms_node = required(node, "terms", path);
    if (!terms_node.IsSequence() || terms_node.size() == 0) fail(terms_node, path + ".terms", "must be a non-empty list");
    std::vector<Term> terms;
    std::set<std::string> term_names;
    for (std::size_t i = 0; i < terms_node.size(); ++i) {
      const std::string tpath = path + ".terms[" + std::to_string(i) + "]";
      const auto& tnode = terms_node[i];
      if (!tnode.IsMap()) fail(tnode, tpath, "term must be a mapping");
      only_keys(tnode, {"name", "points"}, tpath);
      const auto name_node = required(tnode, "name", tpath);
      std::string term_name = text(name_node, tpath + ".name");
      if (!term_names.insert(term_name).second) fail(name_node, tpath + ".name", "duplicate term '" + term_name + "'");

      const auto points_node = required(tnode, "points", tpath);
      if (!points_node.IsSequence()) fail(points_node, tpath + ".points", "expected a list of [x, mu] pairs");
      std::vector<Breakpoint> points;
      for (std::size_t k = 0; k < points_node.size(); ++k) {
        const std::string ppath = tpath + ".points[" + std::to_string(k) + "]";
        const auto& p = points_node[k];
        if (!p.IsSequence() || p.size() != 2) fail(p, ppath, "expected [x, mu]");
        const Breakpoint bp{number(p[0], ppath + "[0]"), number(p[1], ppath + "[1]")};
        if (!universe.contains(bp.x)) fail(p, ppath, "x lies outside the universe");
        points.push_back(bp);
      }
      try {
        terms.push_back({std::move(term_name), MembershipFunction(std::move(points))});
      } catch (const InvalidConfig& e) {
        fail(points_node, tpath + ".points", e.what());
      }
    }
    try {
      return LinguisticVariable(name, universe, std::move(terms));
    } catch (const InvalidConfig& e) {
      fail(node, path, e.what());
    }
  }

  RuleAtom atom(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) fail(node, path, "atom must be a mapping");
    only_keys(node, {"variable", "term", "not"}, path);
    RuleAtom a;
    a.variable = text(required(node, "variable", path), path + ".variable");
    a.term = text(required(node, "term", path), path + ".term");
    if (const auto n = node["not"]; n.IsDefined()) a.complemented = flag(n, path + ".not");
    return a;
  }

  Rule rule(const YAML::Node& node, const std::string& path, const std::vector<LinguisticVariable>& inputs,
            const LinguisticVariable& output) const {
    if (!node.IsMap()) fail(node, path, "rule must be a mapping");
    only_keys(node, {"if", "then"}, path);
    Rule r;
    const auto if_node = required(node, "if", path);
    if (!if_node.IsSequence() || if_node.size() == 0) fail(if_node, path + ".if", "must be a non-empty list");
    for (std::size_t i = 0; i < if_node.size(); ++i) {
      const std::string apath = path + ".if[" + std::to_string(i) + "]";
      RuleAtom a = atom(if_node[i], apath);
      const auto it = std::find_if(inputs.begin(), inputs.end(),
                                   [&](const LinguisticVariable& v) { return v.name() == a.variable; });
      if (it == inputs.end()) fail(if_node[i], apath + ".variable", "'" + a.variable + "' is not an input variable");
      if (!it->has_term(a.term)) fail(if_node[i], apath + ".term", "unknown term '" + a.term + "'");
      r.antecedent.push_back(std::move(a));
    }
    const auto then_node = required(node, "then", path);
    r.consequent = atom(then_node, path + ".then");
    if (r.consequent.variable != output.name()) {
      fail(then_node, path + ".then.variable", "consequent must target the output variable");
    }
    if (r.consequent.complemented) fail(then_node, path + ".then.not", "consequent cannot be negated");
    if (!output.has_term(r.consequent.term)) {
      fail(then_node, path + ".then.term", "unknown term '" + r.consequent.term + "'");
    }
    return r;
  }

  std::string source_;
};

void emit_variable(YAML::Emitter& out, const LinguisticVariable& v) {
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << v.name();
  out << YAML::Key << "universe" << YAML::Value << YAML::Flow << YAML::BeginSeq << exact_number(v.universe().min)
      << exact_number(v.universe().max) << YAML::EndSeq;
  out << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
  for (const auto& t : v.terms()) {
    out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << t.name;
    out << YAML::Key << "points" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& p : t.curve.points()) {
      out << YAML::Flow << YAML::BeginSeq << exact_number(p.x) << exact_number(p.mu) << YAML::EndSeq;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
}

void emit_atom(YAML::Emitter& out, const RuleAtom& a) {
  out << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "variable" << YAML::Value << a.variable;
  out << YAML::Key << "term" << YAML::Value << a.term;
  if (a.complemented) out << YAML::Key << "not" << YAML::Value << true;
  out << YAML::EndMap;
}

}  // namespace

std::string exact_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }

fuzzy::RuleBase parse_rulebase(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw DocumentError(source, e.mark.line + 1, e.mark.column + 1, "", e.msg);
  }
  return RulebaseReader(source).read(root);
}

std::string serialize_rulebase(const fuzzy::RuleBase& rb) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << kRulebaseSchemaVersion;
  out << YAML::Key << "output" << YAML::Value << rb.output().name();
  out << YAML::Key << "variables" << YAML::Value << YAML::BeginSeq;
  for (const auto& v : rb.inputs()) emit_variable(out, v);
  emit_variable(out, rb.output());
  out << YAML::EndSeq;
  out << YAML::Key << "rules" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : rb.rules()) {
    out << YAML::BeginMap << YAML::Key << "if" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : r.antecedent) emit_atom(out, a);
    out << YAML::EndSeq << YAML::Key << "then" << YAML::Value;
    emit_atom(out, r.consequent);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

fuzzy::RuleBase load_rulebase(const std::filesystem::path& path) {
  return parse_rulebase(read_file(path), path.string());
}

Inventory parse_inventory(std::string_view text, const std::string& source) {
  Inventory rows;
  std::set<std::string> ids;
  bool header_seen = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!header_seen) {
      std::string normalized;
      for (char c : line) {
        if (c != ' ' && c != '\t') normalized += c;
      }
      if (normalized != kInventoryHeader) {
        throw DocumentError(source, line_no, 1, "header", "expected '" + std::string(kInventoryHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    std::vector<std::pair<std::string_view, int>> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = raw.find(',', start);
      const auto piece = raw.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      fields.emplace_back(trim(piece), static_cast<int>(start) + 1);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) {
      throw DocumentError(source, line_no, 1, "", "expected 4 fields, found " + std::to_string(fields.size()));
    }
    const std::string id(fields[0].first);
    if (id.empty()) throw DocumentError(source, line_no, fields[0].second, "id", "empty resource id");
    if (!ids.insert(id).second) throw DocumentError(source, line_no, fields[0].second, "id", "duplicate resource id '" + id + "'");

    static constexpr const char* kNames[] = {"speed_mbs", "reliability_pct", "concentration_pct"};
    double values[3];
    for (int f = 0; f < 3; ++f) {
      if (!parse_double(fields[f + 1].first, values[f])) {
        throw DocumentError(source, line_no, fields[f + 1].second, kNames[f], "expected a finite number");
      }
    }
    const resource::ResourceMetrics m{values[0], values[1], values[2]};
    try {
      resource::validate(m);
    } catch (const InvalidConfig& e) {
      throw DocumentError(source, line_no, 1, "", e.what());
    }
    rows.emplace_back(id, m);
  }
  if (!header_seen) throw DocumentError(source, 1, 1, "header", "missing header row");
  return rows;
}

Inventory load_inventory(const std::filesystem::path& path) { return parse_inventory(read_file(path), path.string()); }

std::string export_curves(const fuzzy::LinguisticVariable& variable, std::size_t samples) {
  const auto& u = variable.universe();
  const double width = u.max - u.min;
  std::vector<double> xs;
  if (samples >= 2) {
    for (std::size_t i = 0; i + 1 < samples; ++i) {
      xs.push_back(u.min + width * static_cast<double>(i) / static_cast<double>(samples - 1));
    }
  }
  xs.push_back(u.max);
  for (const auto& t : variable.terms()) {
    for (const auto& p : t.curve.points()) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  const double tol = fuzzy::kBreakpointTolerance * std::max(1.0, width);
  std::vector<double> rows;
  for (double x : xs) {
    if (rows.empty() || x - rows.back() > tol) rows.push_back(x);
  }

  std::string out = "x";
  for (const auto& t : variable.terms()) out += "," + t.name;
  out += "\n";
  for (double x : rows) {
    out += fixed6(x);
    for (const auto& t : variable.terms()) out += "," + fixed6(t.curve(x));
    out += "\n";
  }
  return out;
}

std::string serialize_report(const sim::SimulationReport& report, const ReportContext& ctx) {
  std::uint64_t total = 0;
  for (auto c : report.counts) total += c;

  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << kReportSchemaVersion;
  out << YAML::Key << "strategy" << YAML::Value << std::string(sim::to_string(ctx.strategy));
  out << YAML::Key << "seed" << YAML::Value << std::to_string(ctx.seed);
  out << YAML::Key << "chunks" << YAML::Value << std::to_string(ctx.chunks);
  out << YAML::Key << "total_placed" << YAML::Value << std::to_string(total);
  out << YAML::Key << "shares_defined" << YAML::Value << report.shares_defined;
  if (report.shares_defined) {
    out << YAML::Key << "max_share" << YAML::Value << fixed6(report.max_share);
    out << YAML::Key << "min_share" << YAML::Value << fixed6(report.min_share);
  }
  out << YAML::Key << "resources" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << report.ids[i];
    out << YAML::Key << "count" << YAML::Value << std::to_string(report.counts[i]);
    if (report.shares_defined) out << YAML::Key << "share" << YAML::Value << fixed6(report.shares[i]);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (report.placements) {
    std::string columns = "step,chosen_id";
    for (std::size_t i = 0; i < report.ids.size(); ++i) columns += ",p_" + std::to_string(i + 1);
    out << YAML::Key << "trace_columns" << YAML::Value << columns;
    out << YAML::Key << "trace" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : *report.placements) {
      std::string row = std::to_string(p.step) + "," + p.chosen_id;
      for (double s : p.scores) row += "," + fixed6(s);
      out << row;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fuzzy_placer::documents
