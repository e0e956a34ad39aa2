#include "smtr/io.hpp"

#include <algorithm>
#include <sstream>

namespace smtr {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& token, int line) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) throw ParseError(line, "expected an integer, got '" + token + "'");
  return value;
}

// "3" or "(1 4)", 1-based entries.
std::vector<int> parse_group(const std::string& raw, int upper, int line) {
  std::string g = trim(raw);
  if (g.empty()) throw ParseError(line, "empty tie group");
  std::vector<std::string> tokens;
  if (g.front() == '(') {
    if (g.back() != ')') throw ParseError(line, "unterminated tie group '" + g + "'");
    std::istringstream in(g.substr(1, g.size() - 2));
    std::string t;
    while (in >> t) tokens.push_back(t);
    if (tokens.empty()) throw ParseError(line, "empty tie group");
  } else {
    std::istringstream in(g);
    std::string t;
    while (in >> t) tokens.push_back(t);
    if (tokens.size() != 1)
      throw ParseError(line, "tie groups with several members need parentheses: '" + g + "'");
  }
  std::vector<int> out;
  for (const std::string& t : tokens) {
    int v = parse_int(t, line);
    if (v < 1 || v > upper)
      throw ParseError(line, "index " + std::to_string(v) + " out of range 1.." + std::to_string(upper));
    out.push_back(v - 1);
  }
  return out;
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  int n_men = 0, n_women = 0;
  std::vector<PrefList> men, women;
  std::vector<bool> seen_man, seen_woman;
  RestrictedEdgeSets r;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;

    if (word == "instance") {
      if (header) throw ParseError(lineno, "duplicate instance header");
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra))
        throw ParseError(lineno, "expected 'instance <n_men> <n_women>'");
      n_men = parse_int(a, lineno);
      n_women = parse_int(b, lineno);
      if (n_men < 0 || n_women < 0) throw ParseError(lineno, "negative side size");
      men.resize(n_men);
      women.resize(n_women);
      seen_man.assign(n_men, false);
      seen_woman.assign(n_women, false);
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "expected the instance header first");

    if (word == "m" || word == "w") {
      bool is_man = word == "m";
      size_t colon = line.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "expected ':' after the vertex index");
      std::istringstream left(line.substr(1, colon - 1));
      std::string idx_token, extra;
      if (!(left >> idx_token) || (left >> extra))
        throw ParseError(lineno, "expected one vertex index before ':'");
      int count = is_man ? n_men : n_women;
      int idx = parse_int(idx_token, lineno);
      if (idx < 1 || idx > count)
        throw ParseError(lineno, "vertex index " + std::to_string(idx) + " out of range 1.." +
                                     std::to_string(count));
      auto& seen = is_man ? seen_man : seen_woman;
      if (seen[idx - 1])
        throw ParseError(lineno, "duplicate list for " + word + std::to_string(idx));
      seen[idx - 1] = true;
      PrefList& list = is_man ? men[idx - 1] : women[idx - 1];
      std::string rest = trim(line.substr(colon + 1));
      if (!rest.empty())
        for (const std::string& g : split(rest, ';'))
          list.push_back(parse_group(g, is_man ? n_women : n_men, lineno));
      continue;
    }

    if (word == "forbidden" || word == "forced" || word == "free") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra))
        throw ParseError(lineno, "expected '" + word + " <man> <woman>'");
      int i = parse_int(a, lineno), j = parse_int(b, lineno);
      if (i < 1 || i > n_men || j < 1 || j > n_women)
        throw ParseError(lineno, "edge m" + std::to_string(i) + "-w" + std::to_string(j) +
                                     " out of range");
      Edge e{i - 1, j - 1};
      (word == "forbidden" ? r.forbidden : word == "forced" ? r.forced : r.free).push_back(e);
      continue;
    }
    throw ParseError(lineno, "unknown directive '" + word + "'");
  }
  if (!header) throw ParseError(lineno == 0 ? 1 : lineno, "missing instance header");

  ParsedInstance out;
  out.instance = build_instance(std::move(men), std::move(women));
  validate_restrictions(out.instance, r);
  out.restricted = std::move(r);
  return out;
}

namespace {

std::string group_text(const std::vector<int>& group) {
  if (group.size() == 1) return std::to_string(group[0] + 1);
  std::string out = "(";
  for (size_t i = 0; i < group.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(group[i] + 1);
  }
  return out + ")";
}

void emit_edges(std::ostream& os, const std::string& keyword, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  for (Edge e : edges)
    os << keyword << ' ' << e.man + 1 << ' ' << e.woman + 1 << '\n';
}

}  // namespace

std::string serialize_instance(const Instance& inst, const RestrictedEdgeSets& r) {
  std::ostringstream os;
  os << "instance " << inst.num_men() << ' ' << inst.num_women() << '\n';
  for (Side side : {Side::Men, Side::Women}) {
    for (int v = 0; v < inst.side_size(side); ++v) {
      os << (side == Side::Men ? 'm' : 'w') << ' ' << v + 1 << ':';
      const PrefList& list = inst.pref_list(side, v);
      for (size_t g = 0; g < list.size(); ++g) os << (g ? "; " : " ") << group_text(list[g]);
      os << '\n';
    }
  }
  emit_edges(os, "forbidden", r.forbidden);
  emit_edges(os, "forced", r.forced);
  emit_edges(os, "free", r.free);
  return os.str();
}

Matching parse_matching(const std::string& text, const Instance& inst) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra)) throw ParseError(lineno, "expected '<man> <woman>'");
    int i = parse_int(a, lineno), j = parse_int(b, lineno);
    if (i < 1 || i > inst.num_men() || j < 1 || j > inst.num_women())
      throw ParseError(lineno,
                       "edge m" + std::to_string(i) + "-w" + std::to_string(j) + " out of range");
    edges.push_back({i - 1, j - 1});
  }
  return Matching::from_edges(inst, edges);
}

std::string serialize_matching(const Matching& m) {
  std::ostringstream os;
  for (Edge e : m.edges()) os << e.man + 1 << ' ' << e.woman + 1 << '\n';
  return os.str();
}

SatFormula parse_formula(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  SatFormula f;
  int expected = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string p, kind, a, b, extra;
      if (!(ls >> p >> kind >> a >> b) || (ls >> extra) || p != "p" || kind != "1in3")
        throw ParseError(lineno, "expected 'p 1in3 <nvars> <nclauses>'");
      f.num_vars = parse_int(a, lineno);
      expected = parse_int(b, lineno);
      if (f.num_vars < 0 || expected < 0) throw ParseError(lineno, "negative counts");
      header = true;
      continue;
    }
    std::string a, b, c, extra;
    if (!(ls >> a >> b >> c) || (ls >> extra))
      throw ParseError(lineno, "expected three variable indices");
    std::array<int, 3> clause;
    int at = 0;
    for (const std::string& t : {a, b, c}) {
      int v = parse_int(t, lineno);
      if (v < 1 || v > f.num_vars)
        throw ParseError(lineno, "variable x" + std::to_string(v) + " out of range");
      clause[at++] = v - 1;
    }
    if (static_cast<int>(f.clauses.size()) == expected)
      throw ParseError(lineno, "more clauses than the header announced");
    f.clauses.push_back(clause);
  }
  if (!header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p 1in3' header");
  if (static_cast<int>(f.clauses.size()) != expected)
    throw ParseError(lineno, "expected " + std::to_string(expected) + " clauses, got " +
                                 std::to_string(f.clauses.size()));
  validate_formula(f);
  return f;
}

std::string serialize_formula(const SatFormula& f) {
  std::ostringstream os;
  os << "p 1in3 " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses)
    os << clause[0] + 1 << ' ' << clause[1] + 1 << ' ' << clause[2] + 1 << '\n';
  return os.str();
}

std::string serialize_registry(const ReductionOutput& out) {
  std::ostringstream os;
  for (size_t u = 0; u < out.man_roles.size(); ++u)
    os << "vertex m" << u + 1 << " role " << out.man_roles[u] << '\n';
  for (size_t w = 0; w < out.woman_roles.size(); ++w)
    os << "vertex w" << w + 1 << " role " << out.woman_roles[w] << '\n';
  for (const auto& [edge, tag] : out.edge_tags)
    os << "edge " << edge.man + 1 << ' ' << edge.woman + 1 << " stage " << tag << '\n';
  if (out.master) {
    os << "master " << (out.master->over == Side::Men ? "men" : "women");
    for (size_t g = 0; g < out.master->groups.size(); ++g) {
      os << (g ? "; " : " ") << group_text(out.master->groups[g]);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace smtr
